"""
Hodge integrals recovered from volumes and Lyapunov sums.

For g >= 2 the normalized volume v(g, n) and its lambda_1 analogue u(g, n)
are finite combinations of the constants

    kappa(g, i) = int psi_1^2 ... psi_{2g-3+i}^2 lambda_{g-i},
    theta(g, i) = int psi_1^2 ... psi_{2g-4+i}^2 lambda_{g-i} lambda_1,

with double factorial weights in n, so the g + 1 values at n = 0, ..., g
determine them.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from qdvol.arithmetic.exact import PiScalar, double_factorial, factorial
from qdvol.recursion.tables import FTableStore
from qdvol.utils.exceptions import DomainError, InconsistencyError

from .linalg import solve_exact
from .segre import check_stratum, lplus_principal, segre_number, v_norm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HodgeConstants:
    g: int
    kappa: Tuple[Fraction, ...]
    kappa_prime: Tuple[Fraction, ...]
    theta: Tuple[Fraction, ...] = ()
    theta_prime: Tuple[Fraction, ...] = ()


def _check_genus(g: int) -> None:
    if g < 2:
        raise DomainError(f"Hodge constants are extracted for g >= 2, got {g}")


def kappa_weight(g: int, i: int) -> int:
    """
    kappa(g, i) = kappa(g, i)' * kappa_weight(g, i).
    """
    return factorial(2 * g - 3 + i) * int(double_factorial(4 * g - 7 + i))


def theta_weight(g: int, i: int) -> int:
    return factorial(2 * g - 4 + i) * int(double_factorial(4 * g - 8 + i))


def _kappa_system(g: int, n: int):
    a = 4 * g - 6 + 2 * n
    return [double_factorial(a + i - 1) / double_factorial(a) for i in range(g + 1)]


def _theta_system(g: int, n: int):
    b = 4 * g - 8 + 2 * n
    return [double_factorial(b + i) / double_factorial(b) for i in range(g + 1)]


def kappa_prime_extract(g: int, store: FTableStore = None) -> HodgeConstants:
    _check_genus(g)
    scale = Fraction(1, 2 ** (4 * g - 2))
    matrix = [_kappa_system(g, n) for n in range(g + 1)]
    rhs = [scale * v_norm(g, n, store) for n in range(g + 1)]
    kappa_prime = tuple(solve_exact(matrix, rhs))
    kappa = tuple(k * kappa_weight(g, i) for i, k in enumerate(kappa_prime))
    if any(k <= 0 for k in kappa):
        raise InconsistencyError(f"non-positive kappa({g}, i) in {kappa}")
    logger.info("kappa(%d, i) extracted: %s", g, ", ".join(str(k) for k in kappa))
    return HodgeConstants(g, kappa, kappa_prime)


def u_norm(g: int, n: int, store: FTableStore = None) -> Fraction:
    """
    The renormalized integral of s_{3g-4+n} lambda_1, which is -L+ s_{g,n} / 2.
    """
    _check_genus(g)
    check_stratum(g, n)
    integral = -lplus_principal(g, n, store) * segre_number(g, n, store) / 2
    sign = (-1) ** (3 * g - 4 + n)
    return sign * 2 ** (4 * g - 2) / double_factorial(4 * g - 8 + 2 * n) * integral


def theta_prime_extract(g: int, store: FTableStore = None) -> HodgeConstants:
    """
    The theta constants, together with the kappa constants of the same genus.
    """
    constants = kappa_prime_extract(g, store)
    scale = Fraction(1, 2 ** (4 * g - 2))
    matrix = [_theta_system(g, n) for n in range(g + 1)]
    rhs = [scale * u_norm(g, n, store) for n in range(g + 1)]
    theta_prime = tuple(solve_exact(matrix, rhs))
    theta = tuple(t * theta_weight(g, i) for i, t in enumerate(theta_prime))
    if any(t <= 0 for t in theta):
        raise InconsistencyError(f"non-positive theta({g}, i) in {theta}")
    logger.info("theta(%d, i) extracted: %s", g, ", ".join(str(t) for t in theta))
    return HodgeConstants(g, constants.kappa, constants.kappa_prime, theta, theta_prime)


def volume_via_hodge(
    g: int, n: int, store: FTableStore = None, constants: HodgeConstants = None
) -> PiScalar:
    _check_genus(g)
    check_stratum(g, n)
    constants = constants or kappa_prime_extract(g, store)
    total = Fraction(0)
    for i, kappa in enumerate(constants.kappa):
        total += (
            Fraction(
                factorial(4 * g - 4 + n) * int(double_factorial(4 * g - 7 + 2 * n + i)),
                factorial(2 * g - 3 + i) * int(double_factorial(4 * g - 7 + i)),
            )
            * kappa
        )
    coefficient = Fraction(2 ** (2 * g + 1), factorial(6 * g - 7 + 2 * n)) * total
    return PiScalar(coefficient, 6 * g - 6 + 2 * n)


def hodge_g1_closed(n: int) -> Tuple[Fraction, Fraction]:
    """
    The two genus one Hodge integrals behind the genus one volume:
    (n-1)! (2n-3)!! / 24 and n! (2n-2)!! / 24.
    """
    if n < 1:
        raise DomainError(f"the genus one Hodge integrals need n >= 1, got {n}")
    return (
        factorial(n - 1) * double_factorial(2 * n - 3) / 24,
        factorial(n) * double_factorial(2 * n - 2) / 24,
    )
