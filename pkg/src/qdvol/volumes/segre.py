"""
Segre numbers of the quadratic Hodge bundle and the invariants of the
principal strata Q(1^{4g-4+n}, -1^n) built from them: Masur-Veech volumes,
area Siegel-Veech constants and sums of Lyapunov exponents.
"""
import logging
from fractions import Fraction
from math import comb

from qdvol.arithmetic.exact import PiScalar, double_factorial, factorial
from qdvol.recursion.basis import is_stable
from qdvol.recursion.tables import FTableStore, f_g0, f_table_basis
from qdvol.utils.exceptions import DomainError, InconsistencyError

logger = logging.getLogger(__name__)


def check_stratum(g: int, n: int) -> None:
    """
    The principal stratum of genus g with n poles has to be non-empty.
    """
    if g < 0 or n < 0:
        raise DomainError(f"genus and number of poles must be non-negative, got ({g}, {n})")
    if 4 * g - 4 + n < 0 or (g, n) in ((1, 0), (1, 1)):
        raise DomainError(f"the stratum Q_{g},{n} is empty", code="empty_stratum")


def segre_number(g: int, n: int, store: FTableStore = None) -> Fraction:
    """
    s_{g,n} = 2^{2g-2+n} F_{g,n}[0, ..., 0]; for n = 0 the F_{g,0} value is
    used.
    """
    if not is_stable(g, n):
        raise DomainError(f"(g, n) = ({g}, {n}) is not stable", code="unstable")
    if n == 0:
        return 2 ** (2 * g - 2) * f_g0(g, store)
    return 2 ** (2 * g - 2 + n) * f_table_basis(g, n, store).zero_entry


def volume_principal(g: int, n: int, store: FTableStore = None) -> PiScalar:
    check_stratum(g, n)
    dimension = 6 * g - 6 + 2 * n
    if n == 0:
        # F_{g,1}[1] + F_{g,1}[2] = (g - 1) F_{g,0}
        coefficient = (
            3
            * 2 ** (4 * g)
            * Fraction(factorial(4 * g - 4), factorial(6 * g - 6))
            * (g - 1)
            * f_g0(g, store)
        )
    else:
        coefficient = (
            2 ** (4 * g - 1 + n)
            * Fraction(factorial(4 * g - 4 + n), factorial(6 * g - 7 + 2 * n))
            * f_table_basis(g, n, store).zero_entry
        )
    volume = PiScalar.from_i_pi_power(coefficient, dimension)
    if volume.coefficient <= 0:
        raise InconsistencyError(f"non-positive volume {volume} for Q_{g},{n}")
    return volume


def volume_g1_closed(n: int) -> PiScalar:
    if n < 2:
        raise DomainError(f"the genus one closed form needs n >= 2, got {n}", code="empty_stratum")
    coefficient = Fraction(factorial(n), 3 * factorial(2 * n - 1)) * (
        double_factorial(2 * n - 3) + double_factorial(2 * n - 2)
    )
    return PiScalar(coefficient, 2 * n)


def v_norm(g: int, n: int, store: FTableStore = None) -> Fraction:
    """
    The volume with its pi power, 2^n and factorial growth removed.
    """
    volume = volume_principal(g, n, store)
    return (
        volume.coefficient
        / 2 ** n
        * Fraction(
            factorial(6 * g - 7 + 2 * n),
            factorial(2 * g - 3 + n) * factorial(4 * g - 4 + n),
        )
    )


def boundary_numerator(g: int, n: int, store: FTableStore = None) -> Fraction:
    """
    The Segre numbers of the boundary strata that enter c_area: the
    non-separating stratum and every separating stratum with stable sides,
    a genus zero side carrying at least two of the poles.
    """
    total = Fraction(0)
    if g >= 1:
        total += segre_number(g - 1, n + 2, store) / 2

    separating = Fraction(0)
    for g1 in range(g + 1):
        g2 = g - g1
        for n1 in range(n + 1):
            n2 = n - n1
            if g1 == 0 and n1 < 2 or g2 == 0 and n2 < 2:
                continue
            if not is_stable(g1, n1 + 1) or not is_stable(g2, n2 + 1):
                continue
            separating += (
                comb(n, n1) * segre_number(g1, n1 + 1, store) * segre_number(g2, n2 + 1, store)
            )
    return total + separating / 2


def carea_principal(g: int, n: int, store: FTableStore = None) -> PiScalar:
    check_stratum(g, n)
    numerator = boundary_numerator(g, n, store)
    value = -numerator / (2 * segre_number(g, n, store))
    logger.debug("c_area(%d, %d) = %s / pi^2", g, n, value)
    return PiScalar(value, -2)


def lplus_principal(g: int, n: int, store: FTableStore = None) -> Fraction:
    """
    L+ = (5g - 5 - n) / 18 + pi^2 c_area / 3.
    """
    carea = carea_principal(g, n, store)
    return Fraction(5 * g - 5 - n, 18) + carea.coefficient / 3


def carea_lplus_g1_closed(n: int):
    """
    The genus one c_area and L+ as (PiScalar, Fraction).
    """
    if n < 2:
        raise DomainError(f"the genus one closed form needs n >= 2, got {n}", code="empty_stratum")
    ratio = double_factorial(2 * n - 2) / double_factorial(2 * n - 3)
    lplus = 2 / (1 + ratio)
    carea = PiScalar(Fraction(n, 6) + 6 / (1 + ratio), -2)
    return carea, lplus
