"""
Fixed-genus structure in the number of poles:

    v(g, n) = p_g(n) + gamma_{2g-3+n} q_g(n),
    (2g - 3 + n) (p_g + gamma q_g) L+ = r_g(n) + gamma_{2g-3+n} s_g(n),

with gamma_k = 4^{-k} C(2k, k).
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from qdvol.arithmetic.exact import PiScalar, factorial, gamma_k
from qdvol.recursion.tables import FTableStore
from qdvol.utils.exceptions import DomainError, InconsistencyError

from .hodge import HodgeConstants, kappa_prime_extract, theta_prime_extract
from .polynomials import RationalPolynomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FixedGenusPolynomials:
    g: int
    p: RationalPolynomial
    q: RationalPolynomial
    r: RationalPolynomial
    s: RationalPolynomial
    m: Fraction
    n_constant: Fraction

    def volume_ratio(self, n: int) -> Fraction:
        """
        p + gamma q, the normalized volume v(g, n).
        """
        return self.p(n) + gamma_k(2 * self.g - 3 + n) * self.q(n)

    def lyapunov_numerator(self, n: int) -> Fraction:
        return self.r(n) + gamma_k(2 * self.g - 3 + n) * self.s(n)


def _ratio_polynomial(start: int, steps: int) -> RationalPolynomial:
    # (start + 2n + 2 steps)!! / (start + 2n)!! as a polynomial in n
    return RationalPolynomial.product_of_linear(
        (start + 2 * j, 2) for j in range(1, steps + 1)
    )


def _check_degree(name: str, polynomial: RationalPolynomial, expected: int) -> None:
    if polynomial.degree != expected:
        raise InconsistencyError(
            f"{name} has degree {polynomial.degree}, expected {expected}"
        )


def _top_constant(g: int, even: RationalPolynomial, odd: RationalPolynomial) -> Fraction:
    polynomial = even if g % 2 == 0 else odd
    return polynomial.leading_coefficient / 2 ** (6 * g - 7)


def pq_polynomials(g: int, store: FTableStore = None, constants: HodgeConstants = None):
    """
    (p_g, q_g, m_g) for g >= 2.
    """
    if g < 2:
        raise DomainError(f"pq polynomials are extracted for g >= 2, got {g}")
    constants = constants or kappa_prime_extract(g, store)
    kappa_prime = constants.kappa_prime
    scale = 2 ** (4 * g - 2)

    p = RationalPolynomial()
    for i in range((g - 1) // 2 + 1):
        p = p + _ratio_polynomial(4 * g - 6, i).scale(kappa_prime[2 * i + 1])
    q = RationalPolynomial()
    for i in range(g // 2 + 1):
        q = q + _ratio_polynomial(4 * g - 7, i).scale(kappa_prime[2 * i])
    p, q = p.scale(scale), q.scale(scale)

    _check_degree(f"p_{g}", p, (g - 1) // 2)
    _check_degree(f"q_{g}", q, g // 2)
    return p, q, _top_constant(g, q, p)


def rs_polynomials(g: int, store: FTableStore = None, constants: HodgeConstants = None):
    """
    (r_g, s_g, n_g) for g >= 2.
    """
    if g < 2:
        raise DomainError(f"rs polynomials are extracted for g >= 2, got {g}")
    if constants is None or not constants.theta_prime:
        constants = theta_prime_extract(g, store)
    theta_prime = constants.theta_prime
    scale = 2 ** (4 * g - 2)

    r = RationalPolynomial()
    for i in range(g // 2 + 1):
        r = r + _ratio_polynomial(4 * g - 8, i).scale(theta_prime[2 * i])
    s = RationalPolynomial()
    for i in range((g - 1) // 2 + 1):
        s = s + _ratio_polynomial(4 * g - 7, i).scale(theta_prime[2 * i + 1])
    r = r.scale(scale)
    s = s * RationalPolynomial.linear(4 * g - 6, 2) * scale

    _check_degree(f"r_{g}", r, g // 2)
    _check_degree(f"s_{g}", s, (g + 1) // 2)
    return r, s, _top_constant(g, r, s)


def genus_one_polynomials() -> FixedGenusPolynomials:
    """
    The closed genus one forms: p = q = 1/6, r = 0, s = (n - 1) / 3.
    """
    sixth = RationalPolynomial.constant(Fraction(1, 6))
    return FixedGenusPolynomials(
        g=1,
        p=sixth,
        q=sixth,
        r=RationalPolynomial(),
        s=RationalPolynomial.linear(Fraction(-1, 3), Fraction(1, 3)),
        m=Fraction(1, 3),
        n_constant=Fraction(2, 3),
    )


def fixed_genus_polynomials(g: int, store: FTableStore = None) -> FixedGenusPolynomials:
    if g == 1:
        return genus_one_polynomials()
    if g < 1:
        raise DomainError(f"fixed genus polynomials exist for g >= 1, got {g}")
    constants = theta_prime_extract(g, store)
    p, q, m = pq_polynomials(g, constants=constants)
    r, s, n_constant = rs_polynomials(g, constants=constants)
    return FixedGenusPolynomials(g, p, q, r, s, m, n_constant)


def _check_poles(g: int, n: int) -> None:
    if n < 0 or g == 1 and n < 2:
        raise DomainError(f"the stratum Q_{g},{n} is empty", code="empty_stratum")


def volume_via_pq(g: int, n: int, polynomials: FixedGenusPolynomials = None) -> PiScalar:
    _check_poles(g, n)
    polynomials = polynomials or fixed_genus_polynomials(g)
    coefficient = (
        2 ** n
        * Fraction(
            factorial(2 * g - 3 + n) * factorial(4 * g - 4 + n),
            factorial(6 * g - 7 + 2 * n),
        )
        * polynomials.volume_ratio(n)
    )
    return PiScalar(coefficient, 6 * g - 6 + 2 * n)


def lplus_via_rs(g: int, n: int, polynomials: FixedGenusPolynomials = None) -> Fraction:
    _check_poles(g, n)
    polynomials = polynomials or fixed_genus_polynomials(g)
    return polynomials.lyapunov_numerator(n) / (
        (2 * g - 3 + n) * polynomials.volume_ratio(n)
    )


def carea_polynomials(
    g: int, polynomials: FixedGenusPolynomials = None
) -> Tuple[RationalPolynomial, RationalPolynomial]:
    """
    (p*_g, q*_g) with c_area = (p*/(2g-3+n) + gamma q*) / (p + gamma q) / pi^2.
    """
    if g == 1:
        return (
            RationalPolynomial([0, Fraction(-1, 36), Fraction(1, 36)]),
            RationalPolynomial.linear(1, Fraction(1, 36)),
        )
    polynomials = polynomials or fixed_genus_polynomials(g)
    shift = RationalPolynomial.linear(5 - 5 * g, 1)
    euler = RationalPolynomial.linear(2 * g - 3, 1)
    p_star = shift * euler * polynomials.p.scale(Fraction(1, 6)) + polynomials.r.scale(3)
    q_star = shift * polynomials.q.scale(Fraction(1, 6)) + polynomials.s.divide_linear(
        2 * g - 3, 1
    ).scale(3)
    return p_star, q_star


def carea_via_polynomials(g: int, n: int, polynomials: FixedGenusPolynomials = None) -> PiScalar:
    _check_poles(g, n)
    polynomials = polynomials or fixed_genus_polynomials(g)
    p_star, q_star = carea_polynomials(g, polynomials)
    k = 2 * g - 3 + n
    value = (p_star(n) / k + gamma_k(k) * q_star(n)) / polynomials.volume_ratio(n)
    return PiScalar(value, -2)
