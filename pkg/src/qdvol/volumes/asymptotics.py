"""
Large-n behaviour at fixed genus:

    vol(g, n)  ~ 2^{-n} pi^{6g-6+2n+eps/2} m_g n^{g/2},
    L+(g, n)   ~ pi^{1/2-eps} (n_g / m_g) / sqrt(n),

with eps = g mod 2. Exact values are evaluated in floating point through
log-gamma so that n in the hundreds stays representable.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from qdvol.utils.exceptions import DomainError

from .fixed_genus import FixedGenusPolynomials, fixed_genus_polynomials

logger = logging.getLogger(__name__)

VOLUME = "volume"
LPLUS = "lplus"

LOG_PI = math.log(math.pi)


def epsilon(g: int) -> int:
    return g % 2


def log_fraction(value: Fraction) -> float:
    if value <= 0:
        raise DomainError(f"log of non-positive value {value}")
    return math.log(value.numerator) - math.log(value.denominator)


def log_gamma_k(k: int) -> float:
    """
    log(4^{-k} C(2k, k)).
    """
    return math.lgamma(2 * k + 1) - 2 * math.lgamma(k + 1) - k * math.log(4)


def _log_linear_combination(constant: Fraction, weight_log: float, factor: Fraction) -> float:
    # log(constant + e^{weight_log} factor) for positive terms
    terms = []
    if constant:
        terms.append(log_fraction(constant))
    if factor:
        terms.append(weight_log + log_fraction(factor))
    top = max(terms)
    return top + math.log(sum(math.exp(t - top) for t in terms))


@dataclass(frozen=True)
class AsymptoticEstimate:
    mode: str
    g: int
    n: int
    constant: Fraction
    pi_exponent: Fraction
    n_exponent: Fraction
    two_exponent: int
    log_estimate: float
    log_value: float

    @property
    def ratio(self) -> float:
        """
        value / estimate.
        """
        return math.exp(self.log_value - self.log_estimate)

    @property
    def estimate(self) -> float:
        return math.exp(self.log_estimate)

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def log_volume(polynomials: FixedGenusPolynomials, n: int) -> float:
    """
    log vol(g, n) from the fixed genus polynomials.
    """
    g = polynomials.g
    k = 2 * g - 3 + n
    log_ratio = _log_linear_combination(polynomials.p(n), log_gamma_k(k), polynomials.q(n))
    return (
        n * math.log(2)
        + (6 * g - 6 + 2 * n) * LOG_PI
        + math.lgamma(k + 1)
        + math.lgamma(4 * g - 3 + n)
        - math.lgamma(6 * g - 6 + 2 * n)
        + log_ratio
    )


def log_lplus(polynomials: FixedGenusPolynomials, n: int) -> float:
    g = polynomials.g
    k = 2 * g - 3 + n
    weight = log_gamma_k(k)
    numerator = _log_linear_combination(polynomials.r(n), weight, polynomials.s(n))
    denominator = _log_linear_combination(polynomials.p(n), weight, polynomials.q(n))
    return numerator - denominator - math.log(k)


def asymptotics(
    g: int, n: int, mode: str = VOLUME, polynomials: FixedGenusPolynomials = None
) -> AsymptoticEstimate:
    if n < 1 or g < 1 or g == 1 and n < 2:
        raise DomainError(f"asymptotics are evaluated for g >= 1 and n >= 1, got ({g}, {n})")
    polynomials = polynomials or fixed_genus_polynomials(g)
    eps = epsilon(g)

    if mode == VOLUME:
        constant = polynomials.m
        pi_exponent = Fraction(6 * g - 6 + 2 * n) + Fraction(eps, 2)
        n_exponent = Fraction(g, 2)
        two_exponent = -n
        log_value = log_volume(polynomials, n)
    elif mode == LPLUS:
        constant = polynomials.n_constant / polynomials.m
        pi_exponent = Fraction(1, 2) - eps
        n_exponent = Fraction(-1, 2)
        two_exponent = 0
        log_value = log_lplus(polynomials, n)
    else:
        raise DomainError(f"unknown asymptotic mode {mode!r}")

    log_estimate = (
        two_exponent * math.log(2)
        + float(pi_exponent) * LOG_PI
        + log_fraction(constant)
        + float(n_exponent) * math.log(n)
    )
    estimate = AsymptoticEstimate(
        mode, g, n, constant, pi_exponent, n_exponent, two_exponent, log_estimate, log_value
    )
    logger.debug("%s asymptotics at (%d, %d): ratio %.6f", mode, g, n, estimate.ratio)
    return estimate
