"""
Local data of the spectral curves S[a, b]: x(z) = -z + a ln z, y(z) = z^b,
with the standard double-pole bidifferential.

Everything is expanded at the unique branch point z = a in the coordinate
t = z - a. For (a, b) = (-1, 2) the involution is the series ``sigma_hat``
and dx/dt = -t / (t - 1).
"""
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from qdvol.arithmetic.exact import as_exact, binomial
from qdvol.arithmetic.laurent import LaurentPoly
from qdvol.arithmetic.series import TruncatedSeries
from qdvol.utils.exceptions import CoordinateError, DomainError
from qdvol.utils.memo import KeyedMemo

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveParams:
    a: Fraction
    b: int

    def __post_init__(self):
        a = as_exact(self.a)
        if a == 0:
            raise DomainError("the curve parameter a must be nonzero", code="curve")
        if isinstance(self.b, bool) or not isinstance(self.b, int) or self.b == 0:
            raise DomainError(
                f"the curve parameter b must be a nonzero integer, got {self.b!r}",
                code="curve",
            )
        object.__setattr__(self, "a", a)

    def __str__(self):
        return f"S[{self.a},{self.b}]"

    @property
    def fingerprint(self) -> Tuple[str, int]:
        """
        Exact, JSON friendly identity of the curve.
        """
        return (str(self.a), self.b)


DEFAULT_CURVE = CurveParams(Fraction(-1), 2)


_sigma_hat = KeyedMemo("sigma_hat")
_involutions = KeyedMemo("involutions")
_curves = KeyedMemo("curves")


def sigma_hat_series(order: int) -> TruncatedSeries:
    """
    The involution of the (-1, 2) curve: t + ln(1 - t) = s + ln(1 - s) with
    s = -t + O(t^2), known below t^order.
    """
    if order < 2:
        raise DomainError(f"sigma_hat needs an order of at least 2, got {order}")
    return _sigma_hat.get_or_compute(order, lambda: _solve_sigma_hat(order))


def _solve_sigma_hat(order: int) -> TruncatedSeries:
    # -2(u + ln(1 - u)) = u^2 + 2u^3/3 + ... is the square of s(u) = u + O(u^2),
    # and the involution is s^{-1}(-s(t))
    square = TruncatedSeries.from_terms(
        {k: Fraction(2, k) for k in range(2, order + 1)}, order=order + 1
    )
    s = square.sqrt()
    return s.reversion().compose(-s)


def x_local_series(params: CurveParams, order: int) -> TruncatedSeries:
    """
    x(a + t) - x(a) = -t + a ln(1 + t/a), known below t^order.
    """
    if order < 3:
        raise DomainError(f"x_local_series needs an order of at least 3, got {order}")
    a = params.a
    terms = {k: (-1) ** (k + 1) * a ** (1 - k) / k for k in range(2, order)}
    return TruncatedSeries.from_terms(terms, order=order)


def y_series(params: CurveParams, order: int) -> TruncatedSeries:
    """
    y(a + t) = (t + a)^b; exact when b > 0.
    """
    a, b = params.a, params.b
    if b > 0:
        return TruncatedSeries.from_terms(
            {k: binomial(b, k) * a ** (b - k) for k in range(b + 1)}
        )
    return TruncatedSeries.from_terms(
        {k: binomial(b, k) * a ** (b - k) for k in range(order)}, order=order
    )


def involution_series(params: CurveParams, order: int) -> TruncatedSeries:
    """
    sigma(t) = -a sigma_hat(-t/a), checked against x(a + sigma(t)) = x(a + t).
    """
    return _involutions.get_or_compute(
        (params, order), lambda: _build_involution(params, order)
    )


def _build_involution(params: CurveParams, order: int) -> TruncatedSeries:
    a = params.a
    hat = sigma_hat_series(max(order, 3))
    scale = -1 / a
    sigma = TruncatedSeries.from_terms(
        {k: -a * c * scale ** k for k, c in hat.items()}, order=order
    )
    x = x_local_series(params, max(order, 3))
    if not x.compose(sigma).agrees_with(x):
        raise CoordinateError(f"the involution of {params} is not x-invariant")
    return sigma


def t_power(m: int) -> TruncatedSeries:
    return TruncatedSeries.monomial(m)


class SpectralCurve:
    """
    The series data the recursion needs on one curve, all known below
    t^precision or the best order that precision allows.

    Derived series (powers of sigma, the expanded kernel) are cached per
    instance; instances are shared through :func:`spectral_curve`.
    """

    def __init__(self, params: CurveParams = DEFAULT_CURVE, precision: int = 16):
        if precision < 4:
            raise DomainError(f"curve precision must be at least 4, got {precision}")
        self.params = params
        self.precision = precision
        self.sigma = involution_series(params, precision)
        self.y = y_series(params, precision)
        self.prefactor = self._build_prefactor()

        self._lock = threading.Lock()
        self._sigma_powers: Dict[int, TruncatedSeries] = {
            0: TruncatedSeries.monomial(0),
            1: self.sigma,
        }
        self._sigma_inverse: Optional[TruncatedSeries] = None
        self._complete: List[TruncatedSeries] = [TruncatedSeries.monomial(0)]
        self._kernel: Dict[int, LaurentPoly] = {}
        self._diagonal: Optional[TruncatedSeries] = None

    def __repr__(self):
        return f"<SpectralCurve {self.params} precision={self.precision}>"

    def _build_prefactor(self) -> TruncatedSeries:
        # K(t1, t) = prefactor(t) / ((t1 - t)(t1 - sigma(t))) with
        # prefactor = -(t + a)(t - sigma) sigma' / (2t (y(t) - y(sigma)))
        a = self.params.a
        t_minus_sigma = t_power(1) - self.sigma
        y_difference = self.y - self.y.compose(self.sigma)
        ratio = t_minus_sigma.div(y_difference)
        measure = TruncatedSeries.from_terms({0: a, 1: 1}).mul(
            self.sigma.derivative()
        )
        return ratio.mul(measure).shift(-1).scale(Fraction(-1, 2))

    def sigma_power(self, exponent: int) -> TruncatedSeries:
        try:
            return self._sigma_powers[exponent]
        except KeyError:
            pass
        if exponent > 0:
            power = self.sigma_power(exponent - 1).mul(self.sigma)
        else:
            power = self.sigma_power(exponent + 1).mul(self._inverse_sigma())
        with self._lock:
            self._sigma_powers.setdefault(exponent, power)
        return power

    def _inverse_sigma(self) -> TruncatedSeries:
        if self._sigma_inverse is None:
            self._sigma_inverse = self.sigma.inverse()
        return self._sigma_inverse

    def evaluate_at_sigma(self, poly: LaurentPoly, order: Optional[int] = None):
        """
        sum c_e sigma(t)^e for a pole-part polynomial sum c_e t^e.
        """
        result = TruncatedSeries.zero()
        for exponent, coefficient in poly.items():
            result = result + self.sigma_power(exponent).truncate(order).scale(
                coefficient
            )
        return result

    def diagonal_series(self) -> TruncatedSeries:
        """
        omega_{0,2}(t, sigma(t)) / (dt dsigma) = 1 / (t - sigma(t))^2.
        """
        if self._diagonal is None:
            difference = t_power(1) - self.sigma
            self._diagonal = difference.mul(difference).inverse()
        return self._diagonal

    def _complete_symmetric(self, p: int) -> TruncatedSeries:
        # h_p = sum_{i <= p} t^{p - i} sigma^i, so that
        # 1 / ((t1 - t)(t1 - sigma)) = sum_p h_p t1^{-p-2}
        while len(self._complete) <= p:
            q = len(self._complete)
            h = self._complete[q - 1].shift(1) + self.sigma_power(q)
            with self._lock:
                if len(self._complete) == q:
                    self._complete.append(h)
        return self._complete[p]

    def kernel_coefficient(self, j: int) -> LaurentPoly:
        """
        K_j(t1), the coefficient of t^j in the recursion kernel.
        """
        if j < -1:
            raise DomainError(f"the kernel has no t^{j} term")
        try:
            return self._kernel[j]
        except KeyError:
            pass
        terms = {}
        for p in range(j + 2):
            coefficient = self.prefactor.mul(
                self._complete_symmetric(p), order=j + 1
            ).coefficient(j)
            if coefficient:
                terms[-p - 2] = coefficient
        kernel = LaurentPoly(terms)
        with self._lock:
            self._kernel.setdefault(j, kernel)
        logger.debug("%r: kernel coefficient K_%d computed", self, j)
        return kernel

    @property
    def max_kernel_index(self) -> int:
        return self.prefactor.order - 1


def spectral_curve(params: CurveParams = DEFAULT_CURVE, precision: int = 16):
    return _curves.get_or_compute(
        (params, precision), lambda: SpectralCurve(params, precision)
    )


def recursion_kernel_series(
    order: int, params: CurveParams = DEFAULT_CURVE
) -> List[Tuple[int, LaurentPoly]]:
    """
    The kernel coefficients K_{-1}, ..., K_order.
    """
    if order < 0:
        raise DomainError(f"kernel order must be non-negative, got {order}")
    curve = spectral_curve(params, max(order + 3, 4))
    return [(j, curve.kernel_coefficient(j)) for j in range(-1, order + 1)]
