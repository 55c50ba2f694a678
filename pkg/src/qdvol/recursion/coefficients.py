"""
The coefficients t_d, r_d of the curves S[a, b], defined through

    T(u) / T(0) = exp(-sum_{d>=1} t_d u^d),    R(u) = exp(sum_{d>=1} r_d u^d).

The closed route uses Bernoulli numbers; the local route expands y and the
first basis element in the coordinate zeta = sqrt(2 (x - x(a))), which is
rational only when -1/a is a square.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from qdvol.arithmetic.exact import (
    bernoulli_number,
    bernoulli_polynomial,
    double_factorial,
    rational_sqrt,
)
from qdvol.arithmetic.series import TruncatedSeries
from qdvol.utils.exceptions import CoordinateError, DomainError

from .curves import CurveParams, x_local_series, y_series

logger = logging.getLogger(__name__)

CLOSED = "closed"
LOCAL = "local"


@dataclass(frozen=True)
class TRCoefficients:
    """
    t_d and r_d for d = 1 .. d_max, indexed from zero.

    ``t0_square`` is e^{-2 t_0} = T(0)^2, rational even when e^{t_0} is not.
    """

    params: CurveParams
    route: str
    t: Tuple[Fraction, ...]
    r: Tuple[Fraction, ...]
    t0_square: Fraction

    @property
    def d_max(self) -> int:
        return len(self.t)

    def t_coefficient(self, d: int) -> Fraction:
        return self.t[d - 1]

    def r_coefficient(self, d: int) -> Fraction:
        return self.r[d - 1]


def _check_d_max(d_max: int) -> None:
    if d_max < 1:
        raise DomainError(f"d_max must be at least 1, got {d_max}")


def tr_coefficients_closed(params: CurveParams, d_max: int) -> TRCoefficients:
    _check_d_max(d_max)
    a, b = params.a, params.b
    t = []
    r = []
    for d in range(1, d_max + 1):
        weight = d * (d + 1) * a ** d
        t.append((-1) ** (d + 1) * bernoulli_polynomial(d + 1, 1 - b) / weight)
        r.append(-bernoulli_number(d + 1) / weight)
    t0_square = -(b ** 2) * a ** (2 * b - 1)
    return TRCoefficients(params, CLOSED, tuple(t), tuple(r), t0_square)


def zeta_coordinate(params: CurveParams, order: int) -> TruncatedSeries:
    """
    zeta(t) = sqrt(2 (x(a + t) - x(a))), normalized with a positive leading
    coefficient sqrt(-1/a).
    """
    try:
        return x_local_series(params, order + 1).scale(2).sqrt()
    except DomainError as exc:
        raise CoordinateError(
            f"no rational local coordinate on {params}: -1/a is not a square"
        ) from exc


def tr_coefficients_local(params: CurveParams, d_max: int) -> TRCoefficients:
    _check_d_max(d_max)
    a = params.a
    try:
        normalization = rational_sqrt(-a)
    except DomainError as exc:
        raise CoordinateError(
            f"no rational local coordinate on {params}: -a is not a square"
        ) from exc

    # y is needed through zeta^{2 d_max + 1}, xi_0 through zeta^{2 d_max - 2}
    order = 2 * d_max + 3
    zeta = zeta_coordinate(params, order)
    t_of_zeta = zeta.reversion()
    y = y_series(params, order).compose(t_of_zeta)

    t_square = t_of_zeta.mul(t_of_zeta)
    # xi_0 = sqrt(-a) dt / t^2, pulled back to zeta
    xi = t_of_zeta.derivative().div(t_square).scale(normalization)

    t_series = TruncatedSeries.from_terms(
        {
            d: -double_factorial(2 * d + 1) * y.coefficient(2 * d + 1)
            for d in range(d_max + 1)
        },
        order=d_max + 1,
    )
    r_series = TruncatedSeries.from_terms(
        dict(
            [(0, Fraction(1))]
            + [
                (d + 1, -double_factorial(2 * d - 1) * xi.coefficient(2 * d))
                for d in range(d_max)
            ]
        ),
        order=d_max + 1,
    )
    t0 = t_series.coefficient(0)
    if not t0:
        raise CoordinateError(f"T(0) vanishes on {params}")
    log_t = (t_series / t0).log()
    log_r = r_series.log()
    logger.debug("local coefficient route on %s done to d = %d", params, d_max)
    return TRCoefficients(
        params,
        LOCAL,
        tuple(-log_t.coefficient(d) for d in range(1, d_max + 1)),
        tuple(log_r.coefficient(d) for d in range(1, d_max + 1)),
        t0 * t0,
    )


def tr_coefficients(params: CurveParams, d_max: int, route: str = CLOSED) -> TRCoefficients:
    if route == CLOSED:
        return tr_coefficients_closed(params, d_max)
    if route == LOCAL:
        return tr_coefficients_local(params, d_max)
    raise DomainError(f"unknown coefficient route {route!r}")


def tr_series(params: CurveParams, d_max: int, route: str = CLOSED):
    """
    The truncated series T(u) / T(0) and R(u), known below u^{d_max + 1}.
    """
    coefficients = tr_coefficients(params, d_max, route)
    order = d_max + 1
    t_exponent = TruncatedSeries.from_terms(
        {d: -c for d, c in enumerate(coefficients.t, start=1)}, order=order
    )
    r_exponent = TruncatedSeries.from_terms(
        {d: c for d, c in enumerate(coefficients.r, start=1)}, order=order
    )
    return t_exponent.exp(), r_exponent.exp()
