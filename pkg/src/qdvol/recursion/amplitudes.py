"""
The residue route of the topological recursion.

W_{g,n}(t_1, ..., t_n) is the coefficient of dt_1 ... dt_n in omega_{g,n}. It
is obtained as sum_j K_j(t_1) [t^{-j-1}] B(t; t_2, ..., t_n) where B is the
usual recursion bracket

    W_{g-1,n+1}(t, sigma(t), ...) + sum' W_{h,1+|J|}(t, J) W_{h',1+|J'|}(sigma(t), J')

expanded in t. Only the polar part of B (through t^0) is ever needed.
"""
import logging
import threading
import time
from datetime import timedelta
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple

from humanize import naturaldelta

from qdvol.arithmetic.laurent import Amplitude, LaurentPoly
from qdvol.arithmetic.series import TruncatedSeries
from qdvol.utils.exceptions import DomainError, InconsistencyError, TruncationError
from qdvol.utils.memo import KeyedMemo

from .basis import check_stable
from .curves import DEFAULT_CURVE, CurveParams, SpectralCurve, spectral_curve

logger = logging.getLogger(__name__)
performance_logger = logging.getLogger("performance")

DEFAULT_TRUNCATION_STEP = 5

Slices = List[Tuple[Tuple[int, ...], TruncatedSeries]]


class AmplitudeEngine:
    """
    Memoized residue-route recursion on one curve.

    The working truncation order for (g, n) starts at 2(3g - 2 + n) + 6 plus
    the configured margin and is raised by ``truncation_step`` whenever a
    coefficient is read beyond what the curve data supports.
    """

    def __init__(
        self,
        params: CurveParams = DEFAULT_CURVE,
        truncation_margin: int = 0,
        truncation_step: int = DEFAULT_TRUNCATION_STEP,
    ):
        self.params = params
        self.truncation_margin = truncation_margin
        self.truncation_step = truncation_step
        self._amplitudes = KeyedMemo(f"amplitudes {params}")

    def __repr__(self):
        return f"<AmplitudeEngine {self.params} margin={self.truncation_margin}>"

    def working_order(self, g: int, n: int) -> int:
        return max(2 * (3 * g - 2 + n) + 6 + self.truncation_margin, 4)

    def amplitude(self, g: int, n: int) -> Amplitude:
        check_stable(g, n)
        if n < 1:
            raise DomainError("amplitudes need at least one point", code="unstable")
        return self._amplitudes.get_or_compute((g, n), lambda: self._compute(g, n))

    def _compute(self, g: int, n: int) -> Amplitude:
        start = time.monotonic()
        order = self.working_order(g, n)
        while True:
            curve = spectral_curve(self.params, order)
            try:
                w = self._recurse(curve, g, n)
                break
            except TruncationError as exc:
                logger.debug(
                    "W_%d,%d on %s: %s, raising the working order from %d",
                    g,
                    n,
                    self.params,
                    exc,
                    order,
                )
                order += self.truncation_step

        if not w.is_symmetric():
            raise InconsistencyError(f"W_{g},{n} on {self.params} is not symmetric")
        performance_logger.info(
            "Amplitude W_%d,%d on %s computed in %s",
            g,
            n,
            self.params,
            naturaldelta(timedelta(seconds=time.monotonic() - start)),
        )
        return w

    # bracket pieces

    def _first_slices(self, curve: SpectralCurve, h: int, size: int, partner: int) -> Slices:
        # W_{h,1+size}(t, J) as series in t, keyed by the exponents of J
        if h == 0 and size == 1:
            return [
                ((-m - 2,), TruncatedSeries.monomial(m, m + 1))
                for m in range(partner + 1)
            ]
        return [
            (rest, poly.to_series())
            for rest, poly in self.amplitude(h, size + 1).slices().items()
        ]

    def _second_slices(self, curve: SpectralCurve, h: int, size: int, partner: int) -> Slices:
        # W_{h,1+size}(sigma(t), J')
        if h == 0 and size == 1:
            return [
                ((-m - 2,), curve.sigma_power(m).truncate(partner + 1).scale(m + 1))
                for m in range(partner + 1)
            ]
        return [
            (rest, curve.evaluate_at_sigma(poly, order=partner + 1))
            for rest, poly in self.amplitude(h, size + 1).slices().items()
        ]

    def _pole_order(self, h: int, size: int) -> int:
        if h == 0 and size == 1:
            return 0
        return max(self.amplitude(h, size + 1).pole_orders()[0], 0)

    def _diagonal_slices(self, curve: SpectralCurve, g: int, n: int) -> Slices:
        # W_{g-1,n+1}(t, sigma(t), t_2, ...)
        if (g - 1, n + 1) == (0, 2):
            return [((), curve.diagonal_series())]
        grouped: Dict[Tuple[int, ...], Dict[int, Dict[int, Fraction]]] = {}
        for exponents, coefficient in self.amplitude(g - 1, n + 1).terms.items():
            e0, e1, rest = exponents[0], exponents[1], exponents[2:]
            grouped.setdefault(rest, {}).setdefault(e1, {})[e0] = coefficient
        slices = []
        for rest, by_sigma in grouped.items():
            total = TruncatedSeries.zero()
            for e1, t_terms in by_sigma.items():
                t_part = LaurentPoly(t_terms)
                total = total + curve.sigma_power(e1).mul(
                    t_part.to_series(), order=1
                )
            slices.append((rest, total))
        return slices

    def _recurse(self, curve: SpectralCurve, g: int, n: int) -> Amplitude:
        bracket: Dict[Tuple[int, ...], TruncatedSeries] = {}

        def accumulate(key, series):
            if key in bracket:
                bracket[key] = bracket[key] + series
            else:
                bracket[key] = series

        if g >= 1:
            for rest, series in self._diagonal_slices(curve, g, n):
                accumulate(rest, series)

        others = range(n - 1)
        for h in range(g + 1):
            for size in range(n):
                if h == 0 and size == 0:
                    continue
                if g - h == 0 and n - 1 - size == 0:
                    continue
                first_pole = self._pole_order(h, size)
                second_pole = self._pole_order(g - h, n - 1 - size)
                first = self._first_slices(curve, h, size, second_pole)
                second = self._second_slices(curve, g - h, n - 1 - size, first_pole)
                for chosen in combinations(others, size):
                    complement = [p for p in others if p not in chosen]
                    for rest1, series1 in first:
                        for rest2, series2 in second:
                            key = [0] * (n - 1)
                            for position, exponent in zip(chosen, rest1):
                                key[position] = exponent
                            for position, exponent in zip(complement, rest2):
                                key[position] = exponent
                            accumulate(tuple(key), series1.mul(series2, order=1))

        terms: Dict[Tuple[int, ...], Fraction] = {}
        for rest, series in bracket.items():
            if series.is_zero:
                # an exactly vanishing bracket still has to be known through t^0
                series.coefficient(0)
                continue
            for j in range(-1, -series.valuation):
                value = series.coefficient(-j - 1)
                if not value:
                    continue
                for e1, k in curve.kernel_coefficient(j).terms.items():
                    key = (e1,) + rest
                    terms[key] = terms.get(key, 0) + value * k
        return Amplitude(n, terms)


_engines: Dict[Tuple[CurveParams, int], AmplitudeEngine] = {}
_engines_lock = threading.Lock()


def get_engine(
    params: CurveParams = DEFAULT_CURVE, truncation_margin: int = 0
) -> AmplitudeEngine:
    with _engines_lock:
        key = (params, truncation_margin)
        if key not in _engines:
            _engines[key] = AmplitudeEngine(params, truncation_margin)
        return _engines[key]


def tr_amplitude(g: int, n: int, engine: AmplitudeEngine = None) -> Amplitude:
    return (engine or get_engine()).amplitude(g, n)


def tr_amplitude_family(params: CurveParams, g: int, n: int) -> Amplitude:
    return get_engine(params).amplitude(g, n)


def f_zero_residue(g: int, n: int, engine: AmplitudeEngine = None) -> Fraction:
    """
    The coefficient of t_1^{-2} ... t_n^{-2} in W_{g,n}.
    """
    check_stable(g, n)
    return tr_amplitude(g, n, engine).coefficient((-2,) * n)
