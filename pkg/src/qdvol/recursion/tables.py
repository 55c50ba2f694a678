"""
F-tables of the (-1, 2) curve.

Two routes are provided. :func:`f_table` decomposes the residue-route
amplitude W_{g,n} on the Xi-basis. :func:`f_table_basis` runs the recursion
directly on the basis: every residue the recursion takes is a linear map on
Xi-coefficients, so it is computed once per basis pair and reused.
"""
import logging
import threading
import time
from datetime import timedelta
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from humanize import naturaldelta

from qdvol.arithmetic.laurent import LaurentPoly
from qdvol.arithmetic.series import TruncatedSeries
from qdvol.utils.exceptions import DomainError, TruncationError
from qdvol.utils.memo import KeyedMemo

from .amplitudes import DEFAULT_TRUNCATION_STEP, AmplitudeEngine, tr_amplitude
from .basis import (
    FTable,
    IndexTuple,
    check_stable,
    decompose_amplitude,
    is_stable,
    max_degree,
    peel_polynomial,
    xi_basis,
)
from .curves import DEFAULT_CURVE, SpectralCurve, spectral_curve

logger = logging.getLogger(__name__)
performance_logger = logging.getLogger("performance")

Vector = Dict[int, Fraction]


def f_table(g: int, n: int, engine: AmplitudeEngine = None) -> FTable:
    """
    Decompose W_{g,n} on products of basis elements.
    """
    check_stable(g, n)
    if n < 1:
        raise DomainError("F-tables need at least one point", code="unstable")
    table = FTable.from_coefficients(
        g, n, decompose_amplitude(tr_amplitude(g, n, engine))
    )
    table.check_degree()
    return table


def sorted_index_tuples(n: int, bound: int, top: Optional[int] = None) -> Iterator[IndexTuple]:
    """
    Non-increasing tuples of n non-negative integers with sum at most ``bound``.
    """
    if n == 0:
        yield ()
        return
    top = bound if top is None else min(top, bound)
    for k in range(top + 1):
        for rest in sorted_index_tuples(n - 1, bound - k, k):
            yield (k,) + rest


class KernelTensors:
    """
    Residues of the kernel of one curve against basis elements, as vectors
    sum_i v_i Xi_i(t_1).
    """

    def __init__(self, curve: SpectralCurve):
        self.curve = curve
        self._lock = threading.Lock()
        self._kernel: Dict[int, Vector] = {}
        self._at_sigma: Dict[int, TruncatedSeries] = {}
        self._splitting: Dict[Tuple[int, int], Vector] = {}
        self._propagator: Dict[int, Dict[Tuple[int, int], Fraction]] = {}
        self._diagonal: Optional[Vector] = None

    def __repr__(self):
        return f"<KernelTensors precision={self.curve.precision}>"

    def kernel_vector(self, j: int) -> Vector:
        if j not in self._kernel:
            vector = peel_polynomial(self.curve.kernel_coefficient(j))
            with self._lock:
                self._kernel.setdefault(j, vector)
        return self._kernel[j]

    def residue(self, series: TruncatedSeries) -> Vector:
        """
        Res_{t=0} K(t_1, t) series(t) dt on the basis.
        """
        # the series has to be known through t^0
        series.coefficient(0)
        result: Vector = {}
        if series.is_zero:
            return result
        for j in range(-1, -series.valuation):
            value = series.coefficient(-j - 1)
            if not value:
                continue
            for i, c in self.kernel_vector(j).items():
                result[i] = result.get(i, 0) + value * c
        return {i: c for i, c in result.items() if c}

    def xi_at_sigma(self, k: int) -> TruncatedSeries:
        if k not in self._at_sigma:
            series = self.curve.evaluate_at_sigma(xi_basis(k))
            with self._lock:
                self._at_sigma.setdefault(k, series)
        return self._at_sigma[k]

    def splitting(self, a: int, b: int) -> Vector:
        """
        Res K(t_1, t) Xi_a(t) Xi_b(sigma(t)).
        """
        key = (a, b)
        if key not in self._splitting:
            product = xi_basis(a).to_series().mul(self.xi_at_sigma(b), order=1)
            vector = self.residue(product)
            with self._lock:
                self._splitting.setdefault(key, vector)
        return self._splitting[key]

    def diagonal(self) -> Vector:
        """
        Res K(t_1, t) / (t - sigma(t))^2, the genus-one initial data.
        """
        if self._diagonal is None:
            self._diagonal = self.residue(self.curve.diagonal_series().truncate(1))
        return self._diagonal

    def propagator(self, l: int) -> Dict[Tuple[int, int], Fraction]:
        """
        The omega_{0,2} insertions: Res K(t_1, t) [B(t, t_j) Xi_l(sigma(t)) +
        Xi_l(t) B(sigma(t), t_j)] as sum B[i, m] Xi_i(t_1) Xi_m(t_j).
        """
        if l in self._propagator:
            return self._propagator[l]
        at_sigma = self.xi_at_sigma(l)
        xi = xi_basis(l).to_series()
        polys: Dict[int, Dict[int, Fraction]] = {}
        # (t - t_j)^{-2} = sum_m (m + 1) t^m t_j^{-m-2}; terms with m > 2l + 2
        # have no polar part
        for m in range(2 * l + 3):
            series = at_sigma.shift(m).truncate(1) + xi.mul(
                self.curve.sigma_power(m), order=1
            )
            for i, value in self.residue(series).items():
                poly = polys.setdefault(i, {})
                poly[-m - 2] = poly.get(-m - 2, 0) + (m + 1) * value
        tensor = {}
        for i, poly in polys.items():
            for m, value in peel_polynomial(LaurentPoly(poly)).items():
                tensor[(i, m)] = value
        with self._lock:
            self._propagator.setdefault(l, tensor)
        return self._propagator[l]


class FTableStore:
    """
    Memoized basis-route F-tables of the (-1, 2) curve.

    ``on_computed`` is called with every freshly computed table (not with
    preloaded ones), which is how the persistent cache learns about them.
    """

    def __init__(
        self,
        truncation_margin: int = 0,
        truncation_step: int = DEFAULT_TRUNCATION_STEP,
        on_computed: Callable[[FTable], None] = None,
    ):
        self.truncation_margin = truncation_margin
        self.truncation_step = truncation_step
        self.on_computed = on_computed
        self._tables = KeyedMemo("f_tables")
        self._lock = threading.Lock()
        self._tensors: Optional[KernelTensors] = None
        self.computed_count = 0

    def __repr__(self):
        return f"<FTableStore tables={len(self._tables)}>"

    def working_order(self, g: int, n: int) -> int:
        return max(2 * (3 * g - 2 + n) + 6 + self.truncation_margin, 4)

    def tensors(self, precision: int) -> KernelTensors:
        with self._lock:
            if self._tensors is None or self._tensors.curve.precision < precision:
                logger.debug("building kernel tensors at precision %d", precision)
                self._tensors = KernelTensors(spectral_curve(DEFAULT_CURVE, precision))
            return self._tensors

    def table(self, g: int, n: int) -> FTable:
        check_stable(g, n)
        if n < 1:
            raise DomainError("F-tables need at least one point", code="unstable")
        return self._tables.get_or_compute((g, n), lambda: self._compute(g, n))

    def __contains__(self, key) -> bool:
        return key in self._tables

    def preload(self, tables: Iterable[FTable]) -> int:
        count = 0
        for table in tables:
            self._tables.put((table.g, table.n), table)
            count += 1
        return count

    def tables(self) -> List[FTable]:
        return [self._tables.get(key) for key in sorted(self._tables.keys())]

    def _compute(self, g: int, n: int) -> FTable:
        start = time.monotonic()
        precision = self.working_order(g, n)
        while True:
            tensors = self.tensors(precision)
            try:
                entries = self._entries(tensors, g, n)
                break
            except TruncationError as exc:
                logger.debug(
                    "F_%d,%d: %s, raising the working order from %d", g, n, exc, precision
                )
                precision = max(precision, tensors.curve.precision) + self.truncation_step

        table = FTable(g, n, entries)
        table.check_degree()
        with self._lock:
            self.computed_count += 1
        performance_logger.info(
            "F-table (%d, %d) computed in %s",
            g,
            n,
            naturaldelta(timedelta(seconds=time.monotonic() - start)),
        )
        logger.info("F-table (%d, %d) computed with %d nonzero entries", g, n, len(table))
        if self.on_computed is not None:
            self.on_computed(table)
        return table

    def _entries(self, tensors: KernelTensors, g: int, n: int) -> Dict[IndexTuple, Fraction]:
        entries = {}
        for indices in sorted_index_tuples(n, max_degree(g, n)):
            value = self.entry(tensors, g, n, indices[0], indices[1:])
            if value:
                entries[indices] = value
        return entries

    def entry(self, tensors: KernelTensors, g: int, n: int, i: int, rest: IndexTuple) -> Fraction:
        """
        F_{g,n}[i, rest] with the first variable distinguished.
        """
        if (g, n) == (0, 3):
            if rest != (0, 0):
                return Fraction(0)
            return 2 * tensors.kernel_vector(-1).get(i, Fraction(0))
        if (g, n) == (1, 1):
            return tensors.diagonal().get(i, Fraction(0))

        total = Fraction(0)

        if n >= 2:
            previous = self.table(g, n - 1)
            bound = max_degree(g, n - 1)
            for position, k in enumerate(rest):
                others = rest[:position] + rest[position + 1 :]
                for l in range(bound - sum(others) + 1):
                    coefficient = tensors.propagator(l).get((i, k))
                    if coefficient:
                        total += coefficient * previous[(l,) + others]

        if g >= 1:
            reduced = self.table(g - 1, n + 1)
            bound = max_degree(g - 1, n + 1) - sum(rest)
            for a in range(bound + 1):
                for b in range(bound - a + 1):
                    coefficient = tensors.splitting(a, b).get(i)
                    if coefficient:
                        total += coefficient * reduced[(a, b) + rest]

        positions = range(n - 1)
        for h in range(g + 1):
            for size in range(n):
                if not is_stable(h, 1 + size) or not is_stable(g - h, n - size):
                    continue
                left = self.table(h, 1 + size)
                right = self.table(g - h, n - size)
                for chosen in combinations(positions, size):
                    first = tuple(rest[p] for p in chosen)
                    second = tuple(rest[p] for p in positions if p not in chosen)
                    left_bound = max_degree(h, 1 + size) - sum(first)
                    right_bound = max_degree(g - h, n - size) - sum(second)
                    for a in range(left_bound + 1):
                        fa = left[(a,) + first]
                        if not fa:
                            continue
                        for b in range(right_bound + 1):
                            fb = right[(b,) + second]
                            if not fb:
                                continue
                            coefficient = tensors.splitting(a, b).get(i)
                            if coefficient:
                                total += coefficient * fa * fb
        return total


_stores: Dict[int, FTableStore] = {}
_stores_lock = threading.Lock()


def get_store(truncation_margin: int = 0) -> FTableStore:
    with _stores_lock:
        if truncation_margin not in _stores:
            _stores[truncation_margin] = FTableStore(truncation_margin)
        return _stores[truncation_margin]


def f_table_basis(g: int, n: int, store: FTableStore = None) -> FTable:
    return (store or get_store()).table(g, n)


def f_g0(g: int, store: FTableStore = None) -> Fraction:
    """
    F_{g,0} = (F_{g,1}[1] + F_{g,1}[2]) / (g - 1).
    """
    if g < 2:
        raise DomainError(f"F_g,0 is defined for g >= 2, got {g}")
    table = f_table_basis(g, 1, store)
    return (table[(1,)] + table[(2,)]) / (g - 1)


def f_g0_residue(g: int, engine: AmplitudeEngine = None) -> Fraction:
    """
    F_{g,0} = Res Phi(t) W_{g,1}(t) dt / (2 - 2g) with Phi = t^2/2 - t^3/3 a
    primitive of y dx.
    """
    if g < 2:
        raise DomainError(f"F_g,0 is defined for g >= 2, got {g}")
    w = tr_amplitude(g, 1, engine)
    residue = w.coefficient((-3,)) / 2 - w.coefficient((-4,)) / 3
    return residue / (2 - 2 * g)
