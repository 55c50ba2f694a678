"""
Self checks against known values.

The quick level reproduces the published tables and the genus one and two
values; the full level adds genus three and the larger tables.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Tuple

from qdvol.arithmetic.exact import PiScalar
from qdvol.arithmetic.series import TruncatedSeries
from qdvol.intersections.correlators import TauIndex, psi2_top_intersection, tau_correlator
from qdvol.recursion.basis import kernel_decomposition
from qdvol.recursion.coefficients import CLOSED, LOCAL, tr_coefficients
from qdvol.recursion.curves import CurveParams, sigma_hat_series
from qdvol.recursion.tables import FTableStore, f_g0, f_g0_residue
from qdvol.utils.exceptions import QdvolError
from qdvol.volumes.asymptotics import LPLUS, VOLUME, asymptotics
from qdvol.volumes.fixed_genus import (
    fixed_genus_polynomials,
    genus_one_polynomials,
    lplus_via_rs,
    volume_via_pq,
)
from qdvol.volumes.hodge import kappa_prime_extract
from qdvol.volumes.polynomials import RationalPolynomial
from qdvol.volumes.segre import (
    carea_lplus_g1_closed,
    carea_principal,
    lplus_principal,
    volume_g1_closed,
    volume_principal,
)

from .constants import SelftestLevels

logger = logging.getLogger(__name__)

F = Fraction

Check = Callable[[FTableStore], bool]


@dataclass(frozen=True)
class SelftestResult:
    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "ok"
        return f"FAILED {self.detail}".strip()


def _printed_tables(store: FTableStore) -> bool:
    expected = {
        (0, 3, (0, 0, 0)): F(1, 2),
        (0, 4, (1, 0, 0, 0)): F(1, 4),
        (1, 1, (1,)): F(1, 48),
        (1, 3, (2, 1, 0)): F(1, 96),
        (2, 1, (3,)): F(-41, 46080),
        (2, 1, (4,)): F(1, 9216),
    }
    return all(store.table(g, n)[indices] == value for (g, n, indices), value in expected.items())


def _sigma_hat(store: FTableStore) -> bool:
    series = sigma_hat_series(30)
    return series[9] == F(-31712, 229635) and series.compose(series).agrees_with(
        TruncatedSeries.monomial(1)
    )


def _kernel(store: FTableStore) -> bool:
    return kernel_decomposition(6) == {
        0: F(17, 72900),
        1: F(-59, 24300),
        2: F(149, 8100),
        3: F(1, 180),
    }


def _f_g0(store: FTableStore) -> bool:
    return f_g0(2, store) == F(-1, 384)


def _genus_one_volumes(upper: int) -> Check:
    def check(store: FTableStore) -> bool:
        return volume_principal(1, 2, store) == PiScalar(F(1, 3), 4) and all(
            volume_principal(1, n, store) == volume_g1_closed(n) for n in range(2, upper + 1)
        )

    return check


def _genus_one_constants(upper: int) -> Check:
    def check(store: FTableStore) -> bool:
        for n in range(2, upper + 1):
            carea, lplus = carea_lplus_g1_closed(n)
            if carea_principal(1, n, store) != carea or lplus_principal(1, n, store) != lplus:
                return False
        return True

    return check


def _genus_two_constants(store: FTableStore) -> bool:
    return carea_principal(2, 0, store) == PiScalar(F(19, 6), -2) and lplus_principal(
        2, 0, store
    ) == F(4, 3)


def _genus_two_polynomials(store: FTableStore) -> bool:
    polynomials = fixed_genus_polynomials(2, store)
    return (
        polynomials.p == F(5, 36)
        and polynomials.q == RationalPolynomial([F(7, 18), F(28, 135)])
        and genus_one_polynomials().p == F(1, 6)
    )


def _out_of_sample(g: int) -> Check:
    def check(store: FTableStore) -> bool:
        polynomials = fixed_genus_polynomials(g, store)
        return all(
            volume_via_pq(g, n, polynomials) == volume_principal(g, n, store)
            and lplus_via_rs(g, n, polynomials) == lplus_principal(g, n, store)
            for n in range(g + 1, g + 5)
        )

    return check


def _kappa_top(g: int) -> Check:
    def check(store: FTableStore) -> bool:
        return kappa_prime_extract(g, store).kappa[g] == psi2_top_intersection(g)

    return check


def _correlators(store: FTableStore) -> bool:
    return tau_correlator(TauIndex(0, (0, 0, 0))) == 1 and tau_correlator(
        TauIndex(1, (1,))
    ) == F(1, 24)


def _coefficient_routes(store: FTableStore) -> bool:
    for a, b in ((-1, 2), (-4, 3)):
        params = CurveParams(F(a), b)
        closed = tr_coefficients(params, 10, CLOSED)
        local = tr_coefficients(params, 10, LOCAL)
        if (closed.t, closed.r, closed.t0_square) != (local.t, local.r, local.t0_square):
            return False
    return True


def _f_g0_routes(store: FTableStore) -> bool:
    return f_g0_residue(3) == f_g0(3, store)


def _asymptotics(store: FTableStore) -> bool:
    for g in (1, 2):
        polynomials = fixed_genus_polynomials(g, store)
        far = asymptotics(g, 300, VOLUME, polynomials)
        near = asymptotics(g, 100, VOLUME, polynomials)
        if abs(far.ratio - 1) >= 0.15 or abs(far.ratio - 1) >= abs(near.ratio - 1):
            return False
    lplus = asymptotics(1, 300, LPLUS, genus_one_polynomials())
    return abs(lplus.ratio - 1) < 0.10


QUICK: List[Tuple[str, Check]] = [
    ("printed F-tables", _printed_tables),
    ("involution series", _sigma_hat),
    ("kernel decomposition", _kernel),
    ("F_2,0", _f_g0),
    ("Witten-Kontsevich base cases", _correlators),
    ("spectral coefficient routes", _coefficient_routes),
    ("genus one volumes", _genus_one_volumes(6)),
    ("genus one Siegel-Veech constants", _genus_one_constants(5)),
    ("genus two Siegel-Veech constants", _genus_two_constants),
    ("genus two polynomials", _genus_two_polynomials),
    ("kappa(2, 2)", _kappa_top(2)),
    ("asymptotics", _asymptotics),
]

FULL: List[Tuple[str, Check]] = QUICK + [
    ("genus one volumes up to 10 poles", _genus_one_volumes(10)),
    ("genus one Siegel-Veech constants up to 8 poles", _genus_one_constants(8)),
    ("F_3,0 routes", _f_g0_routes),
    ("genus two out of sample", _out_of_sample(2)),
    ("genus three out of sample", _out_of_sample(3)),
    ("kappa(3, 3)", _kappa_top(3)),
]


def run_selftest(level: str, store: FTableStore = None) -> List[SelftestResult]:
    store = store or FTableStore()
    checks = FULL if level == SelftestLevels.full else QUICK
    results = []
    for name, check in checks:
        try:
            passed = bool(check(store))
            detail = ""
        except QdvolError as exc:
            passed, detail = False, str(exc)
        if not passed:
            logger.error("Self check %r failed %s", name, detail)
        results.append(SelftestResult(name, passed, detail))
    return results
