"""
Dispatch of validated query requests to the computations.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import timedelta
from typing import Callable, Dict, List

from humanize import naturaldelta

from qdvol.recursion.coefficients import tr_coefficients
from qdvol.recursion.curves import CurveParams
from qdvol.recursion.tables import FTableStore, f_g0
from qdvol.utils.exceptions import DomainError
from qdvol.volumes.asymptotics import LPLUS, VOLUME, asymptotics
from qdvol.volumes.fixed_genus import fixed_genus_polynomials
from qdvol.volumes.hodge import theta_prime_extract
from qdvol.volumes.segre import carea_principal, lplus_principal, volume_principal

from .constants import Commands, Quantities
from .formatting import Row
from .query import QueryRequest
from .selftest import run_selftest

logger = logging.getLogger(__name__)
performance_logger = logging.getLogger("performance")

QUANTITIES = {
    Quantities.volume: volume_principal,
    Quantities.carea: carea_principal,
    Quantities.lplus: lplus_principal,
}


def _volume(req: QueryRequest, store: FTableStore) -> List[Row]:
    return [Row("volume", volume_principal(req.g, req.n, store), req.g, req.n)]


def _fcoeff(req: QueryRequest, store: FTableStore) -> List[Row]:
    if req.n == 0:
        value = f_g0(req.g, store)
    else:
        value = store.table(req.g, req.n)[req.indices]
    return [Row("F", value, req.g, req.n)]


def _constants(req: QueryRequest, store: FTableStore) -> List[Row]:
    return [
        Row("carea", carea_principal(req.g, req.n, store), req.g, req.n),
        Row("lplus", lplus_principal(req.g, req.n, store), req.g, req.n),
    ]


def _poly(req: QueryRequest, store: FTableStore) -> List[Row]:
    polynomials = fixed_genus_polynomials(req.g, store)
    rows = [
        Row(name, getattr(polynomials, name), req.g, label=f"_{req.g}(n)")
        for name in ("p", "q", "r", "s")
    ]
    rows.append(Row("m", polynomials.m, req.g, label=f"_{req.g}"))
    rows.append(Row("n", polynomials.n_constant, req.g, label=f"_{req.g}"))
    return rows


def _table_row(quantity: str, g: int, n: int, store: FTableStore) -> Row:
    try:
        value = QUANTITIES[quantity](g, n, store)
    except DomainError as exc:
        if exc.code != "empty_stratum":
            raise
        return Row(quantity, None, g, n, label=f"({g}, {n})", note=f"skipped: {exc}")
    return Row(quantity, value, g, n, label=f"({g}, {n})")


def emit_table(req: QueryRequest, store: FTableStore) -> List[Row]:
    """
    One row per number of poles, in ascending order whatever the number of
    workers. Empty strata are flagged; a range without any non-empty stratum
    is an error.
    """
    poles = req.poles
    if not poles:
        raise DomainError("the range of poles is empty", code="empty_range")

    with ThreadPoolExecutor(max_workers=req.workers) as executor:
        rows = list(
            executor.map(lambda n: _table_row(req.quantity, req.g, n, store), poles)
        )

    if all(row.flagged for row in rows):
        raise DomainError(
            f"every stratum of genus {req.g} with {poles[0]}..{poles[-1]} poles is empty",
            code="empty_stratum",
        )
    return rows


def _asym(req: QueryRequest, store: FTableStore) -> List[Row]:
    polynomials = fixed_genus_polynomials(req.g, store)
    rows = []
    for mode in (VOLUME, LPLUS):
        estimate = asymptotics(req.g, req.n, mode, polynomials)
        rows.extend(
            [
                Row(mode, estimate.constant, req.g, req.n, label=".constant"),
                Row(mode, estimate.pi_exponent, req.g, req.n, label=".pi_exponent"),
                Row(mode, estimate.n_exponent, req.g, req.n, label=".n_exponent"),
                Row(mode, estimate.ratio, req.g, req.n, label=".ratio"),
            ]
        )
    return rows


def _hodge(req: QueryRequest, store: FTableStore) -> List[Row]:
    constants = theta_prime_extract(req.g, store)
    rows = []
    for name in ("kappa", "kappa_prime", "theta", "theta_prime"):
        for i, value in enumerate(getattr(constants, name)):
            rows.append(Row(name, value, req.g, label=f"({req.g}, {i})"))
    return rows


def _coefficients(req: QueryRequest, store: FTableStore) -> List[Row]:
    result = tr_coefficients(CurveParams(req.a, req.b), req.d_max, req.route)
    rows = [Row("T0^2", result.t0_square)]
    for d in range(1, result.d_max + 1):
        rows.append(Row("t", result.t_coefficient(d), label=f"_{d}"))
        rows.append(Row("r", result.r_coefficient(d), label=f"_{d}"))
    return rows


def _selftest(req: QueryRequest, store: FTableStore) -> List[Row]:
    return [
        Row("check", None, label=f"[{result.name}]", note=result.status)
        for result in run_selftest(req.level, store)
    ]


HANDLERS: Dict[str, Callable[[QueryRequest, FTableStore], List[Row]]] = {
    Commands.volume: _volume,
    Commands.fcoeff: _fcoeff,
    Commands.constants: _constants,
    Commands.poly: _poly,
    Commands.table: emit_table,
    Commands.asym: _asym,
    Commands.selftest: _selftest,
    Commands.hodge: _hodge,
    Commands.coefficients: _coefficients,
}


def run_query(req: QueryRequest, store: FTableStore = None) -> List[Row]:
    """
    Run a validated request and return its result rows.
    """
    store = store or FTableStore(truncation_margin=req.truncation_margin)
    start = time.monotonic()
    rows = HANDLERS[req.command](req, store)
    performance_logger.info(
        "%s query answered in %s (%d F-tables computed)",
        req.command,
        naturaldelta(timedelta(seconds=time.monotonic() - start)),
        store.computed_count,
    )
    return rows
