"""
Persistent F-table cache.

A single JSON document per curve::

    {
        "schema_version": 1,
        "curve": {"a": "-1", "b": 2},
        "tables": [[g, n], ...],
        "entries": [[g, n, [k_1, ..., k_n], "num", "den"], ...]
    }

Numerators and denominators are decimal strings, so the file round-trips
exactly. Files written for another schema version or curve are ignored, a
file that fails to parse is rejected as a whole.
"""
import json
import logging
import os
import re
import tempfile
import threading
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from django.conf import settings

from qdvol.recursion.basis import FTable
from qdvol.recursion.curves import DEFAULT_CURVE, CurveParams
from qdvol.recursion.tables import FTableStore
from qdvol.utils.exceptions import DomainError, QdvolError

logger = logging.getLogger(__name__)

INTEGER_RE = re.compile(r"^-?\d+$")


class CorruptCacheError(QdvolError):
    pass


def _parse_integer(value, what: str) -> int:
    if not isinstance(value, str) or not INTEGER_RE.match(value):
        raise CorruptCacheError(f"{what} {value!r} is not a decimal integer string")
    return int(value)


def _parse_entry(entry) -> Tuple[Tuple[int, int], Tuple[int, ...], Fraction]:
    if not isinstance(entry, list) or len(entry) != 5:
        raise CorruptCacheError(f"malformed entry {entry!r}")
    g, n, indices, numerator, denominator = entry
    if not all(isinstance(v, int) for v in (g, n)) or not isinstance(indices, list):
        raise CorruptCacheError(f"malformed entry {entry!r}")
    numerator = _parse_integer(numerator, "numerator")
    denominator = _parse_integer(denominator, "denominator")
    if denominator <= 0:
        raise CorruptCacheError(f"invalid denominator {denominator} in entry {entry!r}")
    return (g, n), tuple(indices), Fraction(numerator, denominator)


def encode_tables(tables: List[FTable], curve: CurveParams, schema_version: int) -> dict:
    a, b = curve.fingerprint
    entries = []
    for table in sorted(tables, key=lambda t: (t.g, t.n)):
        for indices, value in table.items():
            entries.append(
                [table.g, table.n, list(indices), str(value.numerator), str(value.denominator)]
            )
    return {
        "schema_version": schema_version,
        "curve": {"a": a, "b": b},
        "tables": sorted([table.g, table.n] for table in tables),
        "entries": entries,
    }


def decode_tables(document) -> List[FTable]:
    """
    Rebuild the tables of a parsed cache document.

    Raises CorruptCacheError when anything in the document is invalid.
    """
    if not isinstance(document, dict):
        raise CorruptCacheError("the cache document is not an object")
    keys = document.get("tables")
    entries = document.get("entries")
    if not isinstance(keys, list) or not isinstance(entries, list):
        raise CorruptCacheError("the cache document lacks tables or entries")

    grouped: Dict[Tuple[int, int], dict] = defaultdict(dict)
    for key in keys:
        if not isinstance(key, list) or len(key) != 2 or not all(isinstance(v, int) for v in key):
            raise CorruptCacheError(f"malformed table key {key!r}")
        grouped.setdefault(tuple(key), {})
    for entry in entries:
        key, indices, value = _parse_entry(entry)
        if key not in grouped:
            raise CorruptCacheError(f"entry {entry!r} belongs to no listed table")
        if indices in grouped[key]:
            raise CorruptCacheError(f"duplicate entry {entry!r}")
        grouped[key][indices] = value

    tables = []
    for (g, n), values in sorted(grouped.items()):
        try:
            table = FTable(g, n, values)
            table.check_degree()
        except (QdvolError, TypeError) as exc:
            raise CorruptCacheError(f"invalid table ({g}, {n}): {exc}")
        tables.append(table)
    return tables


class FTableCache:
    """
    Load and store the F-tables of one curve in ``directory``.

    ``record`` is meant as the ``on_computed`` hook of an FTableStore; every
    recorded table is written out immediately. Writes are serialized and
    atomic (temporary file plus rename).
    """

    def __init__(
        self,
        directory: Optional[str] = None,
        curve: CurveParams = DEFAULT_CURVE,
        schema_version: Optional[int] = None,
    ):
        self.directory = directory or settings.QDVOL_CACHE_DIR
        self.curve = curve
        self.schema_version = schema_version or settings.QDVOL_CACHE_SCHEMA_VERSION
        self._lock = threading.Lock()
        self._tables: Dict[Tuple[int, int], FTable] = {}
        self.writable = True

    def __repr__(self):
        return f"<FTableCache {self.path}>"

    @property
    def path(self) -> str:
        return os.path.join(self.directory, settings.QDVOL_CACHE_FILENAME)

    def load(self) -> List[FTable]:
        if not os.path.exists(self.path):
            logger.debug("no F-table cache at %s", self.path)
            return []

        try:
            with open(self.path, "r") as infile:
                document = json.load(infile)
        except (OSError, ValueError) as exc:
            logger.error("Rejected F-table cache %s: %s", self.path, exc)
            return []

        if not isinstance(document, dict):
            logger.error("Rejected F-table cache %s: not a JSON object", self.path)
            return []

        version = document.get("schema_version")
        if version != self.schema_version:
            logger.warning(
                "Ignoring F-table cache %s: schema version %r, expected %r",
                self.path,
                version,
                self.schema_version,
            )
            return []

        curve = document.get("curve") or {}
        fingerprint = (curve.get("a"), curve.get("b")) if isinstance(curve, dict) else None
        if fingerprint != self.curve.fingerprint:
            logger.warning(
                "Ignoring F-table cache %s: written for curve %r, expected %r",
                self.path,
                fingerprint,
                self.curve.fingerprint,
            )
            return []

        try:
            tables = decode_tables(document)
        except CorruptCacheError as exc:
            logger.error("Rejected F-table cache %s: %s", self.path, exc)
            return []

        with self._lock:
            for table in tables:
                self._tables.setdefault((table.g, table.n), table)
        logger.info("Loaded %d F-tables from %s", len(tables), self.path)
        return tables

    def record(self, table: FTable) -> None:
        with self._lock:
            self._tables[(table.g, table.n)] = table
            self._write()

    def store(self, tables: List[FTable]) -> None:
        with self._lock:
            for table in tables:
                self._tables[(table.g, table.n)] = table
            self._write()

    def _write(self) -> None:
        if not self.writable:
            return
        document = encode_tables(list(self._tables.values()), self.curve, self.schema_version)
        try:
            os.makedirs(self.directory, exist_ok=True)
            handle, tmp_path = tempfile.mkstemp(
                prefix=".ftables-", suffix=".json", dir=self.directory
            )
            with os.fdopen(handle, "w") as outfile:
                json.dump(document, outfile)
            os.replace(tmp_path, self.path)
        except OSError as exc:
            logger.warning("F-table cache %s is not writable, skipping it: %s", self.path, exc)
            self.writable = False
            return
        logger.info("Stored %d F-tables in %s", len(self._tables), self.path)

    def attach(self, store: FTableStore) -> int:
        """
        Preload ``store`` with the cached tables and record everything it
        computes from now on.
        """
        if self.curve != DEFAULT_CURVE:
            raise DomainError(f"F-table stores are built for {DEFAULT_CURVE}, not {self.curve}")
        count = store.preload(self.load())
        store.on_computed = self.record
        return count


def build_store(
    cache_dir: Optional[str] = None, truncation_margin: int = 0, use_cache: bool = True
) -> Tuple[FTableStore, Optional[FTableCache]]:
    store = FTableStore(
        truncation_margin=truncation_margin,
        truncation_step=settings.QDVOL_TRUNCATION_STEP,
    )
    if not use_cache:
        return store, None
    cache = FTableCache(cache_dir)
    cache.attach(store)
    return store, cache
