"""
The basis of 1-forms Xi_k of the (-1, 2) curve and decompositions on it.

Xi_0 = 1/t^2 and Xi_k = -d/dt (Xi_{k-1} (t - 1) / (-t)). Xi_k has poles of
orders k + 2, ..., 2k + 2 and top coefficient (2k + 1)!!, so peeling from the
highest pole downwards is unique.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Tuple

from qdvol.arithmetic.exact import Rational, as_exact, double_factorial
from qdvol.arithmetic.laurent import Amplitude, LaurentPoly
from qdvol.utils.exceptions import DecompositionError, DomainError, InconsistencyError

from .curves import DEFAULT_CURVE, spectral_curve

logger = logging.getLogger(__name__)

IndexTuple = Tuple[int, ...]


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


def check_stable(g: int, n: int) -> None:
    if not is_stable(g, n):
        raise DomainError(f"(g, n) = ({g}, {n}) is not stable", code="unstable")


def max_degree(g: int, n: int) -> int:
    """
    Entries F_{g,n}[k] vanish when k_1 + ... + k_n exceeds this.
    """
    return 3 * g - 3 + n


def canonical_indices(indices) -> IndexTuple:
    return tuple(sorted(indices, reverse=True))


@lru_cache(maxsize=None)
def xi_basis(k: int) -> LaurentPoly:
    if k < 0:
        raise DomainError(f"the basis has no element of index {k}")
    if k == 0:
        return LaurentPoly({-2: 1})
    # -1/(dx/dt) = (t - 1)/t = 1/t - 1 on the (-1, 2) curve
    return -(xi_basis(k - 1) * LaurentPoly({-1: 1, 0: -1})).derivative()


def _peel_first(terms: Dict[IndexTuple, Fraction]) -> Dict[int, Dict[IndexTuple, Fraction]]:
    """
    Write sum c_e t_1^{e_1} ... as sum_k Xi_k(t_1) C_k(t_2, ...).
    """
    remaining = dict(terms)
    parts: Dict[int, Dict[IndexTuple, Fraction]] = {}
    while remaining:
        top = min(exponents[0] for exponents in remaining)
        pole = -top
        if pole < 2:
            raise DecompositionError(
                f"nonzero remainder with pole order {pole} after peeling"
            )
        if pole % 2:
            raise DecompositionError(f"odd top pole order {pole}")
        k = (pole - 2) // 2
        scale = 1 / double_factorial(2 * k + 1)
        leading = {
            exponents[1:]: coefficient * scale
            for exponents, coefficient in remaining.items()
            if exponents[0] == top
        }
        parts[k] = leading
        for exponent, xi_coefficient in xi_basis(k).terms.items():
            for rest, coefficient in leading.items():
                key = (exponent,) + rest
                value = remaining.get(key, 0) - xi_coefficient * coefficient
                if value:
                    remaining[key] = value
                else:
                    remaining.pop(key, None)
    return parts


def peel_polynomial(poly: LaurentPoly) -> Dict[int, Fraction]:
    """
    The coefficients of ``poly`` on Xi_0, Xi_1, ...
    """
    parts = _peel_first({(exponent,): c for exponent, c in poly.terms.items()})
    return {k: part[()] for k, part in parts.items() if part.get(())}


def _decompose(terms: Dict[IndexTuple, Fraction], arity: int) -> Dict[IndexTuple, Fraction]:
    if arity == 0:
        value = terms.get((), 0)
        return {(): value} if value else {}
    result = {}
    for k, rest_terms in _peel_first(terms).items():
        for indices, coefficient in _decompose(rest_terms, arity - 1).items():
            result[(k,) + indices] = coefficient
    return result


def decompose_amplitude(w: Amplitude) -> Dict[IndexTuple, Fraction]:
    """
    Multilinear decomposition on products Xi_{k_1}(t_1) ... Xi_{k_n}(t_n).
    """
    return _decompose(dict(w.terms), w.arity)


def kernel_decomposition(j: int) -> Dict[int, Fraction]:
    """
    The Xi-coefficients of the kernel coefficient K_j of the (-1, 2) curve.
    """
    curve = spectral_curve(DEFAULT_CURVE, max(j + 3, 4))
    return peel_polynomial(curve.kernel_coefficient(j))


class FTable:
    """
    F_{g,n}[k_1, ..., k_n], keyed by non-increasing index tuples.

    Missing entries are zero.
    """

    __slots__ = ("g", "n", "_entries")

    def __init__(self, g: int, n: int, entries: Mapping[IndexTuple, Rational] = None):
        self.g = g
        self.n = n
        cleaned = {}
        for indices, value in (entries or {}).items():
            indices = tuple(indices)
            if len(indices) != n or any(k < 0 for k in indices):
                raise DomainError(f"invalid index tuple {indices} for F_{g},{n}")
            if indices != canonical_indices(indices):
                raise DomainError(f"index tuple {indices} is not sorted")
            value = as_exact(value)
            if value:
                cleaned[indices] = value
        self._entries = cleaned

    @classmethod
    def from_coefficients(
        cls, g: int, n: int, coefficients: Mapping[IndexTuple, Fraction]
    ) -> "FTable":
        """
        Build a table from a full (unsorted) decomposition, which has to be
        symmetric under permutation of the indices.
        """
        entries = {}
        for indices, value in coefficients.items():
            for permuted in set(permutations(indices)):
                if coefficients.get(permuted, 0) != value:
                    raise DecompositionError(
                        f"F_{g},{n} is not symmetric: {indices} and {permuted} differ"
                    )
            entries[canonical_indices(indices)] = value
        return cls(g, n, entries)

    @property
    def entries(self):
        return MappingProxyType(self._entries)

    def __repr__(self):
        return f"<FTable ({self.g}, {self.n}) entries={len(self._entries)}>"

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        if not isinstance(other, FTable):
            return NotImplemented
        return (self.g, self.n, self._entries) == (other.g, other.n, other._entries)

    def __hash__(self):
        return hash((self.g, self.n, frozenset(self._entries.items())))

    def __getitem__(self, indices) -> Fraction:
        indices = tuple(indices)
        if len(indices) != self.n:
            raise DomainError(f"F_{self.g},{self.n} takes {self.n} indices")
        return self._entries.get(canonical_indices(indices), Fraction(0))

    get = __getitem__

    def items(self) -> Iterator[Tuple[IndexTuple, Fraction]]:
        return iter(sorted(self._entries.items()))

    @property
    def zero_entry(self) -> Fraction:
        return self[(0,) * self.n]

    def check_degree(self) -> None:
        bound = max_degree(self.g, self.n)
        for indices in self._entries:
            if sum(indices) > bound:
                raise InconsistencyError(
                    f"F_{self.g},{self.n}{list(indices)} is nonzero beyond degree {bound}"
                )

    def to_amplitude(self) -> Amplitude:
        """
        Expand back to sum F[k] Xi_{k_1}(t_1) ... Xi_{k_n}(t_n).
        """
        terms: Dict[IndexTuple, Fraction] = {}
        for indices, value in self._entries.items():
            for permuted in set(permutations(indices)):
                partial = {(): value}
                for k in permuted:
                    partial = {
                        exponents + (e,): c * xc
                        for exponents, c in partial.items()
                        for e, xc in xi_basis(k).terms.items()
                    }
                for exponents, c in partial.items():
                    terms[exponents] = terms.get(exponents, 0) + c
        return Amplitude(self.n, terms)
