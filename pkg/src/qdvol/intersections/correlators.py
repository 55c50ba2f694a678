"""
Intersection numbers of psi-classes on the moduli spaces of stable curves,

    <tau_{d_1} ... tau_{d_n}>_g = int psi_1^{d_1} ... psi_n^{d_n},

computed with the Virasoro (DVV) recursion from <tau_0^3>_0 = 1 and
<tau_1>_1 = 1/24.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

from qdvol.arithmetic.exact import double_factorial, factorial
from qdvol.utils.exceptions import DomainError
from qdvol.utils.memo import KeyedMemo

logger = logging.getLogger(__name__)

STRING = "string"
DILATON = "dilaton"

Key = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class TauIndex:
    """
    A correlator <tau_{d_1} ... tau_{d_n}>_g; indices are kept sorted in
    decreasing order.
    """

    g: int
    indices: Tuple[int, ...]

    def __post_init__(self):
        if isinstance(self.g, bool) or not isinstance(self.g, int) or self.g < 0:
            raise DomainError(f"genus must be a non-negative integer, got {self.g!r}")
        indices = tuple(self.indices)
        for d in indices:
            if isinstance(d, bool) or not isinstance(d, int) or d < 0:
                raise DomainError(f"psi exponents must be non-negative integers, got {d!r}")
        object.__setattr__(self, "indices", tuple(sorted(indices, reverse=True)))

    def __str__(self):
        body = " ".join(f"tau_{d}" for d in self.indices)
        return f"<{body}>_{self.g}"

    @property
    def n(self) -> int:
        return len(self.indices)

    @property
    def is_stable(self) -> bool:
        return 2 * self.g - 2 + self.n > 0

    @property
    def has_dimension(self) -> bool:
        return sum(self.indices) == 3 * self.g - 3 + self.n

    @property
    def key(self) -> Key:
        return (self.g, self.indices)


_correlators = KeyedMemo("tau correlators")


def tau_correlator(idx: TauIndex) -> Fraction:
    if not idx.is_stable:
        raise DomainError(f"{idx} is not a stable correlator", code="unstable")
    return _correlator(idx.g, idx.indices)


def _correlator(g: int, indices: Tuple[int, ...]) -> Fraction:
    n = len(indices)
    if g < 0 or 2 * g - 2 + n <= 0:
        return Fraction(0)
    if sum(indices) != 3 * g - 3 + n:
        return Fraction(0)
    if (g, indices) == (0, (0, 0, 0)):
        return Fraction(1)
    if (g, indices) == (1, (1,)):
        return Fraction(1, 24)
    return _correlators.get_or_compute((g, indices), lambda: _virasoro(g, indices))


def _sorted(indices) -> Tuple[int, ...]:
    return tuple(sorted(indices, reverse=True))


def _virasoro(g: int, indices: Tuple[int, ...]) -> Fraction:
    # the largest index plays tau_{k+1}; outside the two base cases it is >= 1
    k = indices[0] - 1
    rest = indices[1:]
    total = Fraction(0)

    for j, d in enumerate(rest):
        others = rest[:j] + rest[j + 1 :]
        weight = double_factorial(2 * k + 2 * d + 1) / double_factorial(2 * d - 1)
        total += weight * _correlator(g, _sorted((k + d,) + others))

    splittings = Fraction(0)
    for r in range(k):
        s = k - 1 - r
        weight = double_factorial(2 * r + 1) * double_factorial(2 * s + 1)
        value = _correlator(g - 1, _sorted((r, s) + rest))
        positions = range(len(rest))
        for h in range(g + 1):
            for size in range(len(rest) + 1):
                for chosen in combinations(positions, size):
                    first = tuple(rest[p] for p in chosen)
                    second = tuple(rest[p] for p in positions if p not in chosen)
                    value += _correlator(h, _sorted((r,) + first)) * _correlator(
                        g - h, _sorted((s,) + second)
                    )
        splittings += weight * value
    total += splittings / 2

    return total / double_factorial(2 * k + 3)


def string_dilaton_reduce(idx: TauIndex, mode: str = None) -> List[Tuple[Fraction, TauIndex]]:
    """
    Remove a tau_0 (string equation) or a tau_1 (dilaton equation).

    Returns the linear combination [(coefficient, correlator), ...] the
    correlator equals. Without ``mode`` the string equation is preferred.
    """
    if mode is None:
        mode = STRING if 0 in idx.indices else DILATON
    if mode not in (STRING, DILATON):
        raise DomainError(f"unknown reduction {mode!r}")

    removed = 0 if mode == STRING else 1
    if removed not in idx.indices:
        raise DomainError(f"{idx} has no tau_{removed} to remove", code="irreducible")
    if 2 * idx.g - 3 + idx.n <= 0:
        raise DomainError(f"{idx} reduces to an unstable correlator", code="unstable")

    position = idx.indices.index(removed)
    rest = idx.indices[:position] + idx.indices[position + 1 :]
    if mode == DILATON:
        return [(Fraction(2 * idx.g - 2 + len(rest)), TauIndex(idx.g, rest))]

    combination = []
    for j, d in enumerate(rest):
        if d == 0:
            continue
        lowered = rest[:j] + (d - 1,) + rest[j + 1 :]
        combination.append((Fraction(1), TauIndex(idx.g, lowered)))
    return combination


def evaluate_combination(combination: List[Tuple[Fraction, TauIndex]]) -> Fraction:
    return sum((c * tau_correlator(idx) for c, idx in combination), Fraction(0))


def psi2_top_intersection(g: int) -> Fraction:
    """
    int psi_1^2 ... psi_{3g-3}^2 over the moduli space of genus g curves with
    3g - 3 points.
    """
    if g < 2:
        raise DomainError(f"the psi^2 top intersection needs g >= 2, got {g}")
    return tau_correlator(TauIndex(g, (2,) * (3 * g - 3)))


def kappa_lemma_shift(g: int, i: int, n: int) -> Fraction:
    """
    The factor relating the n-point integrals kappa(g, i)_n to kappa(g, i).
    """
    if g < 2 or not 0 <= i <= g or n < 0:
        raise DomainError(f"kappa shift undefined at g={g}, i={i}, n={n}")
    return Fraction(
        factorial(2 * g - 3 + n + i), factorial(2 * g - 3 + i)
    ) * (
        double_factorial(4 * g - 7 + 2 * n + i) / double_factorial(4 * g - 7 + i)
    )


def kappa_free_integral(g: int, n: int) -> Fraction:
    """
    <tau_0^n tau_2^{3g-3+n}>_g, the lambda-free instance kappa(g, g)_n.
    """
    return tau_correlator(TauIndex(g, (2,) * (3 * g - 3 + n) + (0,) * n))
