"""
Finite principal-part Laurent polynomials and multivariate amplitudes.
"""
from fractions import Fraction
from itertools import permutations
from types import MappingProxyType
from typing import Dict, Iterable, Optional, Tuple

from qdvol.utils.exceptions import DomainError

from .exact import Rational, as_exact
from .series import TruncatedSeries


class LaurentPoly:
    """
    A finite sum of c_e t^e with e <= 0.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Dict[int, Rational]] = None):
        cleaned = {}
        for exponent, coefficient in (terms or {}).items():
            if exponent > 0:
                raise DomainError(f"positive exponent {exponent} in a pole-part polynomial")
            coefficient = as_exact(coefficient)
            if coefficient:
                cleaned[exponent] = coefficient
        self._terms = cleaned

    @classmethod
    def monomial(cls, exponent: int, coefficient: Rational = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def pole_order(self) -> int:
        """
        Highest pole order, 0 for constants and for the zero polynomial.
        """
        return -min(self._terms, default=0)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def items(self):
        return sorted(self._terms.items())

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        body = " + ".join(f"({c})*t^{e}" for e, c in self.items()) or "0"
        return f"<LaurentPoly {body}>"

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coefficient
        return LaurentPoly(terms)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor: Rational) -> "LaurentPoly":
        factor = as_exact(factor)
        return LaurentPoly({e: factor * c for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        terms: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({e - 1: e * c for e, c in self._terms.items() if e})

    def to_series(self, order: Optional[int] = None) -> TruncatedSeries:
        return TruncatedSeries.from_terms(self._terms, order=order)


class Amplitude:
    """
    A multivariate Laurent polynomial in 1/t_1, ..., 1/t_n stored as a sparse
    map from exponent tuples to coefficients.

    Amplitudes are stored as computed; symmetry is checked by
    :meth:`is_symmetric`, not enforced.
    """

    __slots__ = ("arity", "_terms")

    def __init__(self, arity: int, terms: Optional[Dict[Tuple[int, ...], Rational]] = None):
        self.arity = arity
        cleaned = {}
        for exponents, coefficient in (terms or {}).items():
            exponents = tuple(exponents)
            if len(exponents) != arity:
                raise DomainError(
                    f"exponent tuple {exponents} does not match arity {arity}"
                )
            coefficient = as_exact(coefficient)
            if coefficient:
                cleaned[exponents] = coefficient
        self._terms = cleaned

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coefficient(self, exponents: Iterable[int]) -> Fraction:
        exponents = tuple(exponents)
        if len(exponents) != self.arity:
            raise DomainError(
                f"exponent tuple {exponents} does not match arity {self.arity}"
            )
        return self._terms.get(exponents, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Amplitude):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash((self.arity, frozenset(self._terms.items())))

    def __repr__(self):
        return f"<Amplitude arity={self.arity} terms={len(self._terms)}>"

    def __add__(self, other):
        if not isinstance(other, Amplitude) or other.arity != self.arity:
            return NotImplemented
        terms = dict(self._terms)
        for exponents, coefficient in other._terms.items():
            terms[exponents] = terms.get(exponents, 0) + coefficient
        return Amplitude(self.arity, terms)

    def scale(self, factor: Rational) -> "Amplitude":
        factor = as_exact(factor)
        return Amplitude(self.arity, {e: factor * c for e, c in self._terms.items()})

    def permuted(self, permutation: Tuple[int, ...]) -> "Amplitude":
        """
        The amplitude with variable ``i`` renamed to ``permutation[i]``.
        """
        terms = {}
        for exponents, coefficient in self._terms.items():
            moved = [0] * self.arity
            for index, exponent in enumerate(exponents):
                moved[permutation[index]] = exponent
            terms[tuple(moved)] = coefficient
        return Amplitude(self.arity, terms)

    def is_symmetric(self) -> bool:
        for exponents, coefficient in self._terms.items():
            for other in set(permutations(exponents)):
                if self._terms.get(other) != coefficient:
                    return False
        return True

    def pole_orders(self) -> Tuple[int, ...]:
        orders = [0] * self.arity
        for exponents in self._terms:
            for index, exponent in enumerate(exponents):
                orders[index] = max(orders[index], -exponent)
        return tuple(orders)

    def slices(self) -> Dict[Tuple[int, ...], LaurentPoly]:
        """
        Group terms by the exponents of variables 2..n; values are polynomials
        in the first variable.
        """
        grouped: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
        for exponents, coefficient in self._terms.items():
            grouped.setdefault(exponents[1:], {})[exponents[0]] = coefficient
        return {rest: LaurentPoly(terms) for rest, terms in grouped.items()}


def amplitude_coefficient(w: Amplitude, exponents: Iterable[int]) -> Fraction:
    return w.coefficient(exponents)
