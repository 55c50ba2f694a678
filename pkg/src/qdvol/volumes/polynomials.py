"""
Polynomials in the number of poles n with exact rational coefficients.
"""
from fractions import Fraction
from typing import Iterable, Tuple

from qdvol.arithmetic.exact import Rational, as_exact
from qdvol.utils.exceptions import InconsistencyError


class RationalPolynomial:
    """
    sum_k c_k n^k, coefficients stored in ascending degree without trailing
    zeros.
    """

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Iterable[Rational] = ()):
        values = [as_exact(c) for c in coefficients]
        while values and not values[-1]:
            values.pop()
        self._coefficients: Tuple[Fraction, ...] = tuple(values)

    @classmethod
    def constant(cls, value: Rational) -> "RationalPolynomial":
        return cls([value])

    @classmethod
    def linear(cls, constant: Rational, slope: Rational) -> "RationalPolynomial":
        return cls([constant, slope])

    @classmethod
    def product_of_linear(cls, factors: Iterable[Tuple[Rational, Rational]]):
        """
        prod (c + s n) over the given (c, s) pairs.
        """
        result = cls.constant(1)
        for constant, slope in factors:
            result = result * cls.linear(constant, slope)
        return result

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coefficients

    @property
    def is_zero(self) -> bool:
        return not self._coefficients

    @property
    def degree(self) -> int:
        """
        -1 for the zero polynomial.
        """
        return len(self._coefficients) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._coefficients:
            return Fraction(0)
        return self._coefficients[-1]

    def __call__(self, n: Rational) -> Fraction:
        n = as_exact(n)
        value = Fraction(0)
        for c in reversed(self._coefficients):
            value = value * n + c
        return value

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial.constant(other)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self._coefficients == other._coefficients

    def __hash__(self):
        return hash(self._coefficients)

    def __repr__(self):
        return f"<RationalPolynomial {self}>"

    def __str__(self):
        if not self._coefficients:
            return "0"
        text = ""
        for k in range(self.degree, -1, -1):
            c = self._coefficients[k]
            if not c:
                continue
            term = str(abs(c)) if text else str(c)
            if k == 1:
                term += "*n"
            elif k > 1:
                term += f"*n^{k}"
            if text:
                text += " - " if c < 0 else " + "
            text += term
        return text

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial.constant(other)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        size = max(len(self._coefficients), len(other._coefficients))
        a = self._coefficients + (Fraction(0),) * (size - len(self._coefficients))
        b = other._coefficients + (Fraction(0),) * (size - len(other._coefficients))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial(-c for c in self._coefficients)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor: Rational) -> "RationalPolynomial":
        factor = as_exact(factor)
        return RationalPolynomial(factor * c for c in self._coefficients)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RationalPolynomial()
        product = [Fraction(0)] * (len(self._coefficients) + len(other._coefficients) - 1)
        for i, a in enumerate(self._coefficients):
            for j, b in enumerate(other._coefficients):
                product[i + j] += a * b
        return RationalPolynomial(product)

    __rmul__ = __mul__

    def divide_linear(self, constant: Rational, slope: Rational) -> "RationalPolynomial":
        """
        Exact division by (constant + slope n); the remainder must vanish.
        """
        constant, slope = as_exact(constant), as_exact(slope)
        if not slope:
            return self.scale(1 / constant)
        # synthetic division at the root n = -constant / slope
        root = -constant / slope
        quotient = []
        carry = Fraction(0)
        for c in reversed(self._coefficients):
            carry = carry * root + c
            quotient.append(carry)
        remainder = quotient.pop() if quotient else Fraction(0)
        if remainder:
            raise InconsistencyError(f"{self} is not divisible by ({constant} + {slope}*n)")
        return RationalPolynomial(reversed(quotient)).scale(1 / slope)
