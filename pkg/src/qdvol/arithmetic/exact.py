"""
Exact rational scalars and the combinatorial kernels used throughout.

:class:`fractions.Fraction` is the universal coefficient type: it is kept in
lowest terms with a positive denominator after every operation.
"""
import logging
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

from qdvol.utils.exceptions import DomainError, MixedPiPowerError

logger = logging.getLogger(__name__)

ExactScalar = Fraction

Rational = Union[int, Fraction]


def as_exact(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"{value!r} is not an exact rational")


def rational_sqrt(value: Rational) -> Fraction:
    """
    Return the rational square root of ``value``, which must be a perfect square.
    """
    value = as_exact(value)
    if value < 0:
        raise DomainError(f"{value} has no rational square root")
    num, den = value.numerator, value.denominator
    rnum, rden = math.isqrt(num), math.isqrt(den)
    if rnum * rnum != num or rden * rden != den:
        raise DomainError(f"{value} is not the square of a rational number")
    return Fraction(rnum, rden)


def factorial(n: int) -> int:
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """
    Binomial coefficient C(n, k) for any integer ``n`` and ``k >= 0``.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # C(n, k) = (-1)^k C(k - n - 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)


def double_factorial(k: int) -> Fraction:
    """
    k!! with the conventions (-1)!! = 1 and (-3)!! = -1.
    """
    if k == -1:
        return Fraction(1)
    if k == -3:
        return Fraction(-1)
    if k < 0:
        raise DomainError(f"double factorial undefined at {k}")
    result = 1
    for factor in range(k, 0, -2):
        result *= factor
    return Fraction(result)


def double_factorial_ratio(top: int, bottom: int) -> Fraction:
    return double_factorial(top) / double_factorial(bottom)


def gamma_k(k: int) -> Fraction:
    """
    The central binomial weight 4^{-k} C(2k, k).
    """
    if k < 0:
        raise DomainError(f"gamma_k undefined at {k}")
    return Fraction(math.comb(2 * k, k), 4 ** k)


class BernoulliTable:
    """
    Bernoulli numbers B_n = B_n(0) (so B_1 = -1/2), memoized up to the largest
    index requested so far.

    Uses the Akiyama-Tanigawa triangle, which produces the B_1 = +1/2 variant;
    the sign of B_1 is flipped on the way out.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._values: List[Fraction] = []

    def __len__(self):
        return len(self._values)

    def _extend(self, n: int) -> None:
        with self._lock:
            if n < len(self._values):
                return
            start = len(self._values)
            row = [Fraction(0)] * (n + 1)
            values = list(self._values)
            # the triangle has to be replayed from scratch, it keeps no state
            for m in range(n + 1):
                row[m] = Fraction(1, m + 1)
                for j in range(m, 0, -1):
                    row[j - 1] = j * (row[j - 1] - row[j])
                if m >= start:
                    values.append(-row[0] if m == 1 else row[0])
            self._values = values
            logger.debug("Bernoulli numbers extended to index %d", n)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            raise DomainError(f"Bernoulli number undefined at {n}")
        values = self._values
        if n >= len(values):
            self._extend(n)
            values = self._values
        return values[n]


bernoulli_table = BernoulliTable()


def bernoulli_number(n: int) -> Fraction:
    return bernoulli_table[n]


def bernoulli_polynomial(n: int, x: Rational) -> Fraction:
    """
    B_n(x) from the generating series t e^{tx} / (e^t - 1).
    """
    if n < 0:
        raise DomainError(f"Bernoulli polynomial undefined at degree {n}")
    x = as_exact(x)
    return sum(
        (binomial(n, k) * bernoulli_table[k] * x ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )


@dataclass(frozen=True)
class PiScalar:
    """
    The exact value coefficient * pi^pi_power.
    """

    coefficient: Fraction
    pi_power: int = 0

    def __post_init__(self):
        coefficient = as_exact(self.coefficient)
        object.__setattr__(self, "coefficient", coefficient)
        if coefficient == 0:
            object.__setattr__(self, "pi_power", 0)

    @classmethod
    def from_i_pi_power(cls, coefficient: Rational, power: int) -> "PiScalar":
        """
        Fold (i pi)^power into a rational sign; only even powers are real.
        """
        if power % 2:
            raise DomainError(f"(i pi)^{power} is not real")
        sign = -1 if (power // 2) % 2 else 1
        return cls(sign * as_exact(coefficient), power)

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    def _coerce(self, other) -> "PiScalar":
        if isinstance(other, PiScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return PiScalar(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.pi_power != other.pi_power:
            raise MixedPiPowerError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms"
            )
        return PiScalar(self.coefficient + other.coefficient, self.pi_power)

    __radd__ = __add__

    def __neg__(self):
        return PiScalar(-self.coefficient, self.pi_power)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PiScalar(
            self.coefficient * other.coefficient, self.pi_power + other.pi_power
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by a zero PiScalar")
        return PiScalar(
            self.coefficient / other.coefficient, self.pi_power - other.pi_power
        )

    def __float__(self) -> float:
        return float(self.coefficient) * math.pi ** self.pi_power

    def __str__(self) -> str:
        c = self.coefficient
        return f"{c.numerator}/{c.denominator} * pi^{self.pi_power}"
