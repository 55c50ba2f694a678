"""
Truncated formal Laurent series in one variable with exact coefficients.

A series carries the exclusive exponent ``order`` below which its coefficients
are trusted; ``None`` means the series is exact (a finite Laurent polynomial).
Every operation computes the tightest order it can guarantee, and reading a
coefficient at or beyond the order raises :class:`TruncationError`.
"""
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from qdvol.utils.exceptions import DomainError, TruncationError

from .exact import Rational, as_exact, rational_sqrt


def _min_order(*orders: Optional[int]) -> Optional[int]:
    known = [order for order in orders if order is not None]
    return min(known) if known else None


class TruncatedSeries:
    __slots__ = ("_offset", "_coefficients", "_order")

    def __init__(self, coefficients=(), offset: int = 0, order: Optional[int] = None):
        self._set([as_exact(c) for c in coefficients], offset, order)

    @classmethod
    def _raw(cls, coefficients: list, offset: int, order: Optional[int]):
        series = cls.__new__(cls)
        series._set(coefficients, offset, order)
        return series

    def _set(self, coefficients: list, offset: int, order: Optional[int]) -> None:
        end = len(coefficients)
        if order is not None:
            end = min(end, max(0, order - offset))
        start = 0
        while start < end and not coefficients[start]:
            start += 1
        while end > start and not coefficients[end - 1]:
            end -= 1
        self._coefficients = tuple(coefficients[start:end])
        self._offset = offset + start if end > start else 0
        self._order = order

    # constructors

    @classmethod
    def zero(cls, order: Optional[int] = None) -> "TruncatedSeries":
        return cls._raw([], 0, order)

    @classmethod
    def monomial(
        cls, exponent: int, coefficient: Rational = 1, order: Optional[int] = None
    ) -> "TruncatedSeries":
        return cls._raw([as_exact(coefficient)], exponent, order)

    @classmethod
    def from_terms(cls, terms: dict, order: Optional[int] = None) -> "TruncatedSeries":
        if not terms:
            return cls.zero(order)
        low, high = min(terms), max(terms)
        coefficients = [Fraction(0)] * (high - low + 1)
        for exponent, coefficient in terms.items():
            coefficients[exponent - low] = as_exact(coefficient)
        return cls._raw(coefficients, low, order)

    # inspection

    @property
    def order(self) -> Optional[int]:
        return self._order

    @property
    def is_zero(self) -> bool:
        return not self._coefficients

    @property
    def valuation(self) -> Optional[int]:
        return self._offset if self._coefficients else None

    @property
    def top_exponent(self) -> Optional[int]:
        if not self._coefficients:
            return None
        return self._offset + len(self._coefficients) - 1

    def _low(self) -> Optional[int]:
        # lowest exponent that can carry a nonzero coefficient
        if self._coefficients:
            return self._offset
        return self._order

    def coefficient(self, exponent: int) -> Fraction:
        if self._order is not None and exponent >= self._order:
            raise TruncationError(exponent, self._order)
        index = exponent - self._offset
        if 0 <= index < len(self._coefficients):
            return Fraction(self._coefficients[index])
        return Fraction(0)

    __getitem__ = coefficient

    def items(self) -> Iterator[Tuple[int, Fraction]]:
        for index, value in enumerate(self._coefficients):
            if value:
                yield self._offset + index, Fraction(value)

    def terms(self) -> dict:
        return dict(self.items())

    def residue(self) -> Fraction:
        """
        The coefficient of t^{-1}.
        """
        return self.coefficient(-1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self._order == other._order
            and self._offset == other._offset
            and self._coefficients == other._coefficients
        )

    def __hash__(self):
        return hash((self._order, self._offset, self._coefficients))

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*t^{e}" for e, c in self.items()) or "0"
        tail = "" if self._order is None else f" + O(t^{self._order})"
        return f"<TruncatedSeries {body}{tail}>"

    def truncate(self, order: Optional[int]) -> "TruncatedSeries":
        order = _min_order(self._order, order)
        if order == self._order:
            return self
        return self._raw(list(self._coefficients), self._offset, order)

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """
        Whether both series agree on their common range of trusted exponents.
        """
        order = _min_order(self._order, other._order)
        a, b = self.truncate(order), other.truncate(order)
        return a._offset == b._offset and a._coefficients == b._coefficients

    # arithmetic

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return self.monomial(0, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = _min_order(self._order, other._order)
        if other.is_zero:
            return self.truncate(order)
        if self.is_zero:
            return other.truncate(order)
        low = min(self._offset, other._offset)
        high = max(self.top_exponent, other.top_exponent)
        coefficients = [0] * (high - low + 1)
        for index, value in enumerate(self._coefficients):
            coefficients[self._offset - low + index] += value
        for index, value in enumerate(other._coefficients):
            coefficients[other._offset - low + index] += value
        return self._raw(coefficients, low, order)

    __radd__ = __add__

    def __neg__(self):
        return self._raw([-c for c in self._coefficients], self._offset, self._order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor: Rational) -> "TruncatedSeries":
        factor = as_exact(factor)
        if not factor:
            return self.zero(self._order)
        return self._raw(
            [factor * c for c in self._coefficients], self._offset, self._order
        )

    def shift(self, exponent: int) -> "TruncatedSeries":
        """
        Multiply by t^exponent.
        """
        order = None if self._order is None else self._order + exponent
        return self._raw(list(self._coefficients), self._offset + exponent, order)

    def mul(self, other: "TruncatedSeries", order: Optional[int] = None):
        """
        Product, optionally capped at ``order``.
        """
        low_a, low_b = self._low(), other._low()
        if low_a is None or low_b is None:
            # one factor is exactly zero
            return self.zero()
        bounds = [order]
        if self._order is not None:
            bounds.append(self._order + low_b)
        if other._order is not None:
            bounds.append(other._order + low_a)
        result_order = _min_order(*bounds)
        if self.is_zero or other.is_zero:
            return self.zero(result_order)

        a, b = self._coefficients, other._coefficients
        offset = self._offset + other._offset
        size = len(a) + len(b) - 1
        if result_order is not None:
            size = min(size, result_order - offset)
        if size <= 0:
            return self.zero(result_order)
        product: List = [0] * size
        len_b = len(b)
        for i, ai in enumerate(a):
            if i >= size:
                break
            if not ai:
                continue
            for j in range(min(len_b, size - i)):
                bj = b[j]
                if bj:
                    product[i + j] += ai * bj
        return self._raw(product, offset, result_order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.mul(other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.monomial(0, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def inverse(self, order: Optional[int] = None) -> "TruncatedSeries":
        if self.is_zero:
            raise DomainError("division by the zero series")
        v = self._offset
        a = self._coefficients
        relative = None if self._order is None else self._order - v
        if order is not None:
            relative = _min_order(relative, order + v)
        if relative is None:
            raise DomainError("the inverse of an exact series needs an explicit order")
        inverse_lead = 1 / Fraction(a[0])
        out: List = []
        for k in range(max(relative, 0)):
            if k == 0:
                out.append(inverse_lead)
                continue
            total = 0
            for j in range(1, min(k, len(a) - 1) + 1):
                if a[j]:
                    total += a[j] * out[k - j]
            out.append(-total * inverse_lead)
        return self._raw(out, -v, -v + relative)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DomainError("division by zero")
            return self.scale(1 / as_exact(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.div(other)

    def div(self, other: "TruncatedSeries", order: Optional[int] = None):
        if other.is_zero:
            raise DomainError("division by the zero series")
        low = self._low()
        if low is None:
            return self.zero()
        cap = None
        if other._order is None:
            target = _min_order(
                order, None if self._order is None else self._order - other._offset
            )
            if target is None:
                raise DomainError("the quotient of exact series needs an explicit order")
            cap = target - low
        return self.mul(other.inverse(order=cap), order=order)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other.div(self)

    def derivative(self) -> "TruncatedSeries":
        coefficients = [
            (self._offset + index) * value
            for index, value in enumerate(self._coefficients)
        ]
        order = None if self._order is None else self._order - 1
        return self._raw(coefficients, self._offset - 1, order)

    def sqrt(self, order: Optional[int] = None) -> "TruncatedSeries":
        """
        Square root with positive leading coefficient.
        """
        if self.is_zero:
            raise DomainError("square root of the zero series")
        v = self._offset
        if v % 2:
            raise DomainError(f"square root of a series of odd valuation {v}")
        lead = rational_sqrt(self._coefficients[0])
        relative = None if self._order is None else self._order - v
        if order is not None:
            relative = _min_order(relative, order - v // 2)
        if relative is None:
            raise DomainError("the square root of an exact series needs an explicit order")
        unit = [c / self._coefficients[0] for c in self._coefficients]
        root: List = []
        for k in range(max(relative, 0)):
            if k == 0:
                root.append(Fraction(1))
                continue
            total = unit[k] if k < len(unit) else 0
            for j in range(1, k):
                total -= root[j] * root[k - j]
            root.append(total / 2)
        return self._raw([lead * c for c in root], v // 2, v // 2 + relative)

    def log(self, order: Optional[int] = None) -> "TruncatedSeries":
        if self.valuation != 0 or self._coefficients[0] != 1:
            raise DomainError("log requires a series with constant term 1")
        relative = _min_order(self._order, order)
        if relative is None:
            raise DomainError("the log of an exact series needs an explicit order")
        a = self._coefficients
        out: List = [Fraction(0)]
        for k in range(1, relative):
            total = k * a[k] if k < len(a) else 0
            for j in range(1, k):
                if k - j < len(a) and a[k - j]:
                    total -= j * out[j] * a[k - j]
            out.append(Fraction(total) / k)
        return self._raw(out, 0, relative)

    def exp(self, order: Optional[int] = None) -> "TruncatedSeries":
        low = self._low()
        if low is not None and low < 1:
            raise DomainError("exp requires a series without constant term")
        relative = _min_order(self._order, order)
        if relative is None:
            raise DomainError("the exp of an exact series needs an explicit order")
        w = {e: c for e, c in self.items()}
        out: List = [Fraction(1)]
        for k in range(1, relative):
            total = 0
            for j in range(1, k + 1):
                if j in w:
                    total += j * w[j] * out[k - j]
            out.append(Fraction(total) / k)
        return self._raw(out, 0, relative)

    def compose(self, inner: "TruncatedSeries", order: Optional[int] = None):
        """
        Substitute ``inner`` (of positive valuation) for the variable.
        """
        v = inner.valuation
        if v is None or v < 1:
            raise DomainError("composition requires an inner series of positive valuation")
        bound = _min_order(order, None if self._order is None else self._order * v)
        result = self.zero()
        if self.is_zero:
            return result.truncate(bound)

        positive = {e: c for e, c in self.items() if e >= 0}
        negative = {-e: c for e, c in self.items() if e < 0}

        if positive:
            top = max(positive)
            acc = self.monomial(0, positive[top])
            for e in range(top - 1, -1, -1):
                acc = acc.mul(inner, order=bound) + positive.get(e, 0)
            result = result + acc

        if negative:
            depth = max(negative)
            reciprocal = inner.inverse(
                order=None if bound is None else bound + (depth - 1) * v
            )
            acc = self.monomial(0, negative[depth])
            for e in range(depth - 1, -1, -1):
                # e further multiplications by 1/inner lower exponents by e*v
                acc = acc.mul(reciprocal, order=None if bound is None else bound + e * v)
                if e:
                    acc = acc + negative.get(e, 0)
            result = result + acc

        return result.truncate(bound)

    def reversion(self) -> "TruncatedSeries":
        """
        Compositional inverse by Lagrange inversion: b_k = [w^{k-1}] (w/a(w))^k / k.
        """
        if self.valuation != 1:
            raise DomainError("reversion requires a series of valuation exactly 1")
        if self._order is None:
            raise DomainError("reversion of an exact series needs a truncation order")
        order = self._order
        phi = self.shift(-1).inverse()
        coefficients: List = [Fraction(0)]
        power = self.monomial(0, 1)
        for k in range(1, order):
            power = power.mul(phi, order=order - 1)
            coefficients.append(power.coefficient(k - 1) / k)
        return self._raw(coefficients, 0, order)


def series_arith(a: TruncatedSeries, b: Optional[TruncatedSeries], op: str):
    """
    Dispatch a named series operation; unary operations ignore ``b``.
    """
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "compose":
        return a.compose(b)
    if op == "sqrt":
        return a.sqrt()
    if op == "derivative":
        return a.derivative()
    if op == "log":
        return a.log()
    if op == "exp":
        return a.exp()
    raise DomainError(f"unknown series operation {op!r}")


def reversion(a: TruncatedSeries) -> TruncatedSeries:
    return a.reversion()


def residue(a: TruncatedSeries) -> Fraction:
    return a.residue()
