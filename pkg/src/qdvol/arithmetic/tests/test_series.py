import random
from fractions import Fraction

from django.test import SimpleTestCase

from qdvol.utils.exceptions import DomainError, TruncationError

from ..series import TruncatedSeries, reversion, series_arith

F = Fraction


def series(terms, order=None):
    return TruncatedSeries.from_terms(terms, order=order)


def random_series(rng, low, order):
    """
    A series with random small rational coefficients on low .. order - 1 and a
    nonzero leading term.
    """
    terms = {}
    for exponent in range(low, order):
        numerator = rng.randint(-5, 5)
        if exponent == low and not numerator:
            numerator = 1
        terms[exponent] = F(numerator, rng.randint(1, 4))
    return series(terms, order=order)


class TruncationTests(SimpleTestCase):
    def test_reading_beyond_order(self):
        s = series({0: 1, 1: 2}, order=3)

        self.assertEqual(s[1], 2)
        self.assertEqual(s[2], 0)
        with self.assertRaises(TruncationError) as exc_context:
            s.coefficient(3)

        self.assertEqual(exc_context.exception.order, 3)

    def test_addition_takes_minimum_order(self):
        s = series({0: 1}, order=5) + series({1: 1}, order=3)

        self.assertEqual(s.order, 3)

    def test_product_order(self):
        # (1 + t + O(t^3)) * t^-1 is known below t^2
        s = series({0: 1, 1: 1}, order=3) * series({-1: 1})

        self.assertEqual(s.order, 2)
        self.assertEqual(s.terms(), {-1: 1, 0: 1})

    def test_exact_zero_product(self):
        s = TruncatedSeries.zero() * series({0: 1}, order=2)

        self.assertTrue(s.is_zero)
        self.assertIsNone(s.order)


class OperationTests(SimpleTestCase):
    def test_inverse(self):
        s = series({0: 1, 1: -1}).inverse(order=5)

        self.assertEqual(s.order, 5)
        self.assertEqual(s.terms(), {k: 1 for k in range(5)})

    def test_inverse_of_exact_series_needs_order(self):
        with self.assertRaises(DomainError):
            series({0: 1, 1: 1}).inverse()

    def test_division(self):
        s = series({1: 1}).div(series({1: 1, 2: 1}), order=4)

        self.assertEqual(s.order, 4)
        self.assertEqual(s.terms(), {0: 1, 1: -1, 2: 1, 3: -1})

    def test_sqrt(self):
        s = series({0: 1, 1: 1}).sqrt(order=4)

        self.assertEqual(s.terms(), {0: 1, 1: F(1, 2), 2: F(-1, 8), 3: F(1, 16)})

    def test_sqrt_of_square(self):
        s = series({2: 4, 3: 4, 4: 1}).sqrt(order=6)

        self.assertEqual(s.terms(), {1: 2, 2: 1})

    def test_sqrt_rejects_odd_valuation(self):
        with self.assertRaises(DomainError):
            series({1: 1}, order=4).sqrt()

    def test_log_and_exp(self):
        log = series({0: 1, 1: 1}).log(order=5)
        exp = series({1: 1}).exp(order=5)

        self.assertEqual(log.terms(), {1: 1, 2: F(-1, 2), 3: F(1, 3), 4: F(-1, 4)})
        self.assertEqual(exp.terms(), {0: 1, 1: 1, 2: F(1, 2), 3: F(1, 6), 4: F(1, 24)})
        self.assertTrue(log.exp().agrees_with(series({0: 1, 1: 1})))

    def test_derivative(self):
        s = series({-2: 1, 3: 2}, order=6).derivative()

        self.assertEqual(s.terms(), {-3: -2, 2: 6})
        self.assertEqual(s.order, 5)

    def test_compose_polynomial(self):
        s = series({0: 1, 1: 1, 2: 1}).compose(series({1: 2}))

        self.assertEqual(s.terms(), {0: 1, 1: 2, 2: 4})

    def test_compose_with_pole(self):
        s = series({-1: 1}).compose(series({1: 1, 2: 1}, order=5))

        self.assertEqual(s.terms(), {-1: 1, 0: -1, 1: 1, 2: -1})
        self.assertEqual(s.order, 3)

    def test_reversion(self):
        s = reversion(series({1: 1, 2: 1}, order=6))

        self.assertEqual(s.terms(), {1: 1, 2: -1, 3: 2, 4: -5, 5: 14})
        self.assertTrue(
            series({1: 1, 2: 1}, order=6).compose(s).agrees_with(series({1: 1}))
        )

    def test_reversion_preconditions(self):
        with self.assertRaises(DomainError):
            series({1: 1, 2: 1}).reversion()
        with self.assertRaises(DomainError):
            series({2: 1}, order=5).reversion()

    def test_residue_and_dispatch(self):
        a = series({-2: 3, -1: 5}, order=2)

        self.assertEqual(a.residue(), 5)
        self.assertEqual(series_arith(a, series({1: 1}), "mul").residue(), 3)
        with self.assertRaises(DomainError):
            series_arith(a, None, "unknown")


class AlgebraicLawTests(SimpleTestCase):
    def setUp(self):
        self.rng = random.Random(20240607)

    def draw(self, lows=(-1, 0, 1, 2), orders=range(4, 13)):
        low = self.rng.choice(lows)
        return random_series(self.rng, low, max(self.rng.choice(orders), low + 1))

    def test_product_is_commutative(self):
        for i in range(20):
            a, b = self.draw(), self.draw()
            with self.subTest(i=i):
                self.assertEqual(a * b, b * a)

    def test_product_is_associative(self):
        for i in range(20):
            a, b, c = self.draw(), self.draw(), self.draw()
            with self.subTest(i=i):
                left, right = (a * b) * c, a * (b * c)
                self.assertEqual(left.order, right.order)
                self.assertTrue(left.agrees_with(right))

    def test_product_distributes_over_sum(self):
        for i in range(20):
            a, b, c = self.draw(), self.draw(), self.draw()
            with self.subTest(i=i):
                self.assertTrue((a * (b + c)).agrees_with(a * b + a * c))

    def test_chain_rule(self):
        for i in range(15):
            outer = self.draw(lows=(0, 1), orders=range(4, 9))
            inner = self.draw(lows=(1, 2), orders=range(4, 9))
            with self.subTest(i=i):
                composed = outer.compose(inner).derivative()
                expected = outer.derivative().compose(inner) * inner.derivative()
                self.assertTrue(composed.agrees_with(expected))

    def test_residue_ignores_exact_derivatives(self):
        for i in range(20):
            f = self.draw(lows=(-4, -3, -2, -1), orders=range(1, 8))
            h = self.draw(lows=(-4, -3, -2, -1, 0), orders=range(1, 8))
            with self.subTest(i=i):
                self.assertEqual((f + h.derivative()).residue(), f.residue())
