from fractions import Fraction

from django.test import SimpleTestCase, tag

from qdvol.arithmetic.exact import PiScalar
from qdvol.utils.exceptions import DomainError

from ..segre import (
    carea_lplus_g1_closed,
    carea_principal,
    lplus_principal,
    segre_number,
    v_norm,
    volume_g1_closed,
    volume_principal,
)

F = Fraction


class SegreNumberTests(SimpleTestCase):
    def test_values(self):
        for (g, n), expected in {
            (0, 3): F(1),
            (0, 4): F(-1),
            (1, 1): F(-1, 12),
            (1, 2): F(1, 8),
            (2, 0): F(-1, 96),
        }.items():
            with self.subTest(g=g, n=n):
                self.assertEqual(segre_number(g, n), expected)

    def test_unstable(self):
        for g, n in [(0, 2), (1, 0)]:
            with self.subTest(g=g, n=n):
                with self.assertRaises(DomainError):
                    segre_number(g, n)


class VolumeTests(SimpleTestCase):
    def test_values(self):
        for (g, n), expected in {
            (0, 4): PiScalar(2, 2),
            (0, 5): PiScalar(1, 4),
            (1, 2): PiScalar(F(1, 3), 4),
            (1, 3): PiScalar(F(11, 60), 6),
            (2, 0): PiScalar(F(1, 15), 6),
            (2, 1): PiScalar(F(29, 840), 8),
        }.items():
            with self.subTest(g=g, n=n):
                self.assertEqual(volume_principal(g, n), expected)

    def test_rendering(self):
        self.assertEqual(str(volume_principal(2, 0)), "1/15 * pi^6")

    def test_empty_strata(self):
        for g, n in [(1, 0), (1, 1), (0, 3), (0, 0), (-1, 5)]:
            with self.subTest(g=g, n=n):
                with self.assertRaises(DomainError) as exc_context:
                    volume_principal(g, n)

                if g >= 0:
                    self.assertEqual(exc_context.exception.code, "empty_stratum")

    def test_genus_one_closed_form(self):
        self.assertEqual(volume_g1_closed(2), PiScalar(F(1, 3), 4))
        self.assertEqual(volume_g1_closed(3), PiScalar(F(11, 60), 6))
        with self.assertRaises(DomainError):
            volume_g1_closed(1)

    def test_genus_one_routes_agree(self):
        for n in range(2, 6):
            with self.subTest(n=n):
                self.assertEqual(volume_principal(1, n), volume_g1_closed(n))

    @tag("slow")
    def test_genus_one_routes_agree_slow(self):
        for n in range(6, 11):
            with self.subTest(n=n):
                self.assertEqual(volume_principal(1, n), volume_g1_closed(n))

    def test_v_norm(self):
        for (g, n), expected in {(1, 2): F(1, 4), (2, 0): F(1, 3), (2, 1): F(29, 80)}.items():
            with self.subTest(g=g, n=n):
                self.assertEqual(v_norm(g, n), expected)


class SiegelVeechTests(SimpleTestCase):
    def test_carea_values(self):
        for (g, n), expected in {
            (1, 2): F(7, 3),
            (2, 0): F(19, 6),
            (0, 5): F(5, 3),
        }.items():
            with self.subTest(g=g, n=n):
                self.assertEqual(carea_principal(g, n), PiScalar(expected, -2))

    def test_lplus_values(self):
        for (g, n), expected in {(1, 2): F(2, 3), (1, 3): F(6, 11), (2, 0): F(4, 3)}.items():
            with self.subTest(g=g, n=n):
                self.assertEqual(lplus_principal(g, n), expected)

    def test_genus_one_closed_forms(self):
        carea, lplus = carea_lplus_g1_closed(2)

        self.assertEqual(carea, PiScalar(F(7, 3), -2))
        self.assertEqual(lplus, F(2, 3))
        self.assertEqual(carea_lplus_g1_closed(3)[1], F(6, 11))

    def test_genus_one_loop(self):
        for n in range(2, 5):
            with self.subTest(n=n):
                carea, lplus = carea_lplus_g1_closed(n)

                self.assertEqual(carea_principal(1, n), carea)
                self.assertEqual(lplus_principal(1, n), lplus)

    @tag("slow")
    def test_genus_one_loop_slow(self):
        for n in range(5, 9):
            with self.subTest(n=n):
                carea, lplus = carea_lplus_g1_closed(n)

                self.assertEqual(carea_principal(1, n), carea)
                self.assertEqual(lplus_principal(1, n), lplus)

    def test_carea_is_positive(self):
        for g, n in [(0, 4), (0, 6), (1, 3), (2, 1)]:
            with self.subTest(g=g, n=n):
                self.assertGreater(carea_principal(g, n).coefficient, 0)
