from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from django.test import SimpleTestCase, tag

from qdvol.utils.exceptions import (
    DecompositionError,
    DomainError,
    InconsistencyError,
)

from ..amplitudes import AmplitudeEngine, f_zero_residue, tr_amplitude
from ..basis import FTable, is_stable
from ..tables import (
    FTableStore,
    f_g0,
    f_g0_residue,
    f_table,
    f_table_basis,
    sorted_index_tuples,
)

F = Fraction

PRINTED_TABLES = {
    (0, 3): {(0, 0, 0): F(1, 2)},
    (0, 4): {(0, 0, 0, 0): F(-1, 4), (1, 0, 0, 0): F(1, 4)},
    (0, 5): {
        (0, 0, 0, 0, 0): F(3, 8),
        (1, 0, 0, 0, 0): F(-3, 8),
        (2, 0, 0, 0, 0): F(1, 8),
        (1, 1, 0, 0, 0): F(1, 4),
    },
    (1, 1): {(0,): F(-1, 24), (1,): F(1, 48)},
    (1, 2): {
        (0, 0): F(1, 32),
        (1, 0): F(-1, 32),
        (2, 0): F(-1, 96),
        (1, 1): F(1, 96),
    },
    (1, 3): {
        (0, 0, 0): F(-11, 192),
        (1, 0, 0): F(11, 192),
        (2, 0, 0): F(-5, 192),
        (1, 1, 0): F(-1, 24),
        (3, 0, 0): F(1, 192),
        (2, 1, 0): F(1, 96),
        (1, 1, 1): F(1, 96),
    },
    (2, 1): {
        (0,): F(29, 5120),
        (1,): F(-29, 5120),
        (2,): F(47, 15360),
        (3,): F(-41, 46080),
        (4,): F(1, 9216),
    },
}

QUICK = [(0, 3), (0, 4), (1, 1), (1, 2)]


class IndexTupleTests(SimpleTestCase):
    def test_enumeration(self):
        self.assertEqual(
            list(sorted_index_tuples(2, 2)), [(0, 0), (1, 0), (1, 1), (2, 0)]
        )
        self.assertEqual(list(sorted_index_tuples(0, 3)), [()])

    def test_tuples_are_sorted(self):
        for indices in sorted_index_tuples(4, 5):
            with self.subTest(indices=indices):
                self.assertEqual(indices, tuple(sorted(indices, reverse=True)))
                self.assertLessEqual(sum(indices), 5)


class FTableTests(SimpleTestCase):
    def test_lookup_is_symmetric(self):
        table = FTable(1, 2, {(1, 0): F(-1, 32)})

        self.assertEqual(table[(0, 1)], F(-1, 32))
        self.assertEqual(table[(1, 0)], F(-1, 32))
        self.assertEqual(table[(3, 0)], 0)

    def test_rejects_unsorted_keys(self):
        with self.assertRaises(DomainError):
            FTable(1, 2, {(0, 1): 1})

    def test_rejects_wrong_arity(self):
        table = FTable(1, 2)

        with self.assertRaises(DomainError):
            table[(0,)]

    def test_from_coefficients_requires_symmetry(self):
        with self.assertRaises(DecompositionError):
            FTable.from_coefficients(0, 4, {(1, 0, 0, 0): 1, (0, 1, 0, 0): 2})

    def test_degree_check(self):
        with self.assertRaises(InconsistencyError):
            FTable(0, 3, {(1, 0, 0): 1}).check_degree()

    def test_zero_entries_are_dropped(self):
        table = FTable(1, 1, {(0,): 0, (1,): F(1, 48)})

        self.assertEqual(len(table), 1)
        self.assertEqual(table.zero_entry, 0)


class BasisRouteTests(SimpleTestCase):
    def test_printed_tables(self):
        for (g, n), expected in PRINTED_TABLES.items():
            with self.subTest(g=g, n=n):
                table = f_table_basis(g, n)

                self.assertEqual(dict(table.entries), expected)

    def test_f_g0(self):
        self.assertEqual(f_g0(2), F(-1, 384))

    def test_f_g0_domain(self):
        with self.assertRaises(DomainError):
            f_g0(1)

    def test_unstable(self):
        for g, n in [(0, 2), (0, 1), (1, 0), (2, 0)]:
            with self.subTest(g=g, n=n):
                with self.assertRaises(DomainError) as exc_context:
                    f_table_basis(g, n)

                self.assertEqual(exc_context.exception.code, "unstable")

    def test_on_computed_callback(self):
        seen = []
        store = FTableStore(on_computed=seen.append)

        store.table(0, 4)

        self.assertEqual([(t.g, t.n) for t in seen], [(0, 3), (0, 4)])
        self.assertEqual(store.computed_count, 2)
        self.assertIn((0, 3), store)

    def test_concurrent_tables_are_counted_once(self):
        store = FTableStore()
        keys = [(0, 5), (1, 2), (1, 3), (2, 1), (1, 1)]

        with ThreadPoolExecutor(max_workers=4) as executor:
            list(executor.map(lambda key: store.table(*key), keys))

        self.assertEqual(store.computed_count, len(store.tables()))
        self.assertEqual(store.table(1, 2), f_table_basis(1, 2))

    def test_preloaded_tables_are_not_recomputed(self):
        seen = []
        store = FTableStore(on_computed=seen.append)

        loaded = store.preload([FTable(0, 3, PRINTED_TABLES[(0, 3)])])
        store.table(0, 4)

        self.assertEqual(loaded, 1)
        self.assertEqual([(t.g, t.n) for t in seen], [(0, 4)])
        self.assertEqual([(t.g, t.n) for t in store.tables()], [(0, 3), (0, 4)])

    def test_retry_after_truncation(self):
        # a negative margin starts below the needed order
        store = FTableStore(truncation_margin=-10)

        for g, n in [(1, 2), (0, 5), (2, 1)]:
            with self.subTest(g=g, n=n):
                self.assertEqual(store.table(g, n), f_table_basis(g, n))

    def test_larger_margin_agrees(self):
        store = FTableStore(truncation_margin=5)

        for g, n in [(1, 3), (2, 1)]:
            with self.subTest(g=g, n=n):
                self.assertEqual(store.table(g, n), f_table_basis(g, n))


class ResidueRouteTests(SimpleTestCase):
    def test_printed_tables(self):
        for g, n in QUICK:
            with self.subTest(g=g, n=n):
                self.assertEqual(dict(f_table(g, n).entries), PRINTED_TABLES[(g, n)])

    def test_round_trip_to_amplitude(self):
        for g, n in QUICK:
            with self.subTest(g=g, n=n):
                self.assertEqual(f_table(g, n).to_amplitude(), tr_amplitude(g, n))

    def test_zero_residue_matches_zero_entry(self):
        for g, n in QUICK:
            with self.subTest(g=g, n=n):
                self.assertEqual(f_zero_residue(g, n), PRINTED_TABLES[(g, n)][(0,) * n])

    def test_f_g0_residue(self):
        self.assertEqual(f_g0_residue(2), F(-1, 384))

    def test_retry_after_truncation(self):
        engine = AmplitudeEngine(truncation_margin=-10)

        for g, n in [(0, 4), (1, 1), (1, 2)]:
            with self.subTest(g=g, n=n):
                self.assertEqual(f_table(g, n, engine), f_table(g, n))

    @tag("slow")
    def test_printed_tables_slow(self):
        for g, n in [(0, 5), (1, 3), (2, 1)]:
            with self.subTest(g=g, n=n):
                self.assertEqual(dict(f_table(g, n).entries), PRINTED_TABLES[(g, n)])


@tag("slow")
class StructureTests(SimpleTestCase):
    def test_routes_agree(self):
        for g, n in [(0, 6), (1, 4), (2, 2), (3, 1)]:
            with self.subTest(g=g, n=n):
                self.assertEqual(f_table(g, n), f_table_basis(g, n))

    def test_sign_of_zero_entry(self):
        for chi in range(1, 8):
            for g in range(0, (chi + 2) // 2 + 1):
                n = chi + 2 - 2 * g
                if n < 1 or not is_stable(g, n) or (g, n) == (1, 1):
                    continue
                with self.subTest(g=g, n=n):
                    table = f_table_basis(g, n)

                    self.assertGreater((-1) ** (3 * g - 3 + n) * table.zero_entry, 0)
                    table.check_degree()

    def test_sign_without_points(self):
        for g in (2, 3):
            with self.subTest(g=g):
                self.assertGreater((-1) ** (3 * g - 3) * f_g0(g), 0)

    def test_f_g0_routes_agree_in_genus_three(self):
        self.assertEqual(f_g0_residue(3), f_g0(3))
