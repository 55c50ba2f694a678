import json
import os
import shutil
import tempfile
from fractions import Fraction

from django.test import SimpleTestCase

from qdvol.recursion.basis import FTable
from qdvol.recursion.curves import CurveParams
from qdvol.recursion.tables import FTableStore

from ..cache import (
    CorruptCacheError,
    FTableCache,
    build_store,
    decode_tables,
    encode_tables,
)

F = Fraction

TABLES = [
    FTable(0, 3, {(0, 0, 0): F(1, 2)}),
    FTable(1, 1, {(0,): F(-1, 24), (1,): F(1, 48)}),
]


class CacheTestMixin:
    def setUp(self):
        super().setUp()
        self.directory = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.directory, True)

    def write_document(self, document):
        with open(os.path.join(self.directory, "ftables.json"), "w") as outfile:
            json.dump(document, outfile)

    def read_document(self):
        with open(os.path.join(self.directory, "ftables.json")) as infile:
            return json.load(infile)


class EncodingTests(SimpleTestCase):
    def test_document_layout(self):
        document = encode_tables(TABLES, CurveParams(F(-1), 2), 1)

        self.assertEqual(document["schema_version"], 1)
        self.assertEqual(document["curve"], {"a": "-1", "b": 2})
        self.assertEqual(document["tables"], [[0, 3], [1, 1]])
        self.assertIn([1, 1, [1], "1", "48"], document["entries"])

    def test_decode(self):
        document = encode_tables(TABLES, CurveParams(F(-1), 2), 1)

        self.assertEqual(decode_tables(json.loads(json.dumps(document))), TABLES)

    def test_corrupt_documents(self):
        document = encode_tables(TABLES, CurveParams(F(-1), 2), 1)
        broken = {
            "zero denominator": [1, 1, [1], "1", "0"],
            "float numerator": [1, 1, [1], "0.5", "48"],
            "integer numerator": [1, 1, [1], 1, 48],
            "unsorted indices": [0, 3, [0, 0, 1], "1", "2"],
            "wrong arity": [1, 1, [1, 0], "1", "2"],
            "unlisted table": [2, 1, [4], "1", "9216"],
            "short entry": [1, 1, [1]],
        }
        for name, entry in broken.items():
            with self.subTest(name=name):
                with self.assertRaises(CorruptCacheError):
                    decode_tables(dict(document, entries=document["entries"] + [entry]))


class FTableCacheTests(CacheTestMixin, SimpleTestCase):
    def test_store_and_load(self):
        FTableCache(self.directory).store(TABLES)

        self.assertEqual(FTableCache(self.directory).load(), TABLES)

    def test_missing_file(self):
        self.assertEqual(FTableCache(self.directory).load(), [])

    def test_write_is_atomic(self):
        FTableCache(self.directory).store(TABLES)

        self.assertEqual(os.listdir(self.directory), ["ftables.json"])

    def test_schema_mismatch_is_ignored(self):
        self.write_document(encode_tables(TABLES, CurveParams(F(-1), 2), 2))

        with self.assertLogs("qdvol.cli.cache", "WARNING"):
            self.assertEqual(FTableCache(self.directory).load(), [])

    def test_curve_mismatch_is_ignored(self):
        self.write_document(encode_tables(TABLES, CurveParams(F(-1), 3), 1))

        with self.assertLogs("qdvol.cli.cache", "WARNING"):
            self.assertEqual(FTableCache(self.directory).load(), [])

    def test_tampered_denominator_rejects_the_file(self):
        document = encode_tables(TABLES, CurveParams(F(-1), 2), 1)
        document["entries"][0][4] = "0"
        self.write_document(document)

        with self.assertLogs("qdvol.cli.cache", "ERROR"):
            self.assertEqual(FTableCache(self.directory).load(), [])

    def test_invalid_json_rejects_the_file(self):
        with open(os.path.join(self.directory, "ftables.json"), "w") as outfile:
            outfile.write('{"schema_version": 1, "entries": [')

        with self.assertLogs("qdvol.cli.cache", "ERROR"):
            self.assertEqual(FTableCache(self.directory).load(), [])

    def test_computed_tables_are_recorded(self):
        store, cache = build_store(self.directory)

        store.table(0, 4)

        keys = {tuple(key) for key in self.read_document()["tables"]}
        self.assertEqual(keys, {(0, 3), (0, 4)})

    def test_warm_cache_skips_recomputation(self):
        cold, _ = build_store(self.directory)
        expected = cold.table(1, 2)

        warm, _ = build_store(self.directory)

        self.assertIn((1, 2), warm)
        self.assertEqual(warm.table(1, 2), expected)
        self.assertEqual(warm.computed_count, 0)

    def test_without_cache(self):
        store, cache = build_store(self.directory, use_cache=False)

        store.table(0, 3)

        self.assertIsNone(cache)
        self.assertIsInstance(store, FTableStore)
        self.assertEqual(os.listdir(self.directory), [])

    def test_unwritable_directory_is_skipped(self):
        path = os.path.join(self.directory, "file")
        with open(path, "w") as outfile:
            outfile.write("")
        cache = FTableCache(os.path.join(path, "cache"))

        with self.assertLogs("qdvol.cli.cache", "WARNING"):
            cache.store(TABLES)

        self.assertFalse(cache.writable)
