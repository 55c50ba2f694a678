import os
import tempfile
from unittest import skipIf

from django.test import SimpleTestCase, override_settings

from ..checks import check_cache_dir, check_truncation_margin, check_workers


class TruncationMarginCheckTests(SimpleTestCase):
    def test_valid_margins(self):
        for margin in (0, 3, 40):
            with self.subTest(margin=margin):
                with override_settings(QDVOL_TRUNCATION_MARGIN=margin):
                    self.assertEqual(check_truncation_margin(None), [])

    def test_invalid_margins(self):
        for margin in (-1, "2", 1.5, True):
            with self.subTest(margin=margin):
                with override_settings(QDVOL_TRUNCATION_MARGIN=margin):
                    errors = check_truncation_margin(None)

                self.assertEqual(len(errors), 1)
                self.assertEqual(errors[0].id, "utils.E001")


class WorkersCheckTests(SimpleTestCase):
    @override_settings(QDVOL_WORKERS=4)
    def test_valid(self):
        self.assertEqual(check_workers(None), [])

    @override_settings(QDVOL_WORKERS=0)
    def test_zero_workers(self):
        errors = check_workers(None)

        self.assertEqual(len(errors), 1)
        self.assertEqual(errors[0].id, "utils.E002")


class CacheDirCheckTests(SimpleTestCase):
    def test_missing_directory_is_fine(self):
        with override_settings(QDVOL_CACHE_DIR="/nonexistent/qdvol-cache"):
            self.assertEqual(check_cache_dir(None), [])

    def test_writable_directory(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            with override_settings(QDVOL_CACHE_DIR=tmpdir):
                self.assertEqual(check_cache_dir(None), [])

    @skipIf(hasattr(os, "geteuid") and os.geteuid() == 0, "root ignores permissions")
    def test_read_only_directory(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            os.chmod(tmpdir, 0o500)
            try:
                with override_settings(QDVOL_CACHE_DIR=tmpdir):
                    warnings = check_cache_dir(None)
            finally:
                os.chmod(tmpdir, 0o700)

        self.assertEqual(len(warnings), 1)
        self.assertEqual(warnings[0].id, "utils.W001")
