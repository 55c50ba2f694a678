import csv
import json
import shutil
import tempfile
from io import StringIO

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase, tag


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        super().setUp()
        self.cache_dir = tempfile.mkdtemp()
        self.addCleanup(shutil.rmtree, self.cache_dir, True)

    def qdvol(self, *args) -> str:
        out = StringIO()
        call_command("qdvol", *args, "--cache-dir", self.cache_dir, stdout=out)
        return out.getvalue().strip()


class VolumeCommandTests(CommandTestCase):
    def test_volume(self):
        self.assertEqual(self.qdvol("volume", "--genus", "1", "--poles", "2"), "1/3 * pi^4")

    def test_empty_stratum(self):
        with self.assertRaisesMessage(CommandError, "empty stratum"):
            self.qdvol("volume", "--genus", "1", "--poles", "1")

    def test_invalid_arguments(self):
        with self.assertRaisesMessage(CommandError, "genus"):
            self.qdvol("volume", "--genus", "-1", "--poles", "2")

    def test_json(self):
        output = self.qdvol("volume", "--genus", "2", "--poles", "0", "--format", "json")

        self.assertEqual(
            json.loads(output),
            [
                {
                    "quantity": "volume",
                    "genus": 2,
                    "poles": 0,
                    "coefficient": {"num": "1", "den": "15"},
                    "pi_power": 6,
                    "float": "%.12g" % (3.141592653589793 ** 6 / 15),
                }
            ],
        )

    def test_cache_is_written_and_reused(self):
        first = self.qdvol("volume", "--genus", "1", "--poles", "3")
        second = self.qdvol("volume", "--genus", "1", "--poles", "3")

        self.assertEqual(first, "11/60 * pi^6")
        self.assertEqual(first, second)
        with open(f"{self.cache_dir}/ftables.json") as infile:
            self.assertIn([1, 3], json.load(infile)["tables"])


class FCoeffCommandTests(CommandTestCase):
    def test_fcoeff(self):
        output = self.qdvol("fcoeff", "--genus", "2", "--npoints", "1", "--indices", "4")

        self.assertEqual(output, "1/9216")

    def test_several_indices(self):
        output = self.qdvol("fcoeff", "--genus", "1", "--npoints", "3", "--indices", "0,1,2")

        self.assertEqual(output, "1/96")

    def test_no_points(self):
        self.assertEqual(self.qdvol("fcoeff", "--genus", "2", "--npoints", "0"), "-1/384")

    def test_index_count(self):
        with self.assertRaisesMessage(CommandError, "indices"):
            self.qdvol("fcoeff", "--genus", "2", "--npoints", "1", "--indices", "4,0")

    def test_unstable(self):
        with self.assertRaisesMessage(CommandError, "unstable"):
            self.qdvol("fcoeff", "--genus", "0", "--npoints", "2", "--indices", "0,0")


class ConstantsCommandTests(CommandTestCase):
    def test_constants(self):
        output = self.qdvol("constants", "--genus", "1", "--poles", "2")

        self.assertEqual(output, "carea = 7/3 * pi^-2\nlplus = 2/3")

    def test_genus_two(self):
        output = self.qdvol("constants", "--genus", "2", "--poles", "0")

        self.assertEqual(output, "carea = 19/6 * pi^-2\nlplus = 4/3")


class TableCommandTests(CommandTestCase):
    def test_lplus(self):
        output = self.qdvol(
            "table", "--genus", "1", "--poles-from", "2", "--poles-to", "3", "--quantity", "lplus"
        )

        self.assertEqual(output, "lplus(1, 2) = 2/3\nlplus(1, 3) = 6/11")

    def test_volume(self):
        output = self.qdvol("table", "--genus", "2", "--poles-from", "0", "--poles-to", "1")

        self.assertEqual(output, "volume(2, 0) = 1/15 * pi^6\nvolume(2, 1) = 29/840 * pi^8")

    def test_empty_strata_are_flagged(self):
        output = self.qdvol(
            "table", "--genus", "1", "--poles-from", "1", "--poles-to", "2", "--format", "csv"
        )

        rows = list(csv.DictReader(StringIO(output)))
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[0]["num"], "")
        self.assertTrue(rows[0]["note"].startswith("skipped"))
        self.assertEqual((rows[1]["num"], rows[1]["den"], rows[1]["pi_power"]), ("1", "3", "4"))

    def test_only_empty_strata(self):
        with self.assertRaisesMessage(CommandError, "empty stratum"):
            self.qdvol("table", "--genus", "1", "--poles-from", "0", "--poles-to", "1")

    def test_empty_range(self):
        with self.assertRaisesMessage(CommandError, "poles_to"):
            self.qdvol("table", "--genus", "1", "--poles-from", "3", "--poles-to", "2")

    def test_workers_do_not_change_the_output(self):
        args = ("table", "--genus", "0", "--poles-from", "3", "--poles-to", "7", "--format", "json")

        cold = self.qdvol(*args, "--workers", "1")
        warm = self.qdvol(*args, "--workers", "3")
        uncached = self.qdvol(*args, "--workers", "3", "--no-cache")

        self.assertEqual(cold, warm)
        self.assertEqual(cold, uncached)


class PolynomialCommandTests(CommandTestCase):
    def test_genus_one(self):
        output = self.qdvol("poly", "--genus", "1")

        self.assertEqual(
            output.split("\n"),
            [
                "p_1(n) = 1/6",
                "q_1(n) = 1/6",
                "r_1(n) = 0",
                "s_1(n) = 1/3*n - 1/3",
                "m_1 = 1/3",
                "n_1 = 2/3",
            ],
        )

    def test_genus_two(self):
        output = self.qdvol("poly", "--genus", "2")

        self.assertIn("p_2(n) = 5/36", output)
        self.assertIn("q_2(n) = 28/135*n + 7/18", output)
        self.assertIn("m_2 = 7/1080", output)

    def test_hodge(self):
        output = self.qdvol("hodge", "--genus", "2")

        self.assertIn("kappa(2, 0) = 7/5760", output)
        self.assertIn("kappa(2, 2) = 7/240", output)
        self.assertIn("kappa_prime(2, 1) = 5/2304", output)
        self.assertIn("theta(2, 0) = ", output)


class CoefficientsCommandTests(CommandTestCase):
    def test_closed_route(self):
        output = self.qdvol("coefficients", "--a", "-1", "--b", "2", "--dmax", "2")

        lines = output.split("\n")
        self.assertIn("r_1 = 1/12", lines)
        self.assertIn("r_2 = 0", lines)
        self.assertIn("t_1 = -13/12", lines)

    def test_routes_agree(self):
        args = ("coefficients", "--a", "-4", "--b", "3", "--dmax", "6")

        self.assertEqual(self.qdvol(*args), self.qdvol(*args, "--route", "local"))

    def test_rational_parameter(self):
        with self.assertRaisesMessage(CommandError, "coordinate"):
            self.qdvol("coefficients", "--a=-2", "--b", "2", "--dmax", "2", "--route", "local")


class AsymptoticsCommandTests(CommandTestCase):
    def test_genus_one(self):
        output = self.qdvol("asym", "--genus", "1", "--poles", "300", "--format", "json")

        rows = {(row["quantity"], row["label"]): row for row in json.loads(output)}
        self.assertEqual(rows[("volume", ".constant")]["coefficient"], {"num": "1", "den": "3"})
        self.assertEqual(rows[("lplus", ".constant")]["coefficient"], {"num": "2", "den": "1"})
        self.assertLess(abs(float(rows[("volume", ".ratio")]["float"]) - 1), 0.15)


@tag("slow")
class SelftestCommandTests(CommandTestCase):
    def test_quick(self):
        output = self.qdvol("selftest")

        lines = output.split("\n")
        self.assertGreater(len(lines), 5)
        for line in lines:
            with self.subTest(line=line):
                self.assertTrue(line.endswith(": ok"))
