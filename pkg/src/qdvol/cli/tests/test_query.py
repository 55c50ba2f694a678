from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings

from ..constants import Commands, SelftestLevels
from ..query import validate_request
from .factories import QueryRequestFactory


class ValidateRequestTests(SimpleTestCase):
    def assertInvalid(self, req, field, code):
        with self.assertRaises(ValidationError) as exc_context:
            validate_request(req)

        errors = exc_context.exception.error_dict
        self.assertIn(field, errors)
        self.assertEqual(errors[field][0].code, code)

    def test_valid_requests(self):
        for req in [
            QueryRequestFactory.build(),
            QueryRequestFactory.build(fcoeff=True),
            QueryRequestFactory.build(table=True),
            QueryRequestFactory.build(coefficients=True),
            QueryRequestFactory.build(command=Commands.poly, g=2, n=None),
            QueryRequestFactory.build(command=Commands.selftest, g=None, n=None),
            QueryRequestFactory.build(command=Commands.fcoeff, g=2, n=0, indices=()),
        ]:
            with self.subTest(command=req.command):
                validate_request(req)

    def test_empty_stratum_is_left_to_the_computation(self):
        validate_request(QueryRequestFactory.build(g=1, n=1))

    def test_unknown_command(self):
        self.assertInvalid(QueryRequestFactory.build(command="area"), "command", "invalid_command")

    def test_unknown_format(self):
        self.assertInvalid(
            QueryRequestFactory.build(output_format="xml"), "format", "invalid_format"
        )

    def test_missing_genus(self):
        self.assertInvalid(QueryRequestFactory.build(g=None), "genus", "required")

    def test_negative_values(self):
        self.assertInvalid(QueryRequestFactory.build(g=-1), "genus", "invalid")
        self.assertInvalid(QueryRequestFactory.build(n=-2), "poles", "invalid")

    def test_global_flags(self):
        self.assertInvalid(QueryRequestFactory.build(workers=0), "workers", "invalid")
        self.assertInvalid(
            QueryRequestFactory.build(truncation_margin=-1), "truncation_margin", "invalid"
        )

    @override_settings(QDVOL_MAX_EULER_CHARACTERISTIC=4)
    def test_resource_bound(self):
        self.assertInvalid(QueryRequestFactory.build(g=1, n=5), "poles", "too_large")
        self.assertInvalid(
            QueryRequestFactory.build(table=True, n_to=5), "poles_to", "too_large"
        )
        self.assertInvalid(
            QueryRequestFactory.build(command=Commands.poly, g=3, n=None), "genus", "too_large"
        )

    @override_settings(QDVOL_MAX_EULER_CHARACTERISTIC=4)
    def test_asymptotics_are_bounded_by_genus_only(self):
        validate_request(QueryRequestFactory.build(command=Commands.asym, g=1, n=300))
        validate_request(QueryRequestFactory.build(command=Commands.asym, g=2, n=300))

    @override_settings(QDVOL_MAX_EULER_CHARACTERISTIC=16)
    def test_asymptotics_genus_bound(self):
        for g in (7, 10):
            with self.subTest(g=g):
                req = QueryRequestFactory.build(command=Commands.asym, g=g, n=1)
                self.assertInvalid(req, "genus", "too_large")

    def test_fcoeff_indices(self):
        self.assertInvalid(
            QueryRequestFactory.build(fcoeff=True, indices=(4, 0)), "indices", "index_count"
        )
        self.assertInvalid(
            QueryRequestFactory.build(fcoeff=True, indices=(-1,)), "indices", "invalid"
        )

    def test_table_range(self):
        self.assertInvalid(
            QueryRequestFactory.build(table=True, n_from=4, n_to=3), "poles_to", "empty_range"
        )
        self.assertInvalid(
            QueryRequestFactory.build(table=True, quantity="area"), "quantity", "invalid_quantity"
        )

    def test_table_poles(self):
        self.assertEqual(QueryRequestFactory.build(table=True).poles, (2, 3))
        self.assertEqual(QueryRequestFactory.build().poles, (2,))

    def test_coefficients(self):
        self.assertInvalid(QueryRequestFactory.build(coefficients=True, a=0), "a", "invalid")
        self.assertInvalid(QueryRequestFactory.build(coefficients=True, b=0), "b", "invalid")
        self.assertInvalid(QueryRequestFactory.build(coefficients=True, d_max=0), "dmax", "invalid")
        self.assertInvalid(
            QueryRequestFactory.build(coefficients=True, route="global"), "route", "invalid_route"
        )

    def test_selftest_level(self):
        validate_request(
            QueryRequestFactory.build(command=Commands.selftest, level=SelftestLevels.full)
        )
        self.assertInvalid(
            QueryRequestFactory.build(command=Commands.selftest, level="huge"),
            "level",
            "invalid_level",
        )

    def test_errors_are_collected(self):
        with self.assertRaises(ValidationError) as exc_context:
            validate_request(QueryRequestFactory.build(g=-1, workers=0, output_format="xml"))

        self.assertEqual(
            set(exc_context.exception.error_dict), {"genus", "workers", "format"}
        )
