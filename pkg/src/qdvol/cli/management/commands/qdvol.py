import argparse
from fractions import Fraction

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management import BaseCommand, CommandError

from qdvol.utils.exceptions import QdvolError

from ...cache import build_store
from ...constants import (
    Commands,
    OutputFormats,
    Quantities,
    Routes,
    SelftestLevels,
    choice_values,
)
from ...formatting import format_rows
from ...query import QueryRequest, validate_request
from ...queries import run_query


def index_list(value: str):
    try:
        return tuple(int(part) for part in value.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {value!r}")


def fraction(value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {value!r}")


def describe_validation_error(exc: ValidationError) -> str:
    if not hasattr(exc, "error_dict"):
        return "; ".join(exc.messages)
    return "; ".join(
        f"{name}: {' '.join(messages)}" for name, messages in sorted(exc.message_dict.items())
    )


def describe_domain_error(exc: QdvolError) -> str:
    code = getattr(exc, "code", None)
    if not code:
        return str(exc)
    return f"{code.replace('_', ' ')}: {exc}"


class Command(BaseCommand):
    help = (
        "Exact Masur-Veech volumes, Siegel-Veech constants and Lyapunov sums of the "
        "principal strata of quadratic differentials"
    )

    def add_arguments(self, parser):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--cache-dir", help="F-table cache directory")
        common.add_argument(
            "--no-cache", action="store_true", help="neither read nor write the F-table cache"
        )
        common.add_argument("--truncation-margin", type=int, help="extra series orders")
        common.add_argument("--workers", type=int, help="worker threads for tables")
        common.add_argument(
            "--format",
            dest="output_format",
            choices=choice_values(OutputFormats),
            default=OutputFormats.plain,
        )

        subparsers = parser.add_subparsers(dest="command", required=True)

        def subcommand(name, **kwargs):
            return subparsers.add_parser(
                name, parents=[common], help=dict(Commands.choices)[name], **kwargs
            )

        volume = subcommand(Commands.volume)
        volume.add_argument("--genus", type=int, required=True)
        volume.add_argument("--poles", type=int, required=True)

        fcoeff = subcommand(Commands.fcoeff)
        fcoeff.add_argument("--genus", type=int, required=True)
        fcoeff.add_argument("--npoints", dest="poles", type=int, required=True)
        fcoeff.add_argument("--indices", type=index_list, default=())

        constants = subcommand(Commands.constants)
        constants.add_argument("--genus", type=int, required=True)
        constants.add_argument("--poles", type=int, required=True)

        poly = subcommand(Commands.poly)
        poly.add_argument("--genus", type=int, required=True)

        table = subcommand(Commands.table)
        table.add_argument("--genus", type=int, required=True)
        table.add_argument("--poles-from", type=int, required=True)
        table.add_argument("--poles-to", type=int, required=True)
        table.add_argument(
            "--quantity", choices=choice_values(Quantities), default=Quantities.volume
        )

        asym = subcommand(Commands.asym)
        asym.add_argument("--genus", type=int, required=True)
        asym.add_argument("--poles", type=int, required=True)

        selftest = subcommand(Commands.selftest)
        selftest.add_argument(
            "--level", choices=choice_values(SelftestLevels), default=SelftestLevels.quick
        )

        hodge = subcommand(Commands.hodge)
        hodge.add_argument("--genus", type=int, required=True)

        coefficients = subcommand(Commands.coefficients)
        coefficients.add_argument("--a", type=fraction, required=True)
        coefficients.add_argument("--b", type=int, required=True)
        coefficients.add_argument("--dmax", dest="d_max", type=int, required=True)
        coefficients.add_argument("--route", choices=choice_values(Routes), default=Routes.closed)

    def build_request(self, options) -> QueryRequest:
        margin = options.get("truncation_margin")
        workers = options.get("workers")
        return QueryRequest(
            command=options["command"],
            g=options.get("genus"),
            n=options.get("poles"),
            n_from=options.get("poles_from"),
            n_to=options.get("poles_to"),
            indices=tuple(options.get("indices") or ()),
            quantity=options.get("quantity") or Quantities.volume,
            level=options.get("level") or SelftestLevels.quick,
            a=options.get("a"),
            b=options.get("b"),
            d_max=options.get("d_max"),
            route=options.get("route") or Routes.closed,
            output_format=options.get("output_format") or OutputFormats.plain,
            cache_dir=options.get("cache_dir") or settings.QDVOL_CACHE_DIR,
            truncation_margin=settings.QDVOL_TRUNCATION_MARGIN if margin is None else margin,
            workers=settings.QDVOL_WORKERS if workers is None else workers,
        )

    def handle(self, **options):
        req = self.build_request(options)
        try:
            validate_request(req)
        except ValidationError as exc:
            raise CommandError(describe_validation_error(exc))

        store, _cache = build_store(
            req.cache_dir, req.truncation_margin, use_cache=not options.get("no_cache")
        )
        try:
            rows = run_query(req, store)
        except QdvolError as exc:
            raise CommandError(describe_domain_error(exc))

        self.stdout.write(format_rows(rows, req.output_format))

        if req.command == Commands.selftest:
            failed = [row for row in rows if row.note != "ok"]
            if failed:
                raise CommandError(f"{len(failed)} of {len(rows)} self checks failed")
