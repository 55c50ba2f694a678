"""
Query requests of the ``qdvol`` command and their validation.

Every request is validated as a whole before any computation starts, errors
are collected per field.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from .constants import (
    Commands,
    OutputFormats,
    Quantities,
    Routes,
    SelftestLevels,
    choice_values,
)


@dataclass
class QueryRequest:
    command: str
    g: Optional[int] = None
    n: Optional[int] = None
    n_from: Optional[int] = None
    n_to: Optional[int] = None
    indices: Tuple[int, ...] = ()
    quantity: str = Quantities.volume
    level: str = SelftestLevels.quick
    a: Optional[Fraction] = None
    b: Optional[int] = None
    d_max: Optional[int] = None
    route: str = Routes.closed
    output_format: str = OutputFormats.plain
    cache_dir: Optional[str] = None
    truncation_margin: int = 0
    workers: int = 1

    @property
    def poles(self) -> Tuple[int, ...]:
        if self.command == Commands.table:
            return tuple(range(self.n_from, self.n_to + 1))
        return (self.n,)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _euler_characteristic(g: int, n: int) -> int:
    return 2 * g - 2 + n


def _check_choice(errors, name, value, choices, code):
    allowed = choice_values(choices)
    if value not in allowed:
        errors[name] = ValidationError(
            _("`{value}` is not one of {choices}.").format(
                value=value, choices=", ".join(allowed)
            ),
            code=code,
        )


def _check_non_negative(errors, name, value, required=True):
    if value is None:
        if required:
            errors[name] = ValidationError(_("This value is required."), code="required")
        return False
    if not _is_int(value) or value < 0:
        errors[name] = ValidationError(
            _("Expected a non-negative integer, got {value!r}.").format(value=value),
            code="invalid",
        )
        return False
    return True


def validate_request(req: QueryRequest) -> None:
    """
    Raise a ValidationError with a dict of field errors for ill-formed
    requests.

    Whether a stratum is empty is decided by the computation itself, only the
    shape of the arguments is checked here.
    """
    errors = {}
    _check_choice(errors, "command", req.command, Commands, "invalid_command")
    _check_choice(errors, "format", req.output_format, OutputFormats, "invalid_format")

    if not _is_int(req.truncation_margin) or req.truncation_margin < 0:
        errors["truncation_margin"] = ValidationError(
            _("The truncation margin must be a non-negative integer."), code="invalid"
        )
    if not _is_int(req.workers) or req.workers < 1:
        errors["workers"] = ValidationError(
            _("The number of workers must be at least 1."), code="invalid"
        )
    if errors.get("command"):
        raise ValidationError(errors)

    limit = settings.QDVOL_MAX_EULER_CHARACTERISTIC
    command = req.command
    has_genus = False
    if command in Commands.with_genus():
        has_genus = _check_non_negative(errors, "genus", req.g)

    if command in Commands.with_poles():
        if _check_non_negative(errors, "poles", req.n) and has_genus:
            if _euler_characteristic(req.g, req.n) > limit and command != Commands.asym:
                errors["poles"] = ValidationError(
                    _("2g - 2 + n = {chi} exceeds the limit of {limit}.").format(
                        chi=_euler_characteristic(req.g, req.n), limit=limit
                    ),
                    code="too_large",
                )

    if command == Commands.fcoeff and "poles" not in errors:
        if len(req.indices) != (req.n or 0):
            errors["indices"] = ValidationError(
                _("Expected {n} indices, got {count}.").format(n=req.n, count=len(req.indices)),
                code="index_count",
            )
        elif any(not _is_int(k) or k < 0 for k in req.indices):
            errors["indices"] = ValidationError(
                _("Indices must be non-negative integers."), code="invalid"
            )

    if command == Commands.table:
        _check_choice(errors, "quantity", req.quantity, Quantities, "invalid_quantity")
        valid_from = _check_non_negative(errors, "poles_from", req.n_from)
        valid_to = _check_non_negative(errors, "poles_to", req.n_to)
        if valid_from and valid_to:
            if req.n_from > req.n_to:
                errors["poles_to"] = ValidationError(
                    _("The range {start}..{end} is empty.").format(start=req.n_from, end=req.n_to),
                    code="empty_range",
                )
            elif has_genus and _euler_characteristic(req.g, req.n_to) > limit:
                errors["poles_to"] = ValidationError(
                    _("2g - 2 + n = {chi} exceeds the limit of {limit}.").format(
                        chi=_euler_characteristic(req.g, req.n_to), limit=limit
                    ),
                    code="too_large",
                )

    # asym reads the fixed-genus polynomials; its number of poles is free
    if command in (Commands.poly, Commands.hodge, Commands.asym) and has_genus:
        # the extraction reads the volumes at n = 0 .. g
        if _euler_characteristic(req.g, req.g) > limit:
            errors["genus"] = ValidationError(
                _("Genus {g} needs 3g - 2 = {chi} beyond the limit of {limit}.").format(
                    g=req.g, chi=_euler_characteristic(req.g, req.g), limit=limit
                ),
                code="too_large",
            )

    if command == Commands.coefficients:
        if req.a is None or req.a == 0:
            errors["a"] = ValidationError(_("The parameter a must be nonzero."), code="invalid")
        if not _is_int(req.b) or req.b == 0:
            errors["b"] = ValidationError(
                _("The parameter b must be a nonzero integer."), code="invalid"
            )
        if not _is_int(req.d_max) or req.d_max < 1:
            errors["dmax"] = ValidationError(_("dmax must be at least 1."), code="invalid")
        _check_choice(errors, "route", req.route, Routes, "invalid_route")

    if command == Commands.selftest:
        _check_choice(errors, "level", req.level, SelftestLevels, "invalid_level")

    if errors:
        raise ValidationError(errors)
