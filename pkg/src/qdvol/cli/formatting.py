"""
Rendering of query results as plain text, JSON or CSV.

Exact values are never rounded: plain output uses "num/den * pi^e", JSON and
CSV carry numerators and denominators as decimal strings. Floating point
values only appear in the extra ``float`` column.
"""
import csv
import io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from qdvol.arithmetic.exact import PiScalar
from qdvol.utils.exceptions import DomainError
from qdvol.volumes.polynomials import RationalPolynomial

from .constants import OutputFormats

Value = Union[PiScalar, Fraction, RationalPolynomial, float, None]

CSV_COLUMNS = ["quantity", "label", "genus", "poles", "num", "den", "pi_power", "float", "note"]

EXACT_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?(?:\s*\*\s*pi\^(-?\d+))?\s*$")


@dataclass(frozen=True)
class Row:
    quantity: str
    value: Value
    genus: Optional[int] = None
    poles: Optional[int] = None
    label: str = ""
    note: str = ""

    @property
    def flagged(self) -> bool:
        return self.value is None


def _fraction(value: Union[PiScalar, Fraction]) -> Fraction:
    return value.coefficient if isinstance(value, PiScalar) else Fraction(value)


def _pi_power(value) -> int:
    return value.pi_power if isinstance(value, PiScalar) else 0


def _float(value: float) -> str:
    return "%.12g" % value


def render_value(value: Value) -> str:
    if isinstance(value, float):
        return _float(value)
    return str(value)


def parse_exact(text: str) -> Union[PiScalar, Fraction]:
    """
    Inverse of the plain rendering of exact scalars.
    """
    match = EXACT_RE.match(text)
    if not match:
        raise DomainError(f"not an exact value: {text!r}", code="parse")
    numerator, denominator, power = match.groups()
    value = Fraction(int(numerator), int(denominator or 1))
    if power is None:
        return value
    return PiScalar(value, int(power))


def format_plain(rows: Sequence[Row]) -> str:
    if len(rows) == 1 and not rows[0].label and not rows[0].flagged:
        return render_value(rows[0].value)

    lines = []
    for row in rows:
        name = f"{row.quantity}{row.label}"
        if row.flagged:
            lines.append(f"{name}: {row.note}")
        elif row.note:
            lines.append(f"{name} = {render_value(row.value)}  # {row.note}")
        else:
            lines.append(f"{name} = {render_value(row.value)}")
    return "\n".join(lines)


def _json_row(row: Row) -> dict:
    data = {"quantity": row.quantity}
    if row.label:
        data["label"] = row.label
    if row.genus is not None:
        data["genus"] = row.genus
    if row.poles is not None:
        data["poles"] = row.poles

    value = row.value
    if isinstance(value, RationalPolynomial):
        data["coefficients"] = [
            {"num": str(c.numerator), "den": str(c.denominator)} for c in value.coefficients
        ]
    elif isinstance(value, float):
        data["float"] = _float(value)
    elif value is not None:
        coefficient = _fraction(value)
        data["coefficient"] = {
            "num": str(coefficient.numerator),
            "den": str(coefficient.denominator),
        }
        data["pi_power"] = _pi_power(value)
        data["float"] = _float(float(value))

    if row.note:
        data["note"] = row.note
    return data


def format_json(rows: Sequence[Row]) -> str:
    return json.dumps([_json_row(row) for row in rows], indent=2)


def _csv_rows(row: Row) -> List[dict]:
    base = {
        "quantity": row.quantity,
        "label": row.label,
        "genus": "" if row.genus is None else row.genus,
        "poles": "" if row.poles is None else row.poles,
        "note": row.note,
    }
    value = row.value
    if isinstance(value, RationalPolynomial):
        # one line per coefficient, the label names the power of n
        return [
            dict(
                base,
                label=f"{row.label}n^{k}",
                num=c.numerator,
                den=c.denominator,
                pi_power=0,
                float=_float(float(c)),
            )
            for k, c in enumerate(value.coefficients)
        ]
    if isinstance(value, float):
        return [dict(base, float=_float(value))]
    if value is None:
        return [base]
    coefficient = _fraction(value)
    return [
        dict(
            base,
            num=coefficient.numerator,
            den=coefficient.denominator,
            pi_power=_pi_power(value),
            float=_float(float(value)),
        )
    ]


def format_csv(rows: Sequence[Row]) -> str:
    output = io.StringIO()
    writer = csv.DictWriter(output, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerows(_csv_rows(row))
    return output.getvalue().rstrip("\n")


FORMATTERS = {
    OutputFormats.plain: format_plain,
    OutputFormats.json: format_json,
    OutputFormats.csv: format_csv,
}


def format_rows(rows: Sequence[Row], output_format: str = OutputFormats.plain) -> str:
    try:
        formatter = FORMATTERS[output_format]
    except KeyError:
        raise DomainError(f"unknown output format {output_format!r}", code="format")
    return formatter(rows)
