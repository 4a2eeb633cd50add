"""Arrangement file format: parsing, serialization, shipped fixtures.

The format is line-oriented::

    arrangement <label>
    line a b c                      # a*x + b*y + c*z
    conic axx ayy azz axy axz ayz   # axx*x^2 + ... + ayz*y*z
    # comments run to end of line; blank lines are ignored

Coefficients are integers.  Parsing preserves component order.
"""

from __future__ import annotations

from importlib import resources

from .arrangements import Arrangement, ConicForm, LineForm, validate
from .errors import ParseError, ValidationError


def parse_arrangement(text: str) -> Arrangement:
    """Parse and validate an arrangement file."""
    label = None
    components = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        keyword = tokens[0]
        column = line.index(keyword) + 1
        if keyword == "arrangement":
            if label is not None:
                raise ParseError("duplicate arrangement header", lineno, column)
            if len(tokens) < 2:
                raise ParseError("arrangement header needs a label", lineno, column)
            label = " ".join(tokens[1:])
            continue
        if label is None:
            raise ParseError(
                "expected 'arrangement <label>' before component records",
                lineno,
                column,
            )
        if keyword == "line":
            coeffs = _int_fields(tokens, 3, line, lineno)
            try:
                components.append(LineForm(*coeffs))
            except ValidationError as exc:
                raise ParseError(str(exc), lineno, column) from exc
        elif keyword == "conic":
            coeffs = _int_fields(tokens, 6, line, lineno)
            try:
                components.append(ConicForm(*coeffs))
            except ValidationError as exc:
                raise ParseError(str(exc), lineno, column) from exc
        else:
            raise ParseError(f"unknown record {keyword!r}", lineno, column)
    if label is None:
        raise ParseError("missing 'arrangement <label>' header", 1, 1)
    return validate(Arrangement(components, label))


def _int_fields(tokens, want, line, lineno):
    fields = tokens[1:]
    if len(fields) != want:
        raise ParseError(
            f"{tokens[0]!r} record needs {want} integers, got {len(fields)}",
            lineno,
            line.index(tokens[0]) + 1,
        )
    out = []
    for tok in fields:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(
                f"not an integer: {tok!r}", lineno, line.index(tok) + 1
            ) from None
    return out


def serialize_arrangement(arrangement: Arrangement) -> str:
    """Inverse of parse_arrangement (component order preserved)."""
    lines = [f"arrangement {arrangement.label}"]
    for c in arrangement.components:
        if isinstance(c, LineForm):
            lines.append("line " + " ".join(str(v) for v in c.coeffs))
        else:
            lines.append("conic " + " ".join(str(v) for v in c.coeffs))
    return "\n".join(lines) + "\n"


FIXTURE_NAMES = (
    "cl1",
    "cl2",
    "triangle",
    "near_pencil",
    "conic",
    "tangent",
)


def fixture_text(name: str) -> str:
    """Source text of a shipped fixture arrangement."""
    key = name.lower()
    if key not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; have {', '.join(FIXTURE_NAMES)}")
    return (resources.files(__package__) / "fixtures" / f"{key}.arr").read_text()


def load_fixture(name: str) -> Arrangement:
    return parse_arrangement(fixture_text(name))


def read_arrangement(path: str) -> Arrangement:
    """Read from a filesystem path, or from the shipped fixtures via the
    pseudo-path ``fixture:<name>``."""
    if path.startswith("fixture:"):
        return load_fixture(path.split(":", 1)[1])
    with open(path, "r", encoding="utf-8") as fh:
        return parse_arrangement(fh.read())
