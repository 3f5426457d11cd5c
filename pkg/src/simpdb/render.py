"""Instances as per-face tables.

Faces are listed by dimension descending, then lexicographically; every face
is printed, including empty ones. A header names the attributes of the face;
each row prints its value at every attribute.
"""

from __future__ import annotations

import os
import sys

from .complex import Complex, face_key, format_face
from .instance import FullTuple, Instance, row_value
from .values import Family, Value, format_value, format_vertex

__all__ = ["table_faces", "table", "render_tsv", "render_ascii", "render_complex", "format_tuple", "format_cell", "use_color"]


def table_faces(X: Complex) -> list:
    return sorted(X.faces, key=lambda f: (-len(f), face_key(f)))


def format_cell(v: Value, compact: bool = False) -> str:
    """Canonical printing; ``compact`` shows a one-entry family by its entry, as in hand-drawn tables."""
    if compact:
        while isinstance(v, Family) and len(v.items) == 1:
            v = v.items[0][1]
    return format_value(v)


def table(J: Instance, face, compact: bool = False) -> tuple[list[str], list[list[str]]]:
    header = [format_vertex(u) for u in face]
    body = [[format_cell(row_value(r, face, u), compact) for u in face] for r in sorted(J.rows[face])]
    return header, body


def render_tsv(J: Instance, compact: bool = False) -> str:
    blocks = []
    for f in table_faces(J.base):
        header, body = table(J, f, compact)
        blocks.append("\n".join(["\t".join(header)] + ["\t".join(r) for r in body]))
    return "\n\n".join(blocks) + "\n"


def use_color(stream=None) -> bool:
    stream = stream or sys.stdout
    if os.environ.get("SDB_COLOR", "") == "0":
        return False
    return bool(getattr(stream, "isatty", lambda: False)())


def _bold(s: str, color: bool) -> str:
    return f"\x1b[1m{s}\x1b[0m" if color else s


def render_ascii(J: Instance, compact: bool = False, color: bool = False) -> str:
    out = []
    for f in table_faces(J.base):
        header, body = table(J, f, compact)
        widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(header)]
        rule = "+" + "+".join("-" * (w + 2) for w in widths) + "+"

        def line(cells, bold=False):
            return "|" + "|".join(f" {_bold(c.ljust(w), bold)} " for c, w in zip(cells, widths)) + "|"

        out.append(_bold(f"face {format_face(f)}", color) + f" ({len(body)} row{'s' if len(body) != 1 else ''})")
        out.append(rule)
        out.append(line(header, color))
        out.append(rule)
        out.extend(line(r) for r in body)
        if body:
            out.append(rule)
        out.append("")
    return "\n".join(out)


def render_complex(X: Complex) -> str:
    return "\n".join(format_face(f) for f in table_faces(X)) + "\n"


def format_tuple(t: FullTuple, compact: bool = False) -> str:
    return "⟨" + ",".join(format_cell(v, compact) for v in t.values()) + "⟩"
