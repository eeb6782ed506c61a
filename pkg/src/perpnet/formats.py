"""Text formats: geometry documents, latin-square files, JSON reports, DOT.

Geometry document::

    geometry v1
    points 9
    perpendicularity            # optional; implied by any perp line
    line: 0 1 2
    perp: 0 10
    label point 0 (0,0)
    label line 0 x=0

Blank lines and ``#`` comments are ignored (except inside label text).  Line indices in ``perp`` and
``label line`` refer to the order of ``line:`` entries in the file; the
emitter always writes lines in canonical order, so emitting then parsing
is the identity.

Latin-square file: a header ``mols n k`` followed by k blocks of n rows of
n integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .constructions import LatinSquareSet
from .errors import ParseError, PerpnetError
from .geometry import Geometry

FORMAT_VERSION = 1


@dataclass
class GeometryDocument:
    num_points: int
    lines: list[list[int]]
    perp: Optional[list[tuple[int, int]]] = None
    point_labels: dict[int, str] = field(default_factory=dict)
    line_labels: dict[int, str] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_geometry(cls, g: Geometry, point_labels=None, line_labels=None) -> "GeometryDocument":
        return cls(
            g.num_points,
            [list(l) for l in g.lines],
            None if g.perp is None else sorted(g.perp),
            dict(point_labels or {}),
            dict(line_labels or {}),
        )

    def to_geometry(self) -> Geometry:
        return Geometry(self.num_points, self.lines, self.perp)

    def canonical(self) -> "GeometryDocument":
        """Same content with lines in canonical order and labels remapped."""
        g = self.to_geometry()
        order = sorted(range(len(self.lines)), key=lambda i: sorted(self.lines[i]))
        new_index = {old: new for new, old in enumerate(order)}
        return GeometryDocument.from_geometry(
            g,
            self.point_labels,
            {new_index[i]: s for i, s in self.line_labels.items()},
        )


def emit_document(doc: GeometryDocument | Geometry) -> str:
    if isinstance(doc, Geometry):
        doc = GeometryDocument.from_geometry(doc)
    else:
        doc = doc.canonical()
    out = [f"geometry v{doc.format_version}", f"points {doc.num_points}"]
    if doc.perp is not None:
        out.append("perpendicularity")
    out.extend("line: " + " ".join(map(str, l)) if l else "line:" for l in doc.lines)
    if doc.perp is not None:
        out.extend(f"perp: {i} {j}" for i, j in doc.perp)
    out.extend(f"label point {i} {s}" for i, s in sorted(doc.point_labels.items()))
    out.extend(f"label line {i} {s}" for i, s in sorted(doc.line_labels.items()))
    return "\n".join(out) + "\n"


def _ints(text: str, lineno: int, col: int) -> list[int]:
    vals = []
    for tok in text.split():
        try:
            vals.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col + text.find(tok) + 1) from None
        if vals[-1] < 0:
            raise ParseError(f"negative index {tok}", lineno, col + text.find(tok) + 1)
    return vals


def _strip_comment(raw: str) -> str:
    # label text is free-form, so '#' there is literal
    if raw.lstrip().startswith("label "):
        return raw.rstrip()
    return raw.split("#", 1)[0].rstrip()


def parse_document(text: str) -> GeometryDocument:
    rows = [(i + 1, _strip_comment(raw)) for i, raw in enumerate(text.splitlines())]
    rows = [(i, s) for i, s in rows if s.strip()]
    if not rows:
        raise ParseError("empty document", 1, 1)
    lineno, head = rows[0]
    if head.strip() != "geometry v1":
        raise ParseError(f"expected header 'geometry v1', got {head.strip()!r}", lineno, 1)
    num_points = None
    lines: list[list[int]] = []
    perp: Optional[list[tuple[int, int]]] = None
    point_labels: dict[int, str] = {}
    line_labels: dict[int, str] = {}
    for lineno, s in rows[1:]:
        stripped = s.strip()
        if stripped.startswith("points"):
            vals = _ints(stripped[len("points"):], lineno, len("points"))
            if len(vals) != 1 or num_points is not None:
                raise ParseError("'points' takes one integer and appears once", lineno, 1)
            num_points = vals[0]
        elif stripped == "perpendicularity":
            perp = perp if perp is not None else []
        elif stripped.startswith("line:"):
            lines.append(_ints(stripped[5:], lineno, 5))
        elif stripped.startswith("perp:"):
            vals = _ints(stripped[5:], lineno, 5)
            if len(vals) != 2:
                raise ParseError("'perp:' takes two line indices", lineno, 1)
            perp = perp if perp is not None else []
            perp.append((vals[0], vals[1]))
        elif stripped.startswith("label "):
            parts = stripped.split(None, 3)
            if len(parts) < 4 or parts[1] not in ("point", "line"):
                raise ParseError("expected 'label point|line <index> <text>'", lineno, 1)
            try:
                idx = int(parts[2])
            except ValueError:
                raise ParseError(f"bad label index {parts[2]!r}", lineno, 1) from None
            (point_labels if parts[1] == "point" else line_labels)[idx] = parts[3]
        else:
            raise ParseError(f"unrecognised directive {stripped.split()[0]!r}", lineno, 1)
    if num_points is None:
        raise ParseError("missing 'points' line", rows[0][0], 1)
    doc = GeometryDocument(num_points, lines, perp, point_labels, line_labels)
    try:
        doc.to_geometry()
    except PerpnetError as exc:
        raise ParseError(f"invalid geometry: {exc}", 0, 0) from exc
    for i in point_labels:
        if not 0 <= i < num_points:
            raise ParseError(f"label for missing point {i}", 0, 0)
    for i in line_labels:
        if not 0 <= i < len(lines):
            raise ParseError(f"label for missing line {i}", 0, 0)
    return doc


def parse_geometry(text: str) -> Geometry:
    return parse_document(text).to_geometry()


# -- latin squares ---------------------------------------------------------

def parse_mols(text: str) -> LatinSquareSet:
    rows = [(i + 1, raw.split("#", 1)[0].strip()) for i, raw in enumerate(text.splitlines())]
    rows = [(i, s) for i, s in rows if s]
    if not rows:
        raise ParseError("empty latin-square file", 1, 1)
    lineno, head = rows[0]
    parts = head.split()
    if len(parts) != 3 or parts[0] != "mols":
        raise ParseError("expected header 'mols n k'", lineno, 1)
    n, k = _ints(" ".join(parts[1:]), lineno, 5)
    body = rows[1:]
    if len(body) != n * k:
        raise ParseError(f"expected {n * k} rows for {k} squares of order {n}, got {len(body)}",
                         body[-1][0] if body else lineno, 1)
    squares = []
    for s in range(k):
        square = []
        for lineno, row in body[s * n:(s + 1) * n]:
            vals = _ints(row, lineno, 0)
            if len(vals) != n:
                raise ParseError(f"expected {n} entries, got {len(vals)}", lineno, 1)
            square.append(tuple(vals))
        squares.append(tuple(square))
    return LatinSquareSet(n, tuple(squares))


def emit_mols(mols: LatinSquareSet) -> str:
    out = [f"mols {mols.order} {len(mols.squares)}"]
    for s, sq in enumerate(mols.squares):
        if s:
            out.append("")
        out.extend(" ".join(map(str, row)) for row in sq)
    return "\n".join(out) + "\n"


# -- reports ---------------------------------------------------------------

@dataclass
class RunReport:
    command: list[str]
    ok: bool
    sections: dict = field(default_factory=dict)
    timing: Optional[float] = None

    def to_dict(self, timing: bool = True) -> dict:
        d = {"command": self.command, "ok": self.ok, **self.sections}
        if timing and self.timing is not None:
            d["timing"] = {"seconds": round(self.timing, 6)}
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- DOT -------------------------------------------------------------------

def export_dot(g: Geometry, doc: Optional[GeometryDocument] = None) -> str:
    """Point/line incidence graph; perpendicular line pairs drawn dashed red."""
    plabels = doc.point_labels if doc else {}
    llabels = doc.line_labels if doc else {}

    def esc(s: str) -> str:
        return s.replace("\\", "\\\\").replace('"', '\\"')

    out = ["graph geometry {"]
    if g.num_points or g.b:
        out.append("  node [fontsize=10];")
    for p in g.points():
        out.append(f'  p{p} [shape=circle, label="{esc(plabels.get(p, str(p)))}"];')
    for l in g.line_ids():
        out.append(f'  l{l} [shape=box, label="{esc(llabels.get(l, f"L{l}"))}"];')
    for l, pts in enumerate(g.lines):
        for p in pts:
            out.append(f"  p{p} -- l{l};")
    if g.perp:
        for i, j in sorted(g.perp):
            out.append(f"  l{i} -- l{j} [style=dashed, color=red, constraint=false];")
    out.append("}")
    return "\n".join(out) + "\n"
