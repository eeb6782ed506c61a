"""Immutable finite point/line geometries with an optional perpendicularity.

Points are the integers ``0 .. num_points - 1``.  A line is a strictly
increasing tuple of point indices; the line list is kept sorted
lexicographically so that line indices are canonical.  Perpendicularity is a
set of unordered line pairs ``(i, j)`` with ``i <= j``; self-pairs are
representable so that "no line is perpendicular to itself" can be checked
rather than assumed.  ``perp is None`` means the geometry carries no
perpendicularity relation at all, which is different from an empty one.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, NamedTuple, Optional

from .errors import InvalidGeometry, MultipleLines, NoPerpRelation, OutOfBounds

PointId = int
LineId = int
PerpPair = tuple[int, int]


class LineStats(NamedTuple):
    line: LineId
    n_line: int


class PointStats(NamedTuple):
    point: PointId
    r_point: int


def _pair(i: int, j: int) -> PerpPair:
    return (i, j) if i <= j else (j, i)


class Geometry:
    """A finite incidence structure, canonicalised at construction.

    ``lines`` may be given in any order and each line's points in any order;
    ``perp`` pairs refer to positions in the *given* line list and are
    remapped to the canonical order.  Duplicate lines and repeated points
    within a line are rejected.
    """

    __slots__ = (
        "num_points",
        "lines",
        "perp",
        "_line_sets",
        "_lines_on",
        "_perp_adj",
        "_hash",
    )

    def __init__(
        self,
        num_points: int,
        lines: Iterable[Iterable[int]] = (),
        perp: Optional[Iterable[tuple[int, int]]] = None,
    ):
        if num_points < 0:
            raise InvalidGeometry(f"negative point count {num_points}")
        raw = []
        for idx, line in enumerate(lines):
            pts = tuple(sorted(line))
            for a, b in zip(pts, pts[1:]):
                if a == b:
                    raise InvalidGeometry(f"line {idx} repeats point {a}", (idx, a))
            for p in pts:
                if not 0 <= p < num_points:
                    raise OutOfBounds(f"line {idx} has point {p} outside [0, {num_points})", (idx, p))
            raw.append(pts)

        order = sorted(range(len(raw)), key=lambda i: raw[i])
        new_index = {old: new for new, old in enumerate(order)}
        canon = tuple(raw[i] for i in order)
        for a, b in zip(order, order[1:]):
            if raw[a] == raw[b]:
                raise InvalidGeometry(f"lines {min(a, b)} and {max(a, b)} coincide", (min(a, b), max(a, b)))

        relation = None
        if perp is not None:
            pairs = set()
            for pair in perp:
                i, j = pair
                for x in (i, j):
                    if not 0 <= x < len(canon):
                        raise OutOfBounds(f"perp pair {tuple(pair)} names missing line {x}", (i, j))
                pairs.add(_pair(new_index[i], new_index[j]))
            relation = frozenset(pairs)

        object.__setattr__(self, "num_points", num_points)
        object.__setattr__(self, "lines", canon)
        object.__setattr__(self, "perp", relation)
        object.__setattr__(self, "_line_sets", tuple(frozenset(l) for l in canon))
        on: list[list[int]] = [[] for _ in range(num_points)]
        for li, line in enumerate(canon):
            for p in line:
                on[p].append(li)
        object.__setattr__(self, "_lines_on", tuple(tuple(x) for x in on))
        if relation is None:
            adj = None
        else:
            nbrs: list[set[int]] = [set() for _ in canon]
            for i, j in relation:
                nbrs[i].add(j)
                nbrs[j].add(i)
            adj = tuple(frozenset(x) for x in nbrs)
        object.__setattr__(self, "_perp_adj", adj)
        object.__setattr__(self, "_hash", hash((num_points, canon, relation)))

    def __setattr__(self, name, value):
        raise AttributeError("Geometry is immutable")

    def __eq__(self, other):
        if not isinstance(other, Geometry):
            return NotImplemented
        return (
            self.num_points == other.num_points
            and self.lines == other.lines
            and self.perp == other.perp
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        perp = "none" if self.perp is None else len(self.perp)
        return f"Geometry(v={self.num_points}, b={len(self.lines)}, perp={perp})"

    # -- sizes -----------------------------------------------------------

    @property
    def v(self) -> int:
        return self.num_points

    @property
    def b(self) -> int:
        return len(self.lines)

    @property
    def has_perp(self) -> bool:
        return self.perp is not None

    def points(self) -> range:
        return range(self.num_points)

    def line_ids(self) -> range:
        return range(len(self.lines))

    # -- bounds ----------------------------------------------------------

    def _point(self, p: int) -> int:
        if not 0 <= p < self.num_points:
            raise OutOfBounds(f"point {p} outside [0, {self.num_points})", (p,))
        return p

    def _line(self, l: int) -> int:
        if not 0 <= l < len(self.lines):
            raise OutOfBounds(f"line {l} outside [0, {len(self.lines)})", (l,))
        return l

    def require_perp(self) -> tuple[frozenset, ...]:
        if self._perp_adj is None:
            raise NoPerpRelation("geometry has no perpendicularity relation")
        return self._perp_adj

    # -- incidence -------------------------------------------------------

    def point_set(self, l: LineId) -> frozenset:
        return self._line_sets[self._line(l)]

    def incident(self, p: PointId, l: LineId) -> bool:
        return self._point(p) in self._line_sets[self._line(l)]

    def lines_on(self, p: PointId) -> tuple[LineId, ...]:
        """Lines through ``p`` in increasing index order."""
        return self._lines_on[self._point(p)]

    def r(self, p: PointId) -> int:
        return len(self.lines_on(p))

    def n(self, l: LineId) -> int:
        return len(self.lines[self._line(l)])

    def line_stats(self) -> list[LineStats]:
        return [LineStats(l, len(pts)) for l, pts in enumerate(self.lines)]

    def point_stats(self) -> list[PointStats]:
        return [PointStats(p, len(ls)) for p, ls in enumerate(self._lines_on)]

    def lines_through_pair(self, p: PointId, q: PointId) -> tuple[LineId, ...]:
        """All lines containing both points, without enforcing Axiom A*."""
        on_q = set(self.lines_on(q))
        return tuple(l for l in self.lines_on(p) if l in on_q)

    def line_through(self, p: PointId, q: PointId) -> Optional[LineId]:
        """The line joining two distinct points, or None if they are not collinear.

        Raises MultipleLines rather than picking one when two lines share
        both points.
        """
        if self._point(p) == self._point(q):
            raise ValueError("line_through needs two distinct points")
        found = self.lines_through_pair(p, q)
        if len(found) > 1:
            raise MultipleLines(
                f"points {p} and {q} lie on lines {found[0]} and {found[1]}",
                (p, q, found[0], found[1]),
            )
        return found[0] if found else None

    def intersect(self, l: LineId, m: LineId) -> frozenset:
        return self.point_set(l) & self.point_set(m)

    def meets(self, l: LineId, m: LineId) -> bool:
        return not self.point_set(l).isdisjoint(self.point_set(m))

    def is_thick(self, p: PointId) -> bool:
        return self.r(p) >= 3

    def collinear(self, p: PointId, q: PointId) -> bool:
        return p == q or bool(self.lines_through_pair(p, q))

    # -- perpendicularity ------------------------------------------------

    def perpendiculars_to(self, l: LineId) -> frozenset:
        return self.require_perp()[self._line(l)]

    def is_perp(self, l: LineId, m: LineId) -> bool:
        return self._line(m) in self.require_perp()[self._line(l)]

    def perps_at(self, p: PointId, l: LineId) -> tuple[LineId, ...]:
        """Lines through ``p`` perpendicular to ``l``."""
        adj = self.require_perp()[self._line(l)]
        return tuple(m for m in self.lines_on(p) if m in adj)

    # -- derivation ------------------------------------------------------

    def with_perp(self, pairs: Optional[Iterable[tuple[int, int]]]) -> "Geometry":
        """Same incidence structure with ``pairs`` (canonical line ids) as perp."""
        return Geometry(self.num_points, self.lines, pairs)

    def without_lines(self, drop: Iterable[LineId]) -> "Geometry":
        """Delete lines (and any perp pairs touching them); points are kept."""
        gone = set(drop)
        keep = [l for l in self.line_ids() if l not in gone]
        pos = {l: i for i, l in enumerate(keep)}
        perp = None
        if self.perp is not None:
            perp = [(pos[i], pos[j]) for i, j in self.perp if i in pos and j in pos]
        return Geometry(self.num_points, [self.lines[l] for l in keep], perp)

    def point_pairs(self):
        return combinations(range(self.num_points), 2)
