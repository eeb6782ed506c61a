"""Exhaustive, witness-producing axiom checks.

Each check scans its quantifier domain in canonical index order and stops at
the first counterexample, so a failure witness is the lexicographically
smallest one.  Witness shapes:

    A          (p, q) with no common line, or (p, q, l1, l2) on two lines
    A*         (p, q, l1, l2)
    B1         (l, m) with l ⊥ m but not m ⊥ l
    B2         (l, m) perpendicular with no common point
    B3         (P, l) with no perpendicular to l through P
    B4         (P, l) with none, or (P, l, m1, m2) with two
    B5         success witness (x, y, z); () on failure (search exhausted)
    N1         (l, P) with no parallel, or (l, P, m1, m2) with two
    N2         (l,)  fewer than two points off l; () for a degenerate geometry
    N3         (P,)  fewer than two lines off P; () for a degenerate geometry
    THICK_LINE the least thin point of every line, in line order
    ALL_THICK  (P,) the least thin point
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from .errors import GeometryError, NoPerpRelation
from .geometry import Geometry

if TYPE_CHECKING:
    from .analysis import NetParams

SHERK_AXIOMS = ("A*", "B1", "B2", "B3", "B4", "B5")
NET_AXIOMS = ("A*", "N1", "N2", "N3")
ALL_AXIOMS = ("A", "A*", "B1", "B2", "B3", "B4", "B5", "N1", "N2", "N3", "THICK_LINE", "ALL_THICK")
PERP_AXIOMS = frozenset({"B1", "B2", "B3", "B4", "B5"})

PARTIAL_LINEAR_SPACE = "PartialLinearSpace"
LINEAR_SPACE = "LinearSpace"
PARTIAL_SHERK_PLANE = "PartialSherkPlane"
SHERK_PLANE = "SherkPlane"
BRUCK_NET = "BruckNet"
EVEN_DEGREE_NET = "EvenDegreeNet"
CLASS_ORDER = (
    PARTIAL_LINEAR_SPACE,
    LINEAR_SPACE,
    PARTIAL_SHERK_PLANE,
    SHERK_PLANE,
    BRUCK_NET,
    EVEN_DEGREE_NET,
)


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    holds: bool
    witness: Optional[tuple[int, ...]] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "holds": self.holds,
            "witness": None if self.witness is None else list(self.witness),
            "detail": self.detail,
        }


def _ok(axiom: str) -> AxiomVerdict:
    return AxiomVerdict(axiom, True)


def _fail(axiom: str, witness: tuple, detail: str) -> AxiomVerdict:
    return AxiomVerdict(axiom, False, tuple(witness), detail)


def _degenerate(g: Geometry) -> bool:
    return g.num_points == 0 or g.b == 0


# -- incidence axioms ------------------------------------------------------

def _check_a(g: Geometry) -> AxiomVerdict:
    for p, q in g.point_pairs():
        found = g.lines_through_pair(p, q)
        if not found:
            return _fail("A", (p, q), f"points {p} and {q} lie on no common line")
        if len(found) > 1:
            return _fail("A", (p, q, found[0], found[1]), f"points {p} and {q} lie on lines {found[0]} and {found[1]}")
    return _ok("A")


def _check_a_star(g: Geometry) -> AxiomVerdict:
    for p, q in g.point_pairs():
        found = g.lines_through_pair(p, q)
        if len(found) > 1:
            return _fail("A*", (p, q, found[0], found[1]), f"points {p} and {q} lie on lines {found[0]} and {found[1]}")
    return _ok("A*")


# -- perpendicularity axioms ----------------------------------------------

def _check_b1(g: Geometry) -> AxiomVerdict:
    # perp is stored as unordered pairs, so this only guards the adjacency index.
    for l in g.line_ids():
        for m in sorted(g.perpendiculars_to(l)):
            if not g.is_perp(m, l):
                return _fail("B1", (l, m), f"line {l} ⊥ {m} but not {m} ⊥ {l}")
    return _ok("B1")


def _check_b2(g: Geometry) -> AxiomVerdict:
    for l in g.line_ids():
        for m in sorted(g.perpendiculars_to(l)):
            if not g.meets(l, m):
                return _fail("B2", (l, m), f"perpendicular lines {l} and {m} share no point")
    return _ok("B2")


def _check_b3(g: Geometry) -> AxiomVerdict:
    for p in g.points():
        for l in g.line_ids():
            if not g.perps_at(p, l):
                return _fail("B3", (p, l), f"no line through point {p} is perpendicular to line {l}")
    return _ok("B3")


def _check_b4(g: Geometry) -> AxiomVerdict:
    for p in g.points():
        for l in g.lines_on(p):
            found = g.perps_at(p, l)
            if not found:
                return _fail("B4", (p, l), f"no perpendicular to line {l} at point {p}")
            if len(found) > 1:
                return _fail("B4", (p, l, found[0], found[1]), f"lines {found[0]} and {found[1]} are both perpendicular to line {l} at point {p}")
    return _ok("B4")


def find_b5_witness(g: Geometry) -> Optional[tuple[int, int, int]]:
    """First ordered triple (x, y, z) satisfying Axiom B5, or None."""
    for x in g.line_ids():
        px = g.point_set(x)
        perp_x = g.perpendiculars_to(x)
        for y in sorted(perp_x):
            perp_y = g.perpendiculars_to(y)
            pxy = px & g.point_set(y)
            for z in g.line_ids():
                if z in perp_x or z in perp_y:
                    continue
                if pxy.isdisjoint(g.point_set(z)):
                    return (x, y, z)
    return None


def _check_b5(g: Geometry) -> AxiomVerdict:
    found = find_b5_witness(g)
    if found is None:
        return _fail("B5", (), "no triple x ⊥ y, z ⊥̸ x, z ⊥̸ y without a common point exists")
    x, y, z = found
    return AxiomVerdict("B5", True, found, f"x={x} ⊥ y={y}, z={z}")


# -- net axioms ------------------------------------------------------------

def _check_n1(g: Geometry) -> AxiomVerdict:
    for l in g.line_ids():
        pts = g.point_set(l)
        for p in g.points():
            if p in pts:
                continue
            found = [m for m in g.lines_on(p) if pts.isdisjoint(g.point_set(m))]
            if not found:
                return _fail("N1", (l, p), f"no line through point {p} misses line {l}")
            if len(found) > 1:
                return _fail("N1", (l, p, found[0], found[1]), f"lines {found[0]} and {found[1]} through point {p} both miss line {l}")
    return _ok("N1")


def _check_n2(g: Geometry) -> AxiomVerdict:
    if _degenerate(g):
        return _fail("N2", (), "degenerate geometry (no points or no lines)")
    for l in g.line_ids():
        if g.num_points - g.n(l) < 2:
            return _fail("N2", (l,), f"line {l} misses fewer than two points")
    return _ok("N2")


def _check_n3(g: Geometry) -> AxiomVerdict:
    if _degenerate(g):
        return _fail("N3", (), "degenerate geometry (no points or no lines)")
    for p in g.points():
        if g.b - g.r(p) < 2:
            return _fail("N3", (p,), f"point {p} is off fewer than two lines")
    return _ok("N3")


# -- thickness -------------------------------------------------------------

def check_thickness(g: Geometry) -> tuple[AxiomVerdict, AxiomVerdict]:
    """Verdicts for THICK_LINE (some line has only thick points) and ALL_THICK."""
    thin_per_line = []
    thick_line = None
    for l, pts in enumerate(g.lines):
        thin = next((p for p in pts if g.r(p) < 3), None)
        if thin is None:
            thick_line = l
            break
        thin_per_line.append(thin)
    if thick_line is not None:
        tl = AxiomVerdict("THICK_LINE", True, None, f"line {thick_line} has only thick points")
    else:
        tl = _fail("THICK_LINE", tuple(thin_per_line), "every line carries a thin point")

    thin_point = next((p for p in g.points() if g.r(p) < 3), None)
    if thin_point is None:
        at = _ok("ALL_THICK")
    else:
        at = _fail("ALL_THICK", (thin_point,), f"point {thin_point} lies on {g.r(thin_point)} lines")
    return tl, at


_CHECKS = {
    "A": _check_a,
    "A*": _check_a_star,
    "B1": _check_b1,
    "B2": _check_b2,
    "B3": _check_b3,
    "B4": _check_b4,
    "B5": _check_b5,
    "N1": _check_n1,
    "N2": _check_n2,
    "N3": _check_n3,
    "THICK_LINE": lambda g: check_thickness(g)[0],
    "ALL_THICK": lambda g: check_thickness(g)[1],
}


def check_axiom(g: Geometry, which: str) -> AxiomVerdict:
    if which not in _CHECKS:
        raise ValueError(f"unknown axiom {which!r}; expected one of {', '.join(ALL_AXIOMS)}")
    if which in PERP_AXIOMS and not g.has_perp:
        raise NoPerpRelation(f"axiom {which} needs a perpendicularity relation")
    return _CHECKS[which](g)


def check_axioms(g: Geometry, which) -> dict[str, AxiomVerdict]:
    return {a: check_axiom(g, a) for a in which}


def validate_witness(g: Geometry, verdict: AxiomVerdict) -> bool:
    """Independently re-check that a verdict's witness demonstrates its claim."""
    w = verdict.witness
    a = verdict.axiom
    if verdict.holds and a != "B5":
        return w is None
    if w is None:
        return False
    try:
        if a in ("A", "A*"):
            if len(w) == 2:
                p, q = w
                return a == "A" and p != q and not g.lines_through_pair(p, q)
            p, q, l1, l2 = w
            return p != q and l1 != l2 and all(g.incident(x, l) for x in (p, q) for l in (l1, l2))
        if a == "B1":
            l, m = w
            return g.is_perp(l, m) and not g.is_perp(m, l)
        if a == "B2":
            l, m = w
            return g.is_perp(l, m) and not g.intersect(l, m)
        if a == "B3":
            p, l = w
            return not any(g.is_perp(m, l) for m in g.line_ids() if g.incident(p, m))
        if a == "B4":
            p, l = w[:2]
            if not g.incident(p, l):
                return False
            perps = [m for m in g.line_ids() if g.incident(p, m) and g.is_perp(m, l)]
            if len(w) == 2:
                return not perps
            return w[2] != w[3] and set(w[2:]) <= set(perps)
        if a == "B5":
            if verdict.holds:
                x, y, z = w
                return (
                    g.is_perp(x, y)
                    and not g.is_perp(x, z)
                    and not g.is_perp(y, z)
                    and not (g.point_set(x) & g.point_set(y) & g.point_set(z))
                )
            return w == () and find_b5_witness(g) is None
        if a == "N1":
            l, p = w[:2]
            if g.incident(p, l):
                return False
            par = [m for m in g.line_ids() if g.incident(p, m) and not g.intersect(m, l)]
            if len(w) == 2:
                return not par
            return w[2] != w[3] and set(w[2:]) <= set(par)
        if a == "N2":
            if w == ():
                return _degenerate(g)
            (l,) = w
            return sum(1 for p in g.points() if not g.incident(p, l)) < 2
        if a == "N3":
            if w == ():
                return _degenerate(g)
            (p,) = w
            return sum(1 for l in g.line_ids() if not g.incident(p, l)) < 2
        if a == "THICK_LINE":
            return len(w) == g.b and all(g.incident(p, l) and g.r(p) < 3 for l, p in enumerate(w))
        if a == "ALL_THICK":
            (p,) = w
            return g.r(p) < 3
    except (ValueError, LookupError, GeometryError):
        return False
    return False


@dataclass
class ClassificationReport:
    verdicts: dict[str, AxiomVerdict]
    classes: frozenset[str]
    net_params: Optional["NetParams"] = None
    skipped: tuple[str, ...] = field(default=())

    def has(self, cls: str) -> bool:
        return cls in self.classes

    def to_dict(self) -> dict:
        return {
            "verdicts": [v.to_dict() for v in self.verdicts.values()],
            "classes": [c for c in CLASS_ORDER if c in self.classes],
            "net_params": None if self.net_params is None else self.net_params.to_dict(),
            "skipped": list(self.skipped),
        }


def classify(g: Geometry) -> ClassificationReport:
    """Evaluate every applicable axiom and derive the structure classes.

    Perpendicularity axioms are skipped (and listed in ``skipped``) when the
    geometry has no perpendicularity relation.
    """
    from .analysis import net_parameters

    which = [a for a in ALL_AXIOMS if g.has_perp or a not in PERP_AXIOMS]
    verdicts = check_axioms(g, which)
    skipped = tuple(a for a in ALL_AXIOMS if a not in verdicts)
    holds = {a: v.holds for a, v in verdicts.items()}

    classes = set()
    if holds["A*"]:
        classes.add(PARTIAL_LINEAR_SPACE)
    if holds["A"] and g.num_points > 0:
        classes.add(LINEAR_SPACE)
    if g.has_perp and all(holds[a] for a in SHERK_AXIOMS):
        classes.add(PARTIAL_SHERK_PLANE)
        if holds["A"]:
            classes.add(SHERK_PLANE)
    params = None
    if all(holds[a] for a in NET_AXIOMS):
        classes.add(BRUCK_NET)
        params = net_parameters(g)
        if params.r % 2 == 0 and params.r > 2:
            classes.add(EVEN_DEGREE_NET)
    return ClassificationReport(verdicts, frozenset(classes), params, skipped)
