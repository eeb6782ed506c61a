"""Structure recovery and theorem checks on concrete geometries.

Everything here is exhaustive over the instance.  Operations that are only
meaningful for a partial Sherk plane with a line of thick points verify
that hypothesis first and raise :class:`HypothesisFailed` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .axioms import SHERK_AXIOMS, AxiomVerdict, check_axiom, check_thickness
from .errors import (
    DichotomyViolation,
    FormulaMismatch,
    HypothesisFailed,
    NoPerpFound,
    NotANet,
    NotAParallelClass,
    NotInvolution,
    NotTransitive,
    NotUnique,
    NotWellDefined,
    PerpnetError,
)
from .geometry import Geometry, LineId, PointId
from .tau import Tau


# -- parallel classes ------------------------------------------------------

@dataclass(frozen=True)
class ParallelClasses:
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def parallel_classes(g: Geometry) -> ParallelClasses:
    """Partition lines under "equal or disjoint", ordered by least member.

    Raises NotTransitive with ``(l, m, h)`` such that l ∥ m, m ∥ h but l and
    h meet, when the relation is not an equivalence.
    """
    class_of = [-1] * g.b
    classes = []
    for l in g.line_ids():
        if class_of[l] >= 0:
            continue
        members = [l] + [m for m in range(l + 1, g.b) if class_of[m] < 0 and not g.meets(l, m)]
        for m in members:
            class_of[m] = len(classes)
        classes.append(tuple(members))

    for members in classes:
        lead = members[0]
        for m, h in combinations(members[1:], 2):
            if g.meets(m, h):
                raise NotTransitive(f"lines {m} ∥ {lead} ∥ {h} but {m} meets {h}", (m, lead, h))
        for m in members[1:]:
            for h in g.line_ids():
                if class_of[h] != class_of[m] and not g.meets(m, h):
                    raise NotTransitive(f"lines {h} ∥ {m} ∥ {lead} but {h} meets {lead}", (h, m, lead))
    return ParallelClasses(tuple(classes), tuple(class_of))


# -- net parameters --------------------------------------------------------

@dataclass(frozen=True)
class NetParams:
    n: int
    r: int
    v: int
    b: int
    num_classes: int

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "v": self.v, "b": self.b, "num_classes": self.num_classes}


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    holds: bool
    witness: tuple = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "holds": self.holds, "witness": list(self.witness), "detail": self.detail}


# Order matters: the line size is established first, then the point degree.
NET_PROPERTIES = (
    "points_per_line",
    "lines_per_point",
    "num_classes",
    "lines_per_class",
    "total_points",
    "total_lines",
    "distinct_classes_meet_once",
    "one_line_per_class_at_point",
)


def net_property_checks(g: Geometry) -> tuple[list[PropertyCheck], Optional[NetParams]]:
    """Run the eight finite-net properties one by one, stopping at the first failure.

    Returns the checks performed and, if all passed, the parameters.
    """
    checks: list[PropertyCheck] = []

    def record(name, holds, witness=(), detail=""):
        checks.append(PropertyCheck(name, holds, tuple(witness), detail))
        return holds

    if g.b == 0 or g.num_points == 0:
        record("points_per_line", False, (), "degenerate geometry")
        return checks, None

    n = g.n(0)
    bad = next((l for l in g.line_ids() if g.n(l) != n), None)
    if not record("points_per_line", bad is None, () if bad is None else (0, bad),
                  f"n={n}" if bad is None else f"line 0 has {n} points, line {bad} has {g.n(bad)}"):
        return checks, None

    r = g.r(0)
    bad = next((p for p in g.points() if g.r(p) != r), None)
    if not record("lines_per_point", bad is None, () if bad is None else (0, bad),
                  f"r={r}" if bad is None else f"point 0 is on {r} lines, point {bad} on {g.r(bad)}"):
        return checks, None

    try:
        pc = parallel_classes(g)
    except NotTransitive as exc:
        record("num_classes", False, exc.witness, str(exc))
        return checks, None
    if not record("num_classes", len(pc) == r, () if len(pc) == r else (len(pc),),
                  f"{len(pc)} parallel classes, r={r}"):
        return checks, None

    bad = next((c for c, members in enumerate(pc.classes) if len(members) != n), None)
    if not record("lines_per_class", bad is None, () if bad is None else (bad,),
                  "" if bad is None else f"class {bad} has {len(pc.classes[bad])} lines, n={n}"):
        return checks, None

    if not record("total_points", g.v == n * n, (), f"v={g.v}, n^2={n * n}"):
        return checks, None
    if not record("total_lines", g.b == n * r, (), f"b={g.b}, nr={n * r}"):
        return checks, None

    bad = None
    for l, m in combinations(g.line_ids(), 2):
        if pc.class_of[l] != pc.class_of[m] and len(g.intersect(l, m)) != 1:
            bad = (l, m)
            break
    if not record("distinct_classes_meet_once", bad is None, bad or (),
                  "" if bad is None else f"lines {bad[0]} and {bad[1]} meet in {len(g.intersect(*bad))} points"):
        return checks, None

    bad = None
    for p in g.points():
        counts = [0] * len(pc)
        for l in g.lines_on(p):
            counts[pc.class_of[l]] += 1
        c = next((c for c, k in enumerate(counts) if k != 1), None)
        if c is not None:
            bad = (p, c)
            break
    if not record("one_line_per_class_at_point", bad is None, bad or (),
                  "" if bad is None else f"point {bad[0]} is on {counts[bad[1]]} lines of class {bad[1]}"):
        return checks, None

    return checks, NetParams(n=n, r=r, v=g.v, b=g.b, num_classes=len(pc))


def net_parameters(g: Geometry) -> NetParams:
    checks, params = net_property_checks(g)
    if params is None:
        failed = checks[-1]
        raise NotANet(f"{failed.name}: {failed.detail}", failed.witness, prop=failed.name)
    return params


# -- hypotheses ------------------------------------------------------------

@lru_cache(maxsize=128)
def _hypothesis_verdicts(g: Geometry) -> tuple[AxiomVerdict, ...]:
    if not g.has_perp:
        return ()
    verdicts = [check_axiom(g, a) for a in SHERK_AXIOMS]
    verdicts.append(check_thickness(g)[0])
    return tuple(verdicts)


def _first_failed_hypothesis(g: Geometry, thick: bool = True) -> Optional[AxiomVerdict]:
    if not g.has_perp:
        return AxiomVerdict("perp", False, (), "geometry has no perpendicularity relation")
    for v in _hypothesis_verdicts(g):
        if v.axiom == "THICK_LINE" and not thick:
            continue
        if not v.holds:
            return v
    return None


def is_partial_sherk(g: Geometry) -> bool:
    return _first_failed_hypothesis(g, thick=False) is None


def require_hypotheses(g: Geometry, thick: bool = True) -> None:
    """Raise HypothesisFailed unless g is a partial Sherk plane (with a thick line)."""
    failed = _first_failed_hypothesis(g, thick)
    if failed is not None:
        raise HypothesisFailed(
            f"hypothesis {failed.axiom} fails: {failed.detail}",
            failed.witness or (),
            hypothesis=failed.axiom,
        )


# -- poles and polars ------------------------------------------------------

@dataclass(frozen=True)
class PolePolarCensus:
    poles_of: tuple[frozenset, ...]
    polars_of: tuple[frozenset, ...]
    N: Optional[int]
    M: Optional[int]
    dichotomy_checked: bool = False

    def is_empty(self) -> bool:
        return not any(self.poles_of)

    def total_poles(self) -> int:
        return sum(len(s) for s in self.poles_of)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "M": self.M,
            "total_pole_incidences": self.total_poles(),
            "lines_with_poles": [l for l, s in enumerate(self.poles_of) if s],
            "dichotomy_checked": self.dichotomy_checked,
        }


def _constant(values: list[int]) -> Optional[int]:
    if values and all(x == values[0] for x in values):
        return values[0]
    return None


def pole_polar_census(g: Geometry) -> PolePolarCensus:
    """Poles by the raw definition: P off l with at least two perpendiculars to l.

    On partial Sherk planes, every pole is additionally checked to have all
    of its lines perpendicular to l (DichotomyViolation otherwise).
    """
    g.require_perp()
    poles: list[set] = [set() for _ in g.line_ids()]
    polars: list[set] = [set() for _ in g.points()]
    for l in g.line_ids():
        pts = g.point_set(l)
        for p in g.points():
            if p not in pts and len(g.perps_at(p, l)) >= 2:
                poles[l].add(p)
                polars[p].add(l)

    check = is_partial_sherk(g)
    if check:
        for l in g.line_ids():
            for p in sorted(poles[l]):
                if len(g.perps_at(p, l)) != g.r(p):
                    off = next(m for m in g.lines_on(p) if not g.is_perp(m, l))
                    raise DichotomyViolation(
                        f"point {p} has several perpendiculars to line {l} but line {off} through it is not",
                        (p, l, off),
                    )
    return PolePolarCensus(
        tuple(frozenset(s) for s in poles),
        tuple(frozenset(s) for s in polars),
        _constant([len(s) for s in poles]),
        _constant([len(s) for s in polars]),
        dichotomy_checked=check,
    )


# -- counting formulas -----------------------------------------------------

@dataclass
class CountingReport:
    n: int
    r: int
    v: int
    b: int
    N: Optional[int]
    M: Optional[int]
    checks: list[PropertyCheck]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "r": self.r, "v": self.v, "b": self.b, "N": self.N, "M": self.M,
            "holds": self.holds,
            "checks": [c.to_dict() for c in self.checks],
        }


def _exact_quotient(num: int, den: int) -> Optional[int]:
    if den == 0 or num % den:
        return None
    return num // den


def evaluate_counting_formulas(
    n: int, r: int, v: int, b: int, pole_counts: list[int], polar_counts: list[int]
) -> tuple[list[PropertyCheck], Optional[int], Optional[int]]:
    """Compare observed pole/polar counts with the closed forms.

    Pure arithmetic, so it can be fed hand-made numbers.  Returns the
    checks and the common pole count N and polar count M (None if not
    constant).
    """
    checks = []
    N = _constant(pole_counts)
    M = _constant(polar_counts)
    n_formula = _exact_quotient(n * n - v, r - 1)
    m_formula = _exact_quotient(n * r - b, r - 1)
    checks.append(PropertyCheck(
        "poles_formula", n_formula is not None and N == n_formula, (),
        f"N observed {N}, (n^2-v)/(r-1) = ({n * n}-{v})/{r - 1}"
        + ("" if n_formula is not None else " is not an integer"),
    ))
    checks.append(PropertyCheck(
        "polars_formula", m_formula is not None and M == m_formula, (),
        f"M observed {M}, (nr-b)/(r-1) = ({n * r}-{b})/{r - 1}"
        + ("" if m_formula is not None else " is not an integer"),
    ))
    checks.append(PropertyCheck(
        "flag_identity", N is not None and M is not None and N * r == M * n, (),
        f"N*r = {None if N is None else N * r}, M*n = {None if M is None else M * n}",
    ))
    if any(pole_counts):
        checks.append(PropertyCheck("pole_forces_r_lt_n", r < n, (), f"r={r}, n={n}"))
        checks.append(PropertyCheck(
            "pole_lower_bound", N is not None and n - r + 1 <= N, (), f"n-r+1={n - r + 1}, N={N}"
        ))
    return checks, N, M


def check_counting_formulas(g: Geometry) -> CountingReport:
    require_hypotheses(g)
    n_vals = [g.n(l) for l in g.line_ids()]
    r_vals = [g.r(p) for p in g.points()]
    n, r = _constant(n_vals), _constant(r_vals)
    if n is None:
        bad = next(l for l in g.line_ids() if n_vals[l] != n_vals[0])
        raise HypothesisFailed(f"line sizes differ: line 0 has {n_vals[0]}, line {bad} has {n_vals[bad]}",
                               (0, bad), hypothesis="constant_n")
    if r is None:
        bad = next(p for p in g.points() if r_vals[p] != r_vals[0])
        raise HypothesisFailed(f"point degrees differ: point 0 has {r_vals[0]}, point {bad} has {r_vals[bad]}",
                               (0, bad), hypothesis="constant_r")
    census = pole_polar_census(g)
    checks, N, M = evaluate_counting_formulas(
        n, r, g.v, g.b, [len(s) for s in census.poles_of], [len(s) for s in census.polars_of]
    )
    report = CountingReport(n, r, g.v, g.b, N, M, checks)
    if not report.holds:
        failed = next(c for c in checks if not c.holds)
        raise FormulaMismatch(f"{failed.name}: {failed.detail}")
    return report


# -- perpendiculars --------------------------------------------------------

def unique_perpendicular(g: Geometry, p: PointId, l: LineId) -> LineId:
    require_hypotheses(g)
    found = g.perps_at(p, l)
    if not found:
        raise NoPerpFound(f"no perpendicular to line {l} through point {p}", (p, l))
    if len(found) > 1:
        raise NotUnique(f"point {p} has perpendiculars {list(found)} to line {l}", (p, l) + found)
    return found[0]


@dataclass
class ParallelPerpReport:
    holds: bool
    pairs_checked: int
    counterexample: Optional[tuple[int, int]] = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "pairs_checked": self.pairs_checked,
            "counterexample": None if self.counterexample is None else list(self.counterexample),
            "detail": self.detail,
        }


def _parallel_iff_common_perp(g: Geometry) -> ParallelPerpReport:
    count = 0
    for l, m in combinations(g.line_ids(), 2):
        count += 1
        parallel = not g.meets(l, m)
        common = not g.perpendiculars_to(l).isdisjoint(g.perpendiculars_to(m))
        if parallel != common:
            kind = "disjoint without" if parallel else "meeting with"
            return ParallelPerpReport(False, count, (l, m), f"lines {l} and {m} are {kind} a common perpendicular")
    return ParallelPerpReport(True, count)


def check_parallel_iff_common_perp(g: Geometry) -> ParallelPerpReport:
    require_hypotheses(g)
    return _parallel_iff_common_perp(g)


# -- tau recovery ----------------------------------------------------------

def extract_tau(g: Geometry) -> Tau:
    """Recover the class involution inducing perpendicularity."""
    require_hypotheses(g)
    pc = parallel_classes(g)
    class_sets = {frozenset(c): i for i, c in enumerate(pc.classes)}
    target = [None] * len(pc)
    source = [None] * len(pc)
    for l in g.line_ids():
        xl = g.perpendiculars_to(l)
        t = class_sets.get(xl)
        if t is None:
            raise NotAParallelClass(f"perpendiculars of line {l} are not a parallel class", (l,))
        c = pc.class_of[l]
        if target[c] is None:
            target[c], source[c] = t, l
        elif target[c] != t:
            raise NotWellDefined(f"class-mates {source[c]} and {l} have different perpendicular classes",
                                 (source[c], l))
    if len(set(target)) != len(target):
        raise NotInvolution(f"class map {target} is not a bijection", tuple(target))
    return Tau(tuple(target)).validate()


# -- net and tau round trip ----------------------------------------------

@dataclass
class Stage:
    name: str
    passed: bool
    detail: str = ""
    witness: tuple = ()
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {"stage": self.name, "passed": self.passed, "detail": self.detail,
                "witness": list(self.witness), "error": self.error}


@dataclass
class RoundTripReport:
    tau: Tau
    stages: list[Stage] = field(default_factory=list)
    recovered: Optional[Tau] = None
    params: Optional[NetParams] = None

    @property
    def passed(self) -> bool:
        return bool(self.stages) and all(s.passed for s in self.stages) and self.stages[-1].name == "extract"

    def to_dict(self) -> dict:
        return {
            "tau": self.tau.pairs(),
            "passed": self.passed,
            "params": None if self.params is None else self.params.to_dict(),
            "recovered": None if self.recovered is None else self.recovered.pairs(),
            "stages": [s.to_dict() for s in self.stages],
        }


def verify_theorem_roundtrip(net: Geometry, tau: Tau) -> RoundTripReport:
    """Net + tau -> perpendicularity -> axioms -> net again -> tau again.

    Stops at the first failing stage; the report records why.
    """
    from .axioms import BRUCK_NET, PARTIAL_SHERK_PLANE, classify
    from .constructions import attach_perpendicularity

    report = RoundTripReport(tau)

    def fail(name: str, exc: PerpnetError) -> RoundTripReport:
        report.stages.append(Stage(name, False, str(exc), exc.witness, exc.name))
        return report

    try:
        params = net_parameters(net)
    except PerpnetError as exc:
        return fail("net", exc)
    report.params = params
    report.stages.append(Stage("net", True, f"(n, r) = ({params.n}, {params.r})"))

    try:
        sherk = attach_perpendicularity(net, tau)
    except PerpnetError as exc:
        return fail("attach", exc)
    report.stages.append(Stage("attach", True, f"{len(sherk.perp)} perpendicular pairs"))

    cls = classify(sherk)
    thick = cls.verdicts["THICK_LINE"]
    if not cls.has(PARTIAL_SHERK_PLANE) or not thick.holds:
        bad = next(v for a, v in cls.verdicts.items() if a in SHERK_AXIOMS + ("THICK_LINE",) and not v.holds)
        report.stages.append(Stage("classify", False, f"{bad.axiom} fails: {bad.detail}", bad.witness or ()))
        return report
    report.stages.append(Stage("classify", True, "partial Sherk plane with a line of thick points"))

    if not cls.has(BRUCK_NET) or cls.net_params is None:
        bad = next((v for a, v in cls.verdicts.items() if a in ("A*", "N1", "N2", "N3") and not v.holds), None)
        detail = "net axioms fail" if bad is None else f"{bad.axiom} fails: {bad.detail}"
        report.stages.append(Stage("rederive", False, detail, () if bad is None else bad.witness))
        return report
    again = cls.net_params
    if (again.n, again.r) != (params.n, params.r):
        report.stages.append(Stage("rederive", False, f"(n, r) changed to ({again.n}, {again.r})"))
        return report
    report.stages.append(Stage("rederive", True, f"(n, r) = ({again.n}, {again.r})"))

    try:
        got = extract_tau(sherk)
    except PerpnetError as exc:
        return fail("extract", exc)
    report.recovered = got
    report.stages.append(Stage("extract", got == tau, f"recovered {got}, expected {tau}"))
    return report


# -- lemma battery ---------------------------------------------------------

@dataclass
class LemmaCheck:
    key: str
    name: str
    holds: Optional[bool]
    witness: tuple = ()
    detail: str = ""

    def to_dict(self) -> dict:
        return {"key": self.key, "name": self.name, "holds": self.holds,
                "witness": list(self.witness), "detail": self.detail}


@dataclass
class BatteryReport:
    checks: list[LemmaCheck]
    thick_line: bool

    @property
    def holds(self) -> bool:
        return all(c.holds is not False for c in self.checks)

    def get(self, key: str) -> LemmaCheck:
        return next(c for c in self.checks if c.key == key)

    def to_dict(self) -> dict:
        return {"holds": self.holds, "thick_line": self.thick_line,
                "checks": [c.to_dict() for c in self.checks]}


def _non_collinear_triple(g: Geometry) -> Optional[tuple[int, int, int]]:
    for l in g.line_ids():
        pts = g.lines[l]
        if len(pts) < 2:
            continue
        p, q = pts[0], pts[1]
        off = next((x for x in g.points() if x not in g.point_set(l)), None)
        if off is not None:
            return (p, q, off)
    return None


def lemma_battery(g: Geometry) -> BatteryReport:
    """Check every consequence of the partial-Sherk axioms on one instance.

    Items a-e and k need only the axioms; f-j also need a line of thick
    points and are reported with ``holds=None`` when it is missing.
    """
    require_hypotheses(g, thick=False)
    checks: list[LemmaCheck] = []
    census = pole_polar_census(g)

    triple = _non_collinear_triple(g)
    big = next((l for l in g.line_ids() if g.n(l) >= 3), None)
    checks.append(LemmaCheck(
        "a", "three non-collinear points and a line with three points",
        triple is not None and big is not None,
        (triple or ()) + (() if big is None else (big,)),
    ))

    selfp = next((l for l in g.line_ids() if g.is_perp(l, l)), None)
    checks.append(LemmaCheck("b", "no line is perpendicular to itself", selfp is None,
                             () if selfp is None else (selfp,)))

    odd = next((p for p in g.points() if g.r(p) % 2), None)
    checks.append(LemmaCheck("c", "every point lies on an even number of lines", odd is None,
                             () if odd is None else (odd,)))

    bad = next((l for l in g.line_ids() if len(g.perpendiculars_to(l)) != g.n(l)), None)
    checks.append(LemmaCheck("d", "each line has as many perpendiculars as points", bad is None,
                             () if bad is None else (bad,)))

    bad = next(((l, m) for l, m in combinations(g.line_ids(), 2)
                if not g.is_perp(l, m) and g.n(l) != g.n(m)), None)
    checks.append(LemmaCheck("e", "non-perpendicular lines have equal size", bad is None, bad or ()))

    bad = None
    for l in g.line_ids():
        for h in sorted(g.perpendiculars_to(l)):
            meet = g.intersect(l, h)
            if len(meet) != 1:
                continue
            (p,) = meet
            on_h = len(census.poles_of[l] & g.point_set(h))
            if on_h != len(census.polars_of[p]):
                bad = (l, h, p)
                break
        if bad:
            break
    checks.append(LemmaCheck("k", "poles of l on a perpendicular h match polars of their meet",
                             bad is None, bad or ()))

    thick = check_thickness(g)[0].holds
    if not thick:
        for key, name in (
            ("f", "constant n >= 3 and constant r"),
            ("g", "every point is thick"),
            ("h", "no line has a pole"),
            ("i", "parallel iff common perpendicular"),
            ("j", "Axiom N1 holds"),
        ):
            checks.append(LemmaCheck(key, name, None, (), "skipped: no line of thick points"))
        return BatteryReport(sorted(checks, key=lambda c: c.key), False)

    n = _constant([g.n(l) for l in g.line_ids()])
    r = _constant([g.r(p) for p in g.points()])
    checks.append(LemmaCheck("f", "constant n >= 3 and constant r",
                             n is not None and n >= 3 and r is not None, (), f"n={n}, r={r}"))

    thin = next((p for p in g.points() if g.r(p) < 3), None)
    checks.append(LemmaCheck("g", "every point is thick", thin is None, () if thin is None else (thin,)))

    pole_line = next((l for l in g.line_ids() if census.poles_of[l]), None)
    checks.append(LemmaCheck("h", "no line has a pole", pole_line is None,
                             () if pole_line is None else (pole_line, min(census.poles_of[pole_line]))))

    pp = _parallel_iff_common_perp(g)
    checks.append(LemmaCheck("i", "parallel iff common perpendicular", pp.holds,
                             pp.counterexample or (), f"{pp.pairs_checked} pairs"))

    n1 = check_axiom(g, "N1")
    checks.append(LemmaCheck("j", "Axiom N1 holds", n1.holds, n1.witness or ()))
    return BatteryReport(sorted(checks, key=lambda c: c.key), True)
