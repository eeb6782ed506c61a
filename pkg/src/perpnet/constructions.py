"""Builders: affine planes, nets from latin squares, class deletion,
class-involution perpendicularity, and the thin-point extensions G_k / G_k*.

Every builder that promises an axiom system on its output re-checks it
exhaustively before returning (``verify=False`` skips that for speed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .analysis import NetParams, net_parameters, parallel_classes
from .axioms import NET_AXIOMS, SHERK_AXIOMS, check_axiom
from .errors import (
    BadClassIndex,
    ConstructionError,
    DegenerateResult,
    DegreeTwo,
    NotANet,
    NotLatin,
    NotOrthogonal,
    NotPartialSherk,
    NotPrime,
    OddDegree,
    StarRequiresEvenK,
)
from .geometry import Geometry
from .tau import Tau


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


# -- affine planes ---------------------------------------------------------

def affine_point(q: int, x: int, y: int) -> int:
    """Index of the point (x, y) of AG(2, q)."""
    return (x % q) * q + (y % q)


def build_affine_plane(q: int) -> Geometry:
    """AG(2, q) over the prime field; point (x, y) has index ``x*q + y``."""
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime", (q,))
    lines = [[affine_point(q, c, y) for y in range(q)] for c in range(q)]
    for m in range(q):
        for c in range(q):
            lines.append([affine_point(q, x, m * x + c) for x in range(q)])
    return Geometry(q * q, lines)


# -- latin squares ---------------------------------------------------------

@dataclass(frozen=True)
class LatinSquareSet:
    order: int
    squares: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        sq = tuple(tuple(tuple(int(x) for x in row) for row in s) for s in self.squares)
        object.__setattr__(self, "squares", sq)

    def validate(self) -> "LatinSquareSet":
        n = self.order
        if n < 2:
            raise NotLatin(f"order {n} < 2", (n,))
        symbols = set(range(n))
        for s, sq in enumerate(self.squares):
            if len(sq) != n or any(len(row) != n for row in sq):
                raise NotLatin(f"square {s} is not {n}x{n}", (s,))
            for i, row in enumerate(sq):
                if set(row) != symbols:
                    raise NotLatin(f"square {s} row {i} is not a permutation of 0..{n - 1}", (s, 0, i))
            for j in range(n):
                if {sq[i][j] for i in range(n)} != symbols:
                    raise NotLatin(f"square {s} column {j} is not a permutation of 0..{n - 1}", (s, 1, j))
        for s in range(len(self.squares)):
            for t in range(s + 1, len(self.squares)):
                a, b = self.squares[s], self.squares[t]
                seen: dict[tuple[int, int], tuple[int, int]] = {}
                for i in range(n):
                    for j in range(n):
                        key = (a[i][j], b[i][j])
                        if key in seen:
                            i0, j0 = seen[key]
                            raise NotOrthogonal(
                                f"squares {s} and {t} repeat symbol pair {key} at cells ({i0},{j0}) and ({i},{j})",
                                (s, t, i0, j0, i, j),
                            )
                        seen[key] = (i, j)
        return self


def cyclic_mols(n: int, count: int) -> LatinSquareSet:
    """``count`` squares L_a[i][j] = i + a*j mod n for a = 1..count (n prime)."""
    return LatinSquareSet(n, tuple(
        tuple(tuple((i + a * j) % n for j in range(n)) for i in range(n)) for a in range(1, count + 1)
    ))


def build_net_from_mols(mols: LatinSquareSet, verify: bool = True) -> Geometry:
    """The (n, k+2)-net on the n^2 cells: rows, columns and symbol classes.

    Cell (i, j) is point ``i*n + j``.  With no squares this is the n x n grid.
    """
    mols.validate()
    n = mols.order
    lines = [[i * n + j for j in range(n)] for i in range(n)]
    lines += [[i * n + j for i in range(n)] for j in range(n)]
    for sq in mols.squares:
        for sym in range(n):
            lines.append([i * n + j for i in range(n) for j in range(n) if sq[i][j] == sym])
    g = Geometry(n * n, lines)
    if verify:
        _require_net(g)
    return g


def grid(n: int) -> Geometry:
    """The n x n grid: an (n, 2)-net."""
    return build_net_from_mols(LatinSquareSet(n, ()))


# -- nets ------------------------------------------------------------------

def _require_net(g: Geometry) -> NetParams:
    for a in NET_AXIOMS:
        v = check_axiom(g, a)
        if not v.holds:
            raise NotANet(f"axiom {a} fails: {v.detail}", v.witness or (), prop=a)
    return net_parameters(g)


def delete_parallel_classes(g: Geometry, classes: Iterable[int]) -> Geometry:
    """Remove whole parallel classes (canonical class indices) from a net.

    The remaining degree must be at least 3; the result is re-checked
    against the net axioms.
    """
    params = _require_net(g)
    drop = sorted(set(classes))
    for c in drop:
        if not 0 <= c < params.num_classes:
            raise BadClassIndex(f"class {c} outside [0, {params.num_classes})", (c,))
    if not drop:
        return g
    remaining = params.num_classes - len(drop)
    if remaining < 3:
        raise DegenerateResult(f"only {remaining} parallel classes would remain (need at least 3)", (remaining,))
    pc = parallel_classes(g)
    out = g.without_lines(l for c in drop for l in pc.classes[c])
    for a in ("N1", "N2", "N3"):
        v = check_axiom(out, a)
        if not v.holds:
            raise DegenerateResult(f"axiom {a} fails after deletion: {v.detail}", v.witness or ())
    return out


def attach_perpendicularity(g: Geometry, tau: Tau, verify: bool = True) -> Geometry:
    """Declare l ⊥ m exactly when tau sends the class of l to the class of m."""
    params = _require_net(g)
    r = params.r
    if r % 2:
        raise OddDegree(f"degree r={r} is odd: no fixed-point-free involution exists", (r,))
    if r == 2:
        raise DegreeTwo("degree r=2 cannot satisfy Axiom B5", (r,))
    if tau.r != r:
        raise ConstructionError(f"tau acts on {tau.r} classes but the net has {r}", (tau.r, r))
    tau.validate()
    pc = parallel_classes(g)
    pairs = [
        (l, m)
        for a, b in tau.pairs()
        for l in pc.classes[a]
        for m in pc.classes[b]
    ]
    out = g.with_perp(pairs)
    if verify:
        for a in SHERK_AXIOMS:
            v = check_axiom(out, a)
            if not v.holds:
                raise ConstructionError(f"attached perpendicularity violates {a}: {v.detail}", v.witness or ())
        bad = next((p for p in out.points() if out.r(p) != r), None)
        if bad is not None:
            raise ConstructionError(f"point {bad} lies on {out.r(bad)} lines, expected {r}", (bad,))
    return out


# -- thin-point extensions -------------------------------------------------

@dataclass(frozen=True)
class GkConfig:
    k: int
    starred: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if self.starred and self.k % 2:
            raise StarRequiresEvenK(f"the starred extension needs even k, got {self.k}", (self.k,))


def gk_point(g: Geometry, k: int, line: int, i: int) -> int:
    """Index of the new point on original ``line`` and new line ``i`` (0-based)."""
    return g.num_points + line * k + i


def gk_apex(g: Geometry, k: int) -> int:
    """Index of the extra point Q of the starred extension."""
    return g.num_points + g.b * k


def construct_gk(g: Geometry, cfg: GkConfig, verify: bool = True) -> Geometry:
    """Extend a partial Sherk plane by k lines of thin points.

    Each original line l gets new points P(l, i), i < k; new line g_i holds
    every P(l, i) and is perpendicular to every original line.  The starred
    variant adds a point Q on every g_i and pairs g_i ⊥ g_{k-1-i}.

    New points follow the originals in (line, i) order, then Q.  When no
    original line is a prefix of another, original lines keep their indices
    and g_i gets index ``b + i``.
    """
    if not g.has_perp:
        raise NotPartialSherk("input has no perpendicularity relation")
    for a in SHERK_AXIOMS:
        v = check_axiom(g, a)
        if not v.holds:
            raise NotPartialSherk(f"input is not a partial Sherk plane ({a} fails: {v.detail})", v.witness or ())
    k, b = cfg.k, g.b
    lines = [list(pts) + [gk_point(g, k, l, i) for i in range(k)] for l, pts in enumerate(g.lines)]
    for i in range(k):
        new = [gk_point(g, k, l, i) for l in range(b)]
        if cfg.starred:
            new.append(gk_apex(g, k))
        lines.append(new)
    perp = list(g.perp)
    perp += [(l, b + i) for l in range(b) for i in range(k)]
    if cfg.starred:
        perp += [(b + i, b + k - 1 - i) for i in range(k // 2)]
    num_points = g.num_points + b * k + (1 if cfg.starred else 0)
    out = Geometry(num_points, lines, perp)
    if verify:
        for a in SHERK_AXIOMS:
            v = check_axiom(out, a)
            if not v.holds:
                raise ConstructionError(f"extension violates {a}: {v.detail}", v.witness or ())
    return out


def construct_gk_star(g: Geometry, k: int, verify: bool = True) -> Geometry:
    return construct_gk(g, GkConfig(k, starred=True), verify)


def corpus_nets() -> dict[str, Geometry]:
    """The standard small nets used throughout the checks, by name."""
    ag5 = build_affine_plane(5)
    return {
        "AG(2,3)": build_affine_plane(3),
        "AG(2,5)": ag5,
        "AG(2,7)": build_affine_plane(7),
        "AG(2,5)-2": delete_parallel_classes(ag5, [4, 5]),
        "MOLS(3,2)": build_net_from_mols(cyclic_mols(3, 2)),
    }
