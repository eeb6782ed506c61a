"""Command line interface: ``perpnet gen|check|analyze|export-dot``.

Exit codes: 0 success, 1 axiom/classification failure, 2 input or parse
error, 3 construction precondition error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import analysis
from .axioms import (
    ALL_AXIOMS,
    NET_AXIOMS,
    PERP_AXIOMS,
    SHERK_AXIOMS,
    AxiomVerdict,
    check_axiom,
    classify,
)
from .constructions import (
    GkConfig,
    attach_perpendicularity,
    build_affine_plane,
    build_net_from_mols,
    construct_gk,
    delete_parallel_classes,
)
from .errors import ConstructionError, NotInvolution, ParseError, PerpnetError, HasFixedPoint
from .formats import GeometryDocument, RunReport, emit_document, export_dot, parse_document, parse_mols
from .geometry import Geometry
from .tau import Tau

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CONSTRUCTION = 3

PROFILES = {
    "sherk": SHERK_AXIOMS,
    "net": NET_AXIOMS,
    "all": ALL_AXIOMS,
}


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _load(path: str) -> GeometryDocument:
    try:
        return parse_document(_read(path))
    except ParseError as exc:
        raise InputError(f"{path}:{exc}") from exc


def _write(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _diag(msg: str) -> None:
    print(msg, file=sys.stderr)


# -- gen -------------------------------------------------------------------

def _affine_labels(q: int) -> dict[int, str]:
    return {x * q + y: f"({x},{y})" for x in range(q) for y in range(q)}


def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    labels: dict[int, str] = {}
    line_labels: dict[int, str] = {}
    if kind == "affine":
        try:
            q = int(args.source)
        except ValueError:
            raise InputError(f"affine order must be an integer, got {args.source!r}") from None
        g = build_affine_plane(q)
        labels = _affine_labels(q)
    elif kind == "mols":
        try:
            mols = parse_mols(_read(args.source))
        except ParseError as exc:
            raise InputError(f"{args.source}:{exc}") from exc
        g = build_net_from_mols(mols)
    else:
        doc = _load(args.source)
        src = doc.canonical()
        labels = src.point_labels
        g = src.to_geometry()
        if kind == "delete-classes":
            g = delete_parallel_classes(g, _int_list(args.classes))
        elif kind == "attach-tau":
            if args.tau:
                try:
                    tau = Tau.parse(args.tau)
                except ValueError as exc:
                    raise InputError(f"bad --tau: {exc}") from exc
            else:
                tau = _default_tau(g)
            g = attach_perpendicularity(g, tau)
            line_labels = src.line_labels
        elif kind in ("gk", "gk-star"):
            if args.k is None:
                raise InputError(f"gen {kind} needs --k")
            g = construct_gk(g, GkConfig(args.k, starred=kind == "gk-star"))
    _write(emit_document(GeometryDocument.from_geometry(g, labels, line_labels)), args.out)
    return EXIT_OK


def _default_tau(g: Geometry) -> Tau:
    r = analysis.net_parameters(g).r
    # An odd degree gets a placeholder; attach_perpendicularity rejects it first.
    return Tau.canonical(r) if r % 2 == 0 else Tau(tuple(range(r)))


def _int_list(text: Optional[str]) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", ",").split(",") if x]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


# -- check -----------------------------------------------------------------

def _verdict(g: Geometry, axiom: str) -> AxiomVerdict:
    if axiom in PERP_AXIOMS and not g.has_perp:
        return AxiomVerdict(axiom, False, (), "no perpendicularity relation")
    return check_axiom(g, axiom)


def check_report(doc: GeometryDocument, profile: str, command: list[str]) -> RunReport:
    start = time.perf_counter()
    g = doc.to_geometry()
    verdicts = [_verdict(g, a) for a in PROFILES[profile]]
    ok = all(v.holds for v in verdicts)
    sections: dict = {
        "profile": profile,
        "geometry": {"points": g.v, "lines": g.b, "perp_pairs": None if g.perp is None else len(g.perp)},
        "verdicts": [v.to_dict() for v in verdicts],
    }
    if profile in ("net", "all"):
        checks, params = analysis.net_property_checks(g)
        sections["net_properties"] = [c.to_dict() for c in checks]
        sections["net_params"] = None if params is None else params.to_dict()
        if profile == "net":
            ok = ok and params is not None
    if profile == "all":
        cls = classify(g)
        sections["classes"] = cls.to_dict()["classes"]
    return RunReport(command, ok, sections, time.perf_counter() - start)


def cmd_check(args: argparse.Namespace) -> int:
    doc = _load(args.input)
    report = check_report(doc, args.profile, ["check", "--profile", args.profile])
    _write(report.to_json(timing=not args.no_timing), args.out)
    if not report.ok:
        failed = [v for v in report.sections["verdicts"] if not v["holds"]]
        for v in failed:
            _diag(f"{v['axiom']} fails: {v['detail']} witness={v['witness']}")
        for c in report.sections.get("net_properties", []):
            if not c["holds"]:
                _diag(f"net property {c['name']} fails: {c['detail']} witness={c['witness']}")
    return EXIT_OK if report.ok else EXIT_FAIL


# -- analyze ---------------------------------------------------------------

def _stage(fn, *a):
    """Run an analysis step, returning (payload, error-dict)."""
    try:
        return fn(*a), None
    except PerpnetError as exc:
        return None, {"error": exc.name, "detail": str(exc), "witness": list(exc.witness),
                      **({"hypothesis": exc.hypothesis} if hasattr(exc, "hypothesis") else {})}


def analyze_report(doc: GeometryDocument, command: list[str]) -> RunReport:
    start = time.perf_counter()
    g = doc.to_geometry()
    s: dict = {"geometry": {"points": g.v, "lines": g.b,
                            "perp_pairs": None if g.perp is None else len(g.perp)}}
    ok = True

    cls = classify(g)
    s["classes"] = cls.to_dict()["classes"]

    params, err = _stage(analysis.net_parameters, g)
    s["net_params"] = params.to_dict() if params else {"skipped": err}

    pc, err = _stage(analysis.parallel_classes, g)
    s["parallel_classes"] = [list(c) for c in pc.classes] if pc else {"skipped": err}

    if not g.has_perp:
        msg = {"skipped": {"error": "NoPerpRelation", "detail": "geometry has no perpendicularity relation"}}
        for key in ("census", "counting_formulas", "parallel_iff_common_perp", "tau", "lemma_battery"):
            s[key] = msg
        return RunReport(command, ok, s, time.perf_counter() - start)

    census, err = _stage(analysis.pole_polar_census, g)
    if census is None:
        ok = False
    s["census"] = census.to_dict() if census else {"failed": err}

    hyp, hyp_err = _stage(analysis.require_hypotheses, g)
    s["hypotheses"] = {"holds": hyp_err is None, **({} if hyp_err is None else {"failed": hyp_err})}

    for key, fn in (
        ("counting_formulas", analysis.check_counting_formulas),
        ("parallel_iff_common_perp", analysis.check_parallel_iff_common_perp),
    ):
        res, err = _stage(fn, g)
        if res is not None:
            s[key] = res.to_dict()
            ok = ok and res.holds
        elif hyp_err is not None and err["error"] == "HypothesisFailed":
            s[key] = {"skipped": err}
        else:
            s[key] = {"failed": err}
            ok = False

    tau, err = _stage(analysis.extract_tau, g)
    if tau is not None:
        s["tau"] = {"pairs": [list(p) for p in tau.pairs()], "cycles": str(tau)}
    elif err["error"] == "HypothesisFailed":
        s["tau"] = {"skipped": err}
    else:
        s["tau"] = {"failed": err}
        ok = False

    battery, err = _stage(analysis.lemma_battery, g)
    if battery is not None:
        s["lemma_battery"] = battery.to_dict()
        ok = ok and battery.holds
    else:
        s["lemma_battery"] = {"skipped": err}
    return RunReport(command, ok, s, time.perf_counter() - start)


def cmd_analyze(args: argparse.Namespace) -> int:
    report = analyze_report(_load(args.input), ["analyze"])
    _write(report.to_json(timing=not args.no_timing), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_export_dot(args: argparse.Namespace) -> int:
    doc = _load(args.input).canonical()
    _write(export_dot(doc.to_geometry(), doc), args.out)
    return EXIT_OK


# -- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="perpnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="build a geometry document")
    gen.add_argument("kind", choices=["affine", "mols", "delete-classes", "attach-tau", "gk", "gk-star"])
    gen.add_argument("source", help="prime order for 'affine', otherwise an input file ('-' for stdin)")
    gen.add_argument("--classes", help="comma-separated parallel-class indices (delete-classes)")
    gen.add_argument("--tau", help="class involution, e.g. '(0 1)(2 3)' or '0-1,2-3' (attach-tau)")
    gen.add_argument("--k", type=int, help="number of new lines (gk, gk-star)")
    gen.add_argument("--out", help="write here instead of stdout")
    gen.set_defaults(func=cmd_gen)

    check = sub.add_parser("check", help="check axioms")
    check.add_argument("input")
    check.add_argument("--profile", choices=sorted(PROFILES), default="all")
    check.add_argument("--out")
    check.add_argument("--no-timing", action="store_true", help="omit the timing field")
    check.set_defaults(func=cmd_check)

    an = sub.add_parser("analyze", help="net parameters, poles, formulas, tau recovery")
    an.add_argument("input")
    an.add_argument("--out")
    an.add_argument("--no-timing", action="store_true", help="omit the timing field")
    an.set_defaults(func=cmd_analyze)

    dot = sub.add_parser("export-dot", help="render the incidence graph as DOT")
    dot.add_argument("input")
    dot.add_argument("--out")
    dot.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _diag(f"error: {exc}")
        return EXIT_INPUT
    except (ConstructionError, NotInvolution, HasFixedPoint) as exc:
        _diag(f"error: {exc.name}: {exc} witness={list(exc.witness)}")
        return EXIT_CONSTRUCTION
    except PerpnetError as exc:
        # Precondition failures of builders (e.g. input is not a net).
        _diag(f"error: {exc.name}: {exc} witness={list(exc.witness)}")
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
