"""Command-line front end.

Every subcommand reads a JSON hexapod description (or the bundled fixture
name ``example``), prints a JSON report and writes it to --out.  Exit status
is 0 on success, 2 when the mathematics says no, 1 on bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

import mpmath

from . import families as fam
from . import liaison as lia
from . import moebius as mb
from . import study as st
from .exactalg import rat, rat_str

log = logging.getLogger("hexapod_liaison")

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2


class InputError(ValueError):
    pass


class MathFailure(RuntimeError):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


@dataclass
class JobConfig:
    command: str
    input: str | None
    precision: int = 256
    den_bound: int = 10**12
    out: Path | None = None
    pairs: tuple = st.DEFAULT_PAIRS
    chart: str = "auto"
    workers: int = 1
    samples: int = 200


# ------------------------------------------------------------------ input


def load_fixture() -> dict:
    text = resources.files("hexapod_liaison").joinpath("data/example.json").read_text()
    return json.loads(text)


def fixture_legs(fx: dict, legs123=None) -> list[Fraction]:
    d = [rat(x) for x in (legs123 or fx["special_legs_squared_123"])]
    out = list(d)
    for k in ("4", "5", "6"):
        cs, c = fx["leg_relations"][k]
        out.append(sum((rat(a) * b for a, b in zip(cs, d)), rat(c)))
    return out


def load_input(spec: str) -> dict:
    if spec == "example":
        fx = load_fixture()
        doc = {k: fx[k] for k in ("base", "platform", "gamma")}
        doc["legs_squared"] = [rat_str(x) for x in fixture_legs(fx)]
        return doc
    try:
        with open(spec) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {spec}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{spec} is not valid JSON: {exc}") from exc


def _points(doc: dict, key: str, required: bool = True) -> mb.SixTuple | None:
    if key not in doc:
        if required:
            raise InputError(f"missing field '{key}'")
        return None
    pts = doc[key]
    if not isinstance(pts, list) or len(pts) != 6 or any(not isinstance(p, list) or len(p) != 3 for p in pts):
        raise InputError(f"'{key}' must be six points with three coordinates")
    try:
        return mb.SixTuple([tuple(rat(c) for c in p) for p in pts])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"'{key}': {exc}") from exc


def parse_hexapod(doc: dict, need_platform=True, need_legs=False):
    base = _points(doc, "base")
    plat = _points(doc, "platform", need_platform)
    try:
        gamma = rat(doc["gamma"]) if "gamma" in doc else None
        legs = [rat(x) for x in doc["legs_squared"]] if "legs_squared" in doc else None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc
    if legs is not None and len(legs) != 6:
        raise InputError("'legs_squared' must have six entries")
    if need_legs and legs is None:
        raise InputError("missing field 'legs_squared'")
    if gamma == 0:
        raise InputError("gamma must be nonzero")
    return base, plat, gamma, legs


def hexapod_json(h: lia.Hexapod) -> dict:
    def pts(t):
        return [[rat_str(c) for c in p] for p in t.points]

    doc = {"base": pts(h.base), "platform": pts(h.platform), "gamma": rat_str(h.gamma)}
    if h.legs2 is not None:
        doc["legs_squared"] = [rat_str(d) for d in h.legs2]
    return doc


def _num(x, digits: int = 20) -> str:
    if x == mb.INF:
        return "inf"
    return mpmath.nstr(x, digits)


# --------------------------------------------------------------- commands


def cmd_moebius(cfg: JobConfig, doc: dict) -> dict:
    base, *_ = parse_hexapod(doc, need_platform=False)
    rep = mb.moebius_general_test(base)
    out = {
        "tag": rep.tag,
        "degree_six": rep.degree_six,
        "injective": rep.injective,
        "immersive": rep.immersive,
        "pencil_dimension": rep.pencil_dimension,
        "residual_count": rep.residual_count,
        "moebius_general": rep.passed,
        "notes": rep.notes,
    }
    if rep.degree_six:
        pen = mb.quadric_pencil(mb.photographic_map(base))
        out["pencil"] = [{f"x{a}x{b}": rat_str(c) for c, (a, b) in zip(q, mb.QUAD_MONOMIALS) if c}
                         for q in pen.basis]
    if not rep.passed:
        raise MathFailure("base is not Moebius-general", out)
    return out


def _pairs_json(pairs) -> list:
    return [{"u": _num(p.u), "s": _num(p.s), "multiplicity": p.multiplicity, "node": p.node} for p in pairs]


def cmd_verify(cfg: JobConfig, doc: dict) -> dict:
    base, plat, *_ = parse_hexapod(doc)
    try:
        rep = lia.verify_residual_platform(base, plat, cfg.precision)
    except lia.LiaisonError as exc:
        raise MathFailure(str(exc)) from exc
    out = {
        "pencil_contains_platform": rep.pencil_contains_platform,
        "distinct": rep.distinct,
        "matched_directions": rep.total_multiplicity,
        "node_pairs": rep.node_pairs,
        "pairs": _pairs_json(rep.pairs),
        "passed": rep.passed,
    }
    if not rep.passed:
        raise MathFailure("platform is not the liaison partner of the base", out)
    return out


def _bonds(cfg, base, plat):
    return lia.compute_bonds(base, plat, precision=cfg.precision)


def cmd_gamma(cfg: JobConfig, doc: dict, bonds=None) -> dict:
    base, plat, *_ = parse_hexapod(doc)
    bonds = bonds or _bonds(cfg, base, plat)
    try:
        r = lia.tang2_solve(base, plat, cfg.precision, cfg.den_bound, bonds, cfg.workers)
    except lia.LiaisonError as exc:
        raise MathFailure(str(exc)) from exc
    return {
        "gammas": [rat_str(g) for g in r.gammas],
        "residual": _num(r.residual, 5),
        "linear_in_gamma": r.linear_in_gamma,
        "unconstrained_bonds": [k for k, rs in enumerate(r.per_bond_roots) if rs is None],
    }


def _tang3_json(r: lia.Tang3Result) -> dict:
    rel = {}
    for p, (cs, c) in sorted(r.relations.items()):
        rel[f"d{p + 1}^2"] = {"coefficients": {f"d{f + 1}^2": rat_str(v) for f, v in sorted(cs.items())},
                              "constant": rat_str(c)}
    offset, basis = r.offset_and_basis()
    return {
        "dimension": r.dimension,
        "relations": rel,
        "offset": [rat_str(x) for x in offset],
        "basis": [[rat_str(x) for x in v] for v in basis],
        "verified_at_double_precision": r.verified,
    }


def cmd_legs(cfg: JobConfig, doc: dict, bonds=None, gamma=None) -> dict:
    base, plat, g, legs = parse_hexapod(doc)
    bonds = bonds or _bonds(cfg, base, plat)
    gamma = gamma if gamma is not None else g
    if gamma is None:
        gamma = lia.tang2_solve(base, plat, cfg.precision, cfg.den_bound, bonds, cfg.workers).gammas[0]
    try:
        r = lia.tang3_solve(base, plat, gamma, cfg.precision, cfg.den_bound, bonds, workers=cfg.workers)
    except lia.LiaisonError as exc:
        raise MathFailure(str(exc)) from exc
    out = {"gamma": rat_str(gamma), **_tang3_json(r)}
    if legs is not None:
        out["input_legs_in_subspace"] = r.contains(legs)
        out["input_legs_realizable"] = all(d > 0 for d in legs)
    return out


def cmd_certify(cfg: JobConfig, doc: dict, bonds=None) -> dict:
    base, plat, gamma, legs = parse_hexapod(doc, need_legs=True)
    if gamma is None:
        raise InputError("missing field 'gamma'")
    h = lia.Hexapod(base, plat, gamma, tuple(legs))
    bonds = bonds or _bonds(cfg, base, plat)
    cert = lia.movability_certificate(h, cfg.precision, bonds, with_motion=True)
    out = {
        "issued": cert.issued,
        "bonds": cert.bonds,
        "failing_bond": cert.failing_bond,
        "intersection_count": cert.intersection_count,
        "bound": cert.bound,
        "summary": cert.summary,
        "motion_degree": cert.motion_degree,
        "notes": cert.notes,
    }
    if not cert.issued:
        raise MathFailure(cert.summary, out)
    return out


def cmd_motion(cfg: JobConfig, doc: dict) -> dict:
    base, plat, gamma, legs = parse_hexapod(doc, need_legs=True)
    plat_s = plat.scaled(gamma if gamma is not None else 1)
    try:
        curve = st.motion_curve(base, plat_s, legs, pairs=cfg.pairs)
    except st.StudyError as exc:
        raise MathFailure(str(exc)) from exc
    out = {"degrees": curve.degrees(), "vertex": None if curve.vertex is None else
           [rat_str(c) for c in curve.vertex], "movable": curve.movable}
    if not curve.movable:
        raise MathFailure("J is constant: no self-motion", out)
    out["J"] = str(curve.J)
    sample = st.sample_motion(curve, cfg.samples, cfg.chart, cfg.precision)
    out["samples"] = {"poses": len(sample.poses), "chart": sample.chart, "slices": sample.slices,
                      "rejected": sample.rejected, "max_leg_residual": _num(sample.max_residual, 5),
                      "diagnostics": sample.diagnostics}
    if cfg.out is not None and sample.poses:
        path = cfg.out / "motion.csv"
        sample.write_csv(path, plat_s)
        out["samples"]["csv"] = path.name
    return out


def cmd_family(cfg: JobConfig, kind: str, seed: int, params_path: str | None) -> dict:
    rng = random.Random(seed)
    try:
        if params_path:
            with open(params_path) as fh:
                raw = json.load(fh)
            params = (fam.LinesFamilyParams if kind == "lines" else fam.Order3FamilyParams)(**raw)
        else:
            params = fam.random_lines_params(rng) if kind == "lines" else fam.random_order3_params(rng)
        if kind == "lines":
            h = fam.make_family_lines(params)
            extra = {"concurrent": fam.lines_concurrent(h)}
        else:
            inst = fam.make_family_order3(params)
            h = inst.hexapod
            extra = {"congruent": inst.congruent, "symmetric": fam.order3_symmetry_ok(h)}
    except (OSError, TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    p = {k: rat_str(getattr(params, k)) for k in params.__dataclass_fields__}
    return {"family": kind, "params": p, "hexapod": hexapod_json(h), **extra}


def cmd_all(cfg: JobConfig, doc: dict) -> dict:
    out = {"moebius": cmd_moebius(cfg, doc)}
    out["verify"] = cmd_verify(cfg, doc)
    base, plat, *_ = parse_hexapod(doc)
    bonds = _bonds(cfg, base, plat)
    out["gamma"] = cmd_gamma(cfg, doc, bonds)
    gamma = rat(out["gamma"]["gammas"][0])
    out["legs"] = cmd_legs(cfg, doc, bonds, gamma)
    if "legs_squared" in doc:
        doc = dict(doc, gamma=rat_str(gamma))
        out["certify"] = cmd_certify(cfg, doc, bonds)
        out["motion"] = cmd_motion(cfg, doc)
    return out


# ------------------------------------------------------------------ main


def _pairs_arg(text: str) -> tuple:
    try:
        pairs = tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";") if part)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("pairs look like '5,6;4,6;4,5'") from exc
    if len(pairs) < 3 or any(len(p) != 2 or not all(1 <= x <= 6 for x in p) or p[0] == p[1] for p in pairs):
        raise argparse.ArgumentTypeError("need at least three distinct index pairs from 1..6")
    return pairs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=256, help="working precision in bits")
    common.add_argument("--den-bound", type=int, default=10**12, help="denominator bound for rationals")
    common.add_argument("--chart", choices=["auto", "e3", "e2", "e1"], default="auto")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", type=Path, default=None, help="directory for reports")
    common.add_argument("--pairs", type=_pairs_arg, default=st.DEFAULT_PAIRS,
                        help="index pairs (m,n) for the octics E_mn")
    common.add_argument("--samples", type=int, default=200, help="sweep slices for motion sampling")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="hexapod-liaison", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("moebius", "classify the base map and report its quadric pencil"),
        ("verify", "check that the platform is the liaison partner of the base"),
        ("gamma", "solve Tang2 for the platform scaling"),
        ("legs", "solve Tang3 for the squared leg subspace"),
        ("certify", "issue a movability certificate"),
        ("motion", "self-motion curve and sampled poses"),
        ("all", "run the whole pipeline"),
    ]:
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("input", help="JSON file or 'example' for the bundled fixture")
    sp = sub.add_parser("family", parents=[common], help="generate a family instance")
    sp.add_argument("kind", choices=["lines", "order3"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--params", default=None, help="JSON file with family parameters")
    return p


COMMANDS = {
    "moebius": cmd_moebius,
    "verify": cmd_verify,
    "gamma": cmd_gamma,
    "legs": cmd_legs,
    "certify": cmd_certify,
    "motion": cmd_motion,
    "all": cmd_all,
}

LIAISON_COMMANDS = {"verify", "gamma", "legs", "certify", "all"}


def _emit(cfg: JobConfig, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if cfg.out is not None:
        (cfg.out / f"{cfg.command}.json").write_text(text + "\n")


def run(cfg: JobConfig, args=None) -> int:
    report = {"command": cfg.command, "precision": cfg.precision}
    try:
        if cfg.command in LIAISON_COMMANDS and cfg.precision < 128:
            raise InputError("liaison commands need --precision >= 128")
        if cfg.out is not None:
            cfg.out.mkdir(parents=True, exist_ok=True)
        log.info("running %s at %d bits", cfg.command, cfg.precision)
        with mpmath.workprec(cfg.precision):
            if cfg.command == "family":
                report.update(cmd_family(cfg, args.kind, args.seed, args.params))
            else:
                report.update(COMMANDS[cfg.command](cfg, load_input(cfg.input)))
        report["status"] = "pass"
        _emit(cfg, report)
        return EXIT_OK
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MathFailure as exc:
        report.update(exc.report)
        report["status"] = "fail"
        report["reason"] = str(exc)
        _emit(cfg, report)
        return EXIT_MATH


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    cfg = JobConfig(args.command, getattr(args, "input", None), args.precision, args.den_bound,
                    args.out, args.pairs, args.chart, args.workers, args.samples)
    return run(cfg, args)


if __name__ == "__main__":
    sys.exit(main())
