"""Command-line front end.

Every command prints (or writes with ``--out``) one JSON report. Reports are
deterministic for fixed inputs and seed apart from the ``timings`` block.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, convexopt, lasso
from .certificate import find_certificate
from .effset import PointSet, efficient_set, theorem_verdict, weakly_efficient_set
from .geom2d import EXAMPLES, Polygon2, PolygonAnalysis, example_polygon
from .order import InvalidArgument, IndexSet
from .svg import front_figure, polygon_figure

SCHEMA_VERSION = 1


class InputError(Exception):
    """Bad input file or arguments; reported on stderr with exit code 2."""


# Ingestion ----------------------------------------------------------------------

def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def parse_points_csv(text: str) -> PointSet:
    """One point per row, comma-separated, optional header, optional leading label column."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows:
        return PointSet(np.zeros((0, 0)))
    first = rows[0]
    header = None
    if (not all(_is_number(c) for c in first[1:]) or first[0].strip().lower() == "label"
            or (len(first) == 1 and not _is_number(first[0]))):
        header, rows = first, rows[1:]
    first_row = 2 if header else 1
    if not rows:
        return PointSet(np.zeros((0, len(header or []))))
    labelled = (header is not None and header[0].strip().lower() == "label") or not _is_number(rows[0][0])
    width = len(rows[0])
    labels, pts = [], []
    for r, row in enumerate(rows, start=first_row):
        if len(row) != width:
            raise InputError(f"row {r}: expected {width} fields, got {len(row)}")
        cells = row[1:] if labelled else row
        vals = []
        for c, cell in enumerate(cells, start=2 if labelled else 1):
            try:
                v = float(cell)
            except ValueError:
                raise InputError(f"row {r}, column {c}: cannot parse {cell.strip()!r} as a number") from None
            if not np.isfinite(v):
                raise InputError(f"row {r}, column {c}: non-finite value {cell.strip()!r}")
            vals.append(v)
        if labelled:
            labels.append(row[0].strip())
        pts.append(vals)
    if pts and not pts[0]:
        raise InputError("rows carry a label but no coordinates")
    return PointSet(pts, labels=labels if labelled else None)


def parse_polygon_json(text: str) -> Polygon2:
    try:
        doc = json.loads(text)
        verts = doc["vertices"]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"polygon JSON must be an object with a 'vertices' list ({exc})") from None
    try:
        return Polygon2([tuple(v) for v in verts])
    except (InvalidArgument, TypeError, ValueError) as exc:
        raise InputError(f"invalid polygon: {exc}") from None


def _read(path: str) -> bytes:
    try:
        return sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_input(path: str):
    """Returns ``(object, digest)``; a Polygon2 for JSON input, a PointSet for CSV."""
    raw = _read(path)
    digest = hashlib.sha256(raw).hexdigest()
    text = raw.decode("utf-8-sig")
    if path.endswith(".json") or text.lstrip().startswith("{"):
        return parse_polygon_json(text), digest
    return parse_points_csv(text), digest


def _digest(tag: str) -> str:
    return hashlib.sha256(tag.encode()).hexdigest()


# Report -------------------------------------------------------------------------

def resolve_seed(arg) -> int:
    if arg is not None:
        return int(arg)
    env = os.environ.get("EFFSET_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"EFFSET_SEED must be an integer, got {env!r}") from None
    return 0


def run_report(command: str, digest: str, seed: int, result: dict, timings: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "weakeff",
        "version": __version__,
        "command": command,
        "input_digest": digest,
        "seed": seed,
        "result": result,
        "timings": timings,
    }


def payload(report: dict) -> str:
    """The deterministic part of a report, serialized canonically."""
    body = {k: v for k, v in report.items() if k != "timings"}
    return json.dumps(body, sort_keys=True)


def _emit(report: dict, out) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _subsets(specs, m: int) -> list:
    if not specs:
        return [IndexSet.full(m)] if m else []
    out = []
    for spec in specs:
        try:
            members = tuple(int(tok) for tok in spec.replace("{", "").replace("}", "").split(",") if tok.strip())
            I = IndexSet(members)
            if m:
                I.check_dim(m)
        except (ValueError, InvalidArgument) as exc:
            raise InputError(f"bad --subset {spec!r}: {exc}") from None
        out.append(I)
    return out


def _polygon_source(args):
    if getattr(args, "example", None):
        return example_polygon(args.example), _digest(f"example:{args.example}")
    if getattr(args, "instance", None):
        inst = convexopt.instance(args.instance, args.seed)
        if not isinstance(inst, Polygon2):
            raise InputError(f"instance {args.instance!r} is not a polygon")
        return inst, _digest(f"instance:{args.instance}:{args.seed}")
    if getattr(args, "input", None):
        return load_input(args.input)
    raise InputError("give --input, --example or --instance")


# Commands -----------------------------------------------------------------------

def cmd_compute(args) -> tuple:
    if not args.input:
        raise InputError("compute needs --input")
    Y, digest = load_input(args.input)
    if isinstance(Y, Polygon2):
        raise InputError("compute expects a point CSV; use check-theorem for polygons")
    blocks = []
    for I in _subsets(args.subset, Y.dim):
        eff = efficient_set(Y, I)
        weak = weakly_efficient_set(Y, I)
        blocks.append({
            "I": list(I.members),
            "M": eff,
            "WM": weak,
            "M_labels": [Y.label(j) for j in eff],
            "WM_labels": [Y.label(j) for j in weak],
        })
    return digest, {"n": Y.n, "dim": Y.dim, "subsets": blocks}


def cmd_check_theorem(args) -> tuple:
    src, digest = _polygon_source(args)
    if isinstance(src, Polygon2):
        an = PolygonAnalysis(src)
        result = {"kind": "polygon", "verdict": an.verdict().to_dict(), "chains": an.to_dict()}
        if args.svg:
            Path(args.svg).write_text(polygon_figure(an))
        return digest, result
    convex = convexopt.finite_fdh_is_convex(src)
    return digest, {"kind": "points", "n": src.n, "dim": src.dim,
                    "verdict": theorem_verdict(src, fdh_convex=convex).to_dict()}


def _example_block(name: str) -> dict:
    an = PolygonAnalysis(example_polygon(name))
    return {
        "vertices": {f"p{k}": [int(c) for c in v] for k, v in enumerate(EXAMPLES[name], 1)},
        "fdh_convex": an.fdh_convex,
        "chains": {key: getattr(an, attr).to_dict() for key, attr in
                   (("M_1", "eff_1"), ("M_2", "eff_2"), ("M", "eff"), ("WM", "weak"))},
        "text": {key: getattr(an, attr).describe() for key, attr in
                 (("M_1", "eff_1"), ("M_2", "eff_2"), ("M", "eff"), ("WM", "weak"))},
        "verdict": an.verdict().to_dict(),
    }


def cmd_examples(args) -> tuple:
    names = sorted(EXAMPLES) if args.which == "all" else [args.which]
    result = {name: _example_block(name) for name in names}
    if args.svg:
        if len(names) == 1:
            Path(args.svg).write_text(polygon_figure(example_polygon(names[0]), f"Example {names[0]}"))
        else:
            target = Path(args.svg)
            target.mkdir(parents=True, exist_ok=True)
            for name in names:
                (target / f"example-{name}.svg").write_text(polygon_figure(example_polygon(name), f"Example {name}"))
    return _digest("examples:" + ",".join(names)), result


def cmd_certify(args) -> tuple:
    src, digest = _polygon_source(args)
    points = [tuple(float(c) for c in v) for v in src.vertices] if isinstance(src, Polygon2) else src.points
    n = len(points)
    if args.point:
        try:
            y_star = [float(tok) for tok in args.point.split(",")]
        except ValueError:
            raise InputError(f"bad --point {args.point!r}") from None
    else:
        if args.ystar is None:
            raise InputError("give --ystar INDEX or --point x,y,...")
        if not 0 <= args.ystar < n:
            raise InputError(f"--ystar {args.ystar} out of range for {n} points (0-based)")
        y_star = list(points[args.ystar])
    try:
        cert = find_certificate(PointSet(points), y_star)
    except InvalidArgument as exc:
        raise InputError(str(exc)) from None
    return digest, {"y_star": y_star, "certificate": cert.to_dict()}


def _weights(spec):
    if spec is None:
        return None
    try:
        ws = [float(tok) for tok in spec.split(",") if tok.strip()]
    except ValueError:
        raise InputError(f"bad --weights {spec!r}") from None
    for w in ws:
        if not 0 < w <= 1:
            raise InputError(f"weights must lie in (0, 1], got {w}")
    return ws


def cmd_lasso(args) -> tuple:
    eps = 1e-3 if args.epsilon is None else args.epsilon
    if args.zero_matrix:
        rep = lasso.zero_matrix_counterexample(n=args.cols, sample=args.sample, epsilon=eps, seed=args.seed)
        return _digest(f"zero-matrix:{args.cols}:{args.sample}:{eps}"), {"counterexample": rep}
    if eps <= 0:
        raise InputError("the modified problem needs --epsilon > 0")
    if args.input:
        data, digest = load_input(args.input)
        if isinstance(data, Polygon2) or data.dim < 2:
            raise InputError("lasso CSV needs predictor columns followed by the response column")
        prob = lasso.LassoProblem(data.points[:, :-1], data.points[:, -1], eps, {"source": args.input})
    else:
        prob = lasso.synthetic(args.rows, args.cols, args.sparsity, args.sigma, eps, args.seed)
        digest = _digest(json.dumps(prob.provenance, sort_keys=True))
    sr = lasso.pareto_sweep(prob, _weights(args.weights))
    check = lasso.check_front_efficiency(sr)
    if args.svg:
        Path(args.svg).write_text(front_figure([e.objectives for e in sr.accepted()], "lasso front"))
    return digest, {
        "problem": {"rows": prob.rows, "cols": prob.cols, "epsilon": eps, "provenance": prob.provenance},
        "sweep": sr.to_dict(),
        "failed_entries": sum(not e.ok for e in sr.entries),
        "front_check": check.to_dict(),
    }


def cmd_convexity(args) -> tuple:
    f = convexopt.instance("psd-quadratic", args.seed)
    rep = convexopt.corollary_harness(f, "strongly-convex", seed=args.seed)
    conv = convexopt.check_strongly_convex(f, f.modulus, trials=args.trials, seed=args.seed)
    fdh = convexopt.check_fdh_convexity_sampled(f, samples=args.samples, seed=args.seed)
    return _digest(f"convexity:{args.seed}"), {
        "instance": f.name,
        "modulus": f.modulus,
        "strong_convexity": conv.to_dict(),
        "fdh_convexity": fdh.to_dict(),
        "corollary": rep.to_dict(),
    }


COMMANDS = {
    "compute": cmd_compute,
    "check-theorem": cmd_check_theorem,
    "examples": cmd_examples,
    "certify": cmd_certify,
    "lasso": cmd_lasso,
    "convexity": cmd_convexity,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to $EFFSET_SEED, then 0)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    ap = argparse.ArgumentParser(prog="weakeff", description="Efficient-set analysis tools")
    ap.add_argument("--version", action="version", version=f"weakeff {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="M_I and WM_I index sets of a point CSV")
    p.add_argument("--input", help="point CSV ('-' for stdin)")
    p.add_argument("--subset", action="append", help="1-based index set such as 1,3 (repeatable)")

    p = sub.add_parser("check-theorem", parents=[common], help="(alpha)/(beta) verdict for points or a polygon")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", help="point CSV or polygon JSON")
    src.add_argument("--example", choices=sorted(EXAMPLES))
    src.add_argument("--instance", help="generator name: random-polygon, convex-polygon, example-3.x")
    p.add_argument("--svg", help="write a figure (polygons only)")

    p = sub.add_parser("examples", parents=[common], help="exact chains of the built-in polygons")
    p.add_argument("which", nargs="?", default="all", choices=sorted(EXAMPLES) + ["all"])
    p.add_argument("--svg", help="figure path (a directory when several examples are drawn)")

    p = sub.add_parser("certify", parents=[common], help="separating weights for one point")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", help="point CSV or polygon JSON")
    src.add_argument("--example", choices=sorted(EXAMPLES))
    src.add_argument("--instance")
    p.add_argument("--ystar", type=int, help="0-based row (or vertex) index of y*")
    p.add_argument("--point", help="explicit y* as comma-separated coordinates")

    p = sub.add_parser("lasso", parents=[common], help="weighted-sum sweep of the modified lasso")
    p.add_argument("--input", help="CSV with predictors then response per row")
    p.add_argument("--epsilon", type=float, default=None, help="coupling constant (default 1e-3)")
    p.add_argument("--weights", help="comma-separated weights in (0, 1]")
    p.add_argument("--rows", type=int, default=50)
    p.add_argument("--cols", type=int, default=20)
    p.add_argument("--sparsity", type=int, default=5)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--zero-matrix", action="store_true", help="run the X = 0 demonstration instead")
    p.add_argument("--sample", type=int, default=20, help="sample size for --zero-matrix")
    p.add_argument("--svg", help="write the objective front as SVG")

    p = sub.add_parser("convexity", parents=[common], help="sampled checks on a random strongly convex quadratic")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--samples", type=int, default=4000)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.seed = resolve_seed(args.seed)
        t0 = time.perf_counter()
        digest, result = COMMANDS[args.command](args)
        timings = {"total_s": round(time.perf_counter() - t0, 6)}
        _emit(run_report(args.command, digest, args.seed, result, timings), args.out)
    except (InputError, InvalidArgument) as exc:
        print(f"weakeff {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"weakeff {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
