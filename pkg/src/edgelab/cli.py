"""Command-line front end.

Subcommands: construct | classify | edge-check | sweep | table | decompose.
Matrices travel as JSON files (see :mod:`edgelab.io`); sweeps emit CSV with a
frozen column order.  EDGELAB_THREADS caps sweep parallelism.

Exit codes: 0 success (classify: state is PPT; table: all targets achieved),
1 for a negative verdict (classify: not PPT; table: missing types), 2 for
invalid parameters or malformed input.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import io as mio
from .classify import EdgeCertificate, classify, reconstruct_separable, verify_edge_analytic
from .errors import EdgeLabError, InvalidParamError
from .linalg import BipartiteOperator
from .search import SearchVerdict, product_vector_search
from .states import (
    GramSpec,
    choi_matrix,
    corner_state,
    edge_state,
    face_state,
    generalized_edge_state,
    phase_circulant,
    singular_gram_offdiags,
)

FAMILIES = ("p-theta", "edge", "edge-general", "state-7-6", "choi", "face", "p5")

# Achievable bi-qutrit edge types (p >= q convention); (4, 4) is known but not
# constructed by any family here.
TARGET_TYPES = {(5, 5), (6, 5), (7, 5), (8, 5), (6, 6), (7, 6), (8, 6)}
KNOWN_NOT_CONSTRUCTED = {(4, 4)}


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise InvalidParamError(f"cannot parse complex number {text!r}") from exc


def _resolve_theta(args) -> float:
    if getattr(args, "theta_frac", None) is not None:
        try:
            return math.pi * float(Fraction(args.theta_frac))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParamError(f"bad --theta-frac {args.theta_frac!r}") from exc
    if getattr(args, "theta", None) is None:
        raise InvalidParamError("this family needs --theta or --theta-frac")
    return args.theta


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise InvalidParamError(f"family {args.family!r} needs --{name.replace('_', '-')}")


def build_family(args) -> BipartiteOperator:
    family = args.family
    if family == "p-theta":
        return BipartiteOperator(1, 3, phase_circulant(_resolve_theta(args)))
    if family == "edge":
        _require(args, "b")
        return edge_state(args.b, _resolve_theta(args))
    if family == "edge-general":
        _require(args, "b")
        return generalized_edge_state(args.b, _resolve_theta(args))
    if family == "state-7-6":
        _require(args, "b")
        return corner_state(args.b)
    if family == "choi":
        _require(args, "a", "b", "c")
        return choi_matrix(args.a, args.b, args.c)
    if family == "face":
        _require(args, "b")
        spec = GramSpec(
            _resolve_theta(args),
            _parse_complex(args.xi_eta),
            _parse_complex(args.eta_zeta),
            _parse_complex(args.zeta_xi),
        )
        return face_state(args.b, spec)
    if family == "p5":
        _require(args, "b", "target_p")
        theta = _resolve_theta(args)
        return face_state(args.b, GramSpec(theta, *singular_gram_offdiags(theta, args.target_p)))
    raise InvalidParamError(f"unknown family {family!r}")


def _load_input(args) -> BipartiteOperator:
    if getattr(args, "infile", None):
        return mio.read_matrix(args.infile)
    if getattr(args, "family", None):
        return build_family(args)
    raise InvalidParamError("provide --in FILE or --family NAME")


def _add_family_options(parser, require_family: bool):
    parser.add_argument("--family", choices=FAMILIES, required=require_family)
    parser.add_argument("--b", type=float)
    parser.add_argument("--theta", type=float, help="angle in radians")
    parser.add_argument("--theta-frac", help="angle as a rational multiple of pi, e.g. 1/6")
    parser.add_argument("--a", type=float)
    parser.add_argument("--c", type=float)
    parser.add_argument("--xi-eta", default="0", help="complex, e.g. 0.5+0.3j")
    parser.add_argument("--eta-zeta", default="0")
    parser.add_argument("--zeta-xi", default="0")
    parser.add_argument("--target-p", type=int, choices=(5, 6, 7, 8))


def _classification_report(c) -> dict:
    return {
        "isPSD": c.is_psd,
        "isPPT": c.is_ppt,
        "type": list(c.type),
        "kernelDims": list(c.kernel_dims),
        "admissibility": c.admissibility.value,
        "tolerances": {"relTol": c.rel_tol, "absTol": c.abs_tol},
    }


def _vector_json(v: np.ndarray) -> dict:
    return {"re": v.real.tolist(), "im": v.imag.tolist()}


def cmd_construct(args) -> int:
    op = build_family(args)
    payload = json.dumps(mio.matrix_to_dict(op))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0


def cmd_classify(args) -> int:
    op = _load_input(args)
    report = _classification_report(classify(op))
    print(json.dumps(report))
    return 0 if report["isPPT"] else 1


def cmd_edge_check(args) -> int:
    if args.analytic:
        if getattr(args, "family", None) != "edge":
            raise InvalidParamError("--analytic applies only to --family edge")
        _require(args, "b")
        trace = verify_edge_analytic(args.b, _resolve_theta(args))
        report = {
            "verdict": "Edge" if trace.verdict is EdgeCertificate.EDGE_CERTIFIED else trace.verdict.value,
            "certifiedBy": "analytic",
            "steps": [
                {"description": s.description, "margin": s.margin, "ok": s.ok}
                for s in trace.steps
            ],
        }
        print(json.dumps(report))
        return 0
    op = _load_input(args)
    result = product_vector_search(
        op, starts=args.starts, max_iters=args.max_iters, seed=args.seed
    )
    report = {
        "verdict": result.verdict.value,
        "certifiedBy": "numeric",
        "bestObjective": result.best_objective,
        "starts": result.starts,
    }
    if result.verdict is SearchVerdict.PRODUCT_VECTOR_FOUND:
        report["bestX"] = _vector_json(result.best_x)
        report["bestY"] = _vector_json(result.best_y)
    print(json.dumps(report))
    return 0


def _parse_range(text: str):
    try:
        name, rest = text.split("=", 1)
        start, stop, steps = rest.split(":")
        start, stop, steps = float(start), float(stop), int(steps)
    except ValueError as exc:
        raise InvalidParamError(f"bad --range {text!r}; expected NAME=START:STOP:STEPS") from exc
    if steps < 1:
        raise InvalidParamError("range steps must be >= 1")
    values = np.linspace(start, stop, steps) if steps > 1 else np.array([start])
    return name.strip(), values


# Canonical parameter column order per family, frozen for diffable sweeps.
SWEEP_PARAMS = {
    "p-theta": ("theta",),
    "edge": ("b", "theta"),
    "edge-general": ("b", "theta"),
    "state-7-6": ("b",),
    "choi": ("a", "b", "c"),
    "p5": ("b", "theta", "target_p"),
}


def _sweep_point(family, params, do_search, starts, seed):
    ns = argparse.Namespace(
        family=family, theta=None, theta_frac=None, xi_eta="0", eta_zeta="0", zeta_xi="0",
        a=None, b=None, c=None, target_p=None,
    )
    for key, val in params.items():
        setattr(ns, key, int(val) if key == "target_p" else val)
    op = build_family(ns)
    c = classify(op)
    row = [params[name] for name in SWEEP_PARAMS[family]]
    row += [c.is_ppt, c.type[0], c.type[1]]
    if do_search:
        row.append(product_vector_search(op, starts=starts, seed=seed).best_objective)
    return row


def cmd_sweep(args) -> int:
    family = args.family
    if family not in SWEEP_PARAMS:
        raise InvalidParamError(f"sweep does not support family {family!r}")
    if not args.range:
        raise InvalidParamError("provide at least one --range NAME=START:STOP:STEPS")
    names, grids = [], []
    for text in args.range:
        name, values = _parse_range(text)
        if name not in SWEEP_PARAMS[family]:
            raise InvalidParamError(f"family {family!r} has no parameter {name!r}")
        names.append(name)
        grids.append(values)
    fixed = {}
    for pname in SWEEP_PARAMS[family]:
        if pname in names:
            continue
        val = getattr(args, pname, None)
        if val is None and pname == "theta" and args.theta_frac is not None:
            val = math.pi * float(Fraction(args.theta_frac))
        if val is None:
            raise InvalidParamError(f"fix parameter --{pname.replace('_', '-')} or sweep it")
        fixed[pname] = val

    mesh = np.meshgrid(*grids, indexing="ij")
    points = []
    for flat_idx in range(mesh[0].size):
        params = dict(fixed)
        for name, grid in zip(names, mesh):
            params[name] = float(grid.reshape(-1)[flat_idx])
        points.append(params)

    try:
        workers = int(os.environ.get("EDGELAB_THREADS", "0"))
    except ValueError:
        workers = 0
    workers = workers or min(32, os.cpu_count() or 1)
    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(
                pool.map(
                    lambda p: _sweep_point(family, p, args.search, args.starts, args.seed),
                    points,
                )
            )
    else:
        rows = [_sweep_point(family, p, args.search, args.starts, args.seed) for p in points]

    header = list(SWEEP_PARAMS[family]) + ["isPPT", "p", "q"]
    if args.search:
        header.append("bestObjective")
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(header)
        writer.writerows([[repr(v) if isinstance(v, float) else v for v in row] for row in rows])
    finally:
        if args.out:
            out.close()
    return 0


def _table_families(b: float, theta: float):
    one = cmath.exp(0.3j)
    two = cmath.exp(-0.1j)
    three = cmath.exp(0.2j)
    yield "edge", edge_state(b, theta)
    yield "face, one unimodular coupling", face_state(b, GramSpec(theta, one, 0, 0))
    yield "face, two unimodular couplings", face_state(b, GramSpec(theta, one, two, 0))
    yield "face, three unimodular couplings", face_state(b, GramSpec(theta, one, two, three))
    for target in (8, 7, 6, 5):
        spec = GramSpec(theta, *singular_gram_offdiags(theta, target))
        yield f"singular-gram face, p={target}", face_state(b, spec)


def cmd_table(args) -> int:
    achieved = {}
    for name, op in _table_families(args.b, args.theta):
        c = classify(op)
        achieved.setdefault(c.type, []).append(name)

    print(f"types achieved at b={args.b}, theta={args.theta}")
    print()
    cols = range(4, 9)
    print("        " + "".join(f"p={p}   " for p in cols))
    for q in (6, 5, 4):
        cells = []
        for p in cols:
            if (p, q) in achieved:
                cells.append("*")
            elif (p, q) in KNOWN_NOT_CONSTRUCTED:
                cells.append("o")
            else:
                cells.append(".")
        print(f"  q={q}   " + "     ".join(cells))
    print()
    print("  * constructed here    o known type, not constructed    . no edge state")
    print()
    for t in sorted(achieved):
        print(f"  {t}: {', '.join(achieved[t])}")

    canonical = {tuple(sorted(t, reverse=True)) for t in achieved}
    missing = sorted(TARGET_TYPES - canonical)
    print()
    print("targets (p >= q):", " ".join(map(str, sorted(TARGET_TYPES))))
    if missing:
        print("MISSING:", " ".join(map(str, missing)))
        return 1
    print("all targets achieved; (4, 4) is out of scope for these families")
    return 0


def cmd_decompose(args) -> int:
    err = reconstruct_separable(args.b)
    print(json.dumps({"b": args.b, "maxError": err}))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edgelab",
        description="Construct, classify and edge-check bi-qutrit PPT state families.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a family member and emit a matrix file")
    _add_family_options(p, require_family=True)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="PSD/PPT flags and (p, q) type")
    _add_family_options(p, require_family=False)
    p.add_argument("--in", dest="infile", help="matrix file to classify")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("edge-check", help="search for a product vector in the ranges")
    _add_family_options(p, require_family=False)
    p.add_argument("--in", dest="infile")
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--max-iters", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--analytic", action="store_true", help="use the analytic certificate (edge family only)")
    p.set_defaults(func=cmd_edge_check)

    p = sub.add_parser("sweep", help="classify a family over a parameter grid, emit CSV")
    _add_family_options(p, require_family=True)
    p.add_argument("--range", action="append", default=[], metavar="NAME=START:STOP:STEPS")
    p.add_argument("--search", action="store_true", help="add a bestObjective column")
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table", help="realize every achievable type and render the grid")
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--theta", type=float, default=math.pi / 6)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("decompose", help="error of the separable reconstruction at theta = 0")
    p.add_argument("--b", type=float, required=True)
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EdgeLabError as exc:
        print(f"edgelab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
