"""Command line interface.

All subcommands emit JSON on stdout with a "schema": "mft/1" field.
Exit codes: 0 success (checks passed), 1 checks failed, 2 usage or input
error.  Scalar mode comes from --mode or the MFT_MODE environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .constraints import check_all
from .coaction import GroupElement
from .estimation import (
    AmbiguousSolutionError,
    SceneKind,
    alignment_error,
    correspondences_bifocal,
    correspondences_quadrifocal,
    correspondences_trifocal,
    estimate_tensor,
    residuals,
)
from .euclidean import MotionMode, embed, random_motion
from .focal import FocalTensor, multifocal
from .invariants import catalog_lookup, check_weight
from .polyforms import PolyForm, cartan_apply
from .scalars import TOL, scalar_to_json

SCHEMA = "mft/1"

_SIGNATURES = {2: (1, 1), 3: (2, 1, 2), 4: (2, 2, 2, 2)}
_INVARIANT_OF_VIEWS = {2: "bifocal", 3: "trifocal", 4: "quadrifocal"}
_COUNTS = {2: 8, 3: 26, 4: 80}


def _emit(obj):
    obj["schema"] = SCHEMA
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _mode(args):
    name = args.mode or os.environ.get("MFT_MODE", "float")
    if name not in ("float", "rational"):
        raise SystemExit(2)
    return name


def _motion_mode(mode):
    return MotionMode.CAYLEY_RATIONAL if mode == "rational" else MotionMode.FLOAT_HAAR


def cmd_gen_scene(args):
    mode = _mode(args)
    rng = random.Random(args.seed)
    motions = [random_motion(mode=_motion_mode(mode), rng=rng) for _ in range(args.views)]
    _emit(
        {
            "mode": mode,
            "views": args.views,
            "motions": [mo.to_json() for mo in motions],
            "frames": [embed(mo).to_json() for mo in motions],
        }
    )
    return 0


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _frames_from_scene(obj):
    return [GroupElement.from_json(f) for f in obj["frames"]]


def cmd_tensor(args):
    scene = _load_json(args.scene)
    frames = _frames_from_scene(scene)
    inv = catalog_lookup(args.invariant or _INVARIANT_OF_VIEWS[len(frames)])
    t = multifocal(inv, frames)
    _emit({"invariant": inv.name, "tensor": t.to_json()})
    return 0


def cmd_check(args):
    obj = _load_json(args.tensor)
    t = FocalTensor.from_json(obj["tensor"] if "tensor" in obj else obj)
    report = check_all(t, tol=args.tol)
    _emit({"report": report.to_json()})
    return 0 if report.passed else 1


def cmd_estimate(args):
    mode = _mode(args)
    rng = random.Random(args.seed)
    from .estimation import random_scene

    scene = random_scene(
        args.views, SceneKind.EUCLIDEAN, rng=rng, mode=_motion_mode(mode)
    )
    gen = {
        2: correspondences_bifocal,
        3: correspondences_trifocal,
        4: correspondences_quadrifocal,
    }[args.views]
    count = args.count or _COUNTS[args.views]
    cs = gen(scene, count, rng=rng)
    inv = catalog_lookup(_INVARIANT_OF_VIEWS[args.views])
    t_true = multifocal(inv, scene.frames)
    try:
        est, rank = estimate_tensor(_SIGNATURES[args.views], cs)
    except AmbiguousSolutionError as exc:
        _emit({"error": str(exc), "nullity": exc.nullity})
        return 1
    err = alignment_error(est, t_true)
    if not isinstance(err, (int, float, Fraction)):
        err = float(err)
    res = residuals(t_true, cs)
    ok = bool(err == 0) if mode == "rational" else bool(abs(err) <= 1e-6)
    _emit(
        {
            "mode": mode,
            "views": args.views,
            "correspondences": count,
            "rank": rank,
            "alignment_error": scalar_to_json(err),
            "max_true_residual": scalar_to_json(max(abs(v) for v in res)),
            "tensor": est.to_json(),
            "pass": ok,
        }
    )
    return 0 if ok else 1


def cmd_verify_identities(args):
    mode = _mode(args)
    rng = random.Random(args.seed)
    from .constraints import (
        TrifocalSlices,
        euclidean_identity_suite,
        rank_one_certificates,
    )
    from .euclidean import trifocal_euclidean

    worst = 0.0
    reports = []
    ok = True
    for trial in range(args.trials):
        a = random_motion(mode=_motion_mode(mode), rng=rng)
        b = random_motion(mode=_motion_mode(mode), rng=rng)
        ts = TrifocalSlices.from_tensor(trifocal_euclidean(a, b))
        rep = euclidean_identity_suite(ts, a, b, tol=args.tol)
        for fam in rank_one_certificates(ts, motions=(a, b), tol=args.tol).families:
            rep.families.append(fam)
        ok = ok and rep.passed
        worst = max(worst, float(rep.max_residual()))
        reports.append(rep.to_json())
    _emit({"mode": mode, "trials": args.trials, "max_residual": worst, "pass": ok,
           "reports": reports if args.verbose else reports[:1]})
    return 0 if ok else 1


def cmd_verify_cartan(args):
    rng = random.Random(args.seed)
    failures = []
    checked = 0
    for dim in (2, 3, 4):
        for p in range(0, dim + 1):
            for q in range(0, 4 - p):
                f = _random_polyform(dim, p, q, rng)
                lhs = cartan_apply(f)
                rhs = (p + q) * f
                checked += 1
                if lhs != rhs:
                    failures.append({"dim": dim, "p": p, "q": q})
    _emit({"checked": checked, "failures": failures, "pass": not failures})
    return 0 if not failures else 1


def _random_polyform(dim, p, q, rng):
    from fractions import Fraction
    from itertools import combinations, combinations_with_replacement

    f = PolyForm.zero(dim, p, q)
    for anti in combinations(range(dim), p):
        for sym in combinations_with_replacement(range(dim), q):
            c = Fraction(rng.randint(-4, 4))
            if c:
                f = f + PolyForm.term(dim, anti, sym, c)
    return f


def cmd_invariant(args):
    inv = catalog_lookup(args.name)
    out = {"invariant": inv.to_json()}
    if args.weight:
        out["weight"] = check_weight(inv, trials=args.trials)
    _emit(out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mft", description="multi-focal tensor construction and checking"
    )
    parser.add_argument("--mode", choices=("float", "rational"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-scene", help="sample a random Euclidean scene")
    p.add_argument("--views", type=int, default=3, choices=(2, 3, 4))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_scene)

    p = sub.add_parser("tensor", help="build a focal tensor from a scene file")
    p.add_argument("scene", help="JSON scene file from gen-scene")
    p.add_argument("--invariant", default=None)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("check", help="run the constraint corpus on a tensor file")
    p.add_argument("tensor", help="JSON tensor file")
    p.add_argument("--tol", type=float, default=TOL)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("estimate", help="round-trip: scene, correspondences, recovery")
    p.add_argument("--views", type=int, default=3, choices=(2, 3, 4))
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify-identities", help="slice identity suite on random motions")
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=TOL)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_verify_identities)

    p = sub.add_parser("verify-cartan", help="check the differential pair identity")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_cartan)

    p = sub.add_parser("invariant", help="dump a cataloged invariant")
    p.add_argument("name")
    p.add_argument("--weight", action="store_true", help="also measure the det power")
    p.add_argument("--trials", type=int, default=10)
    p.set_defaults(func=cmd_invariant)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
