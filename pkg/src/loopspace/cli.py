"""Batch front end: validate presentations, compute loop homology,
compare computations, and run the Hopf identity suites.

Exit codes: 0 all checks pass / computation succeeded, 1 structured
failure (validation error, unequal comparison, violated identity,
unacknowledged truncation), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional

from . import __version__
from .catcoalg import check_axioms, from_presentation
from .cobar import CobarCategory, CobarError
from .cohochschild import CoHochschildComplex
from .fixtures import STANDARD_FIXTURES
from .hochschild import HochschildComplex
from .hopf import (HopfCobar, LoopComparison, TwistedComplex,
                   twisting_cochain_residuals, universal_twisting_cochain,
                   constant_loop)
from .linalg import CoefficientRing, HomologyResult, ZZ, QQ, prime_field
from .simplicial import (CapExceededError, SimplicialError,
                         SimplicialSetPresentation)


class UsageError(Exception):
    pass


def load_presentation(path: str) -> SimplicialSetPresentation:
    if path.startswith("fixture:"):
        name = path.split(":", 1)[1]
        if name not in STANDARD_FIXTURES:
            raise SimplicialError(
                f"unknown fixture {name!r}; available: "
                + ", ".join(sorted(STANDARD_FIXTURES)))
        return STANDARD_FIXTURES[name]()
    with open(path, "r", encoding="utf-8") as fh:
        return SimplicialSetPresentation.loads(fh.read())


def ring_from_args(ring: str, p: Optional[int]) -> CoefficientRing:
    if ring == "z":
        return ZZ
    if ring == "q":
        return QQ
    if ring == "fp":
        if p is None:
            raise UsageError("--p <prime> is required with --ring fp")
        return prime_field(p)
    raise UsageError(f"unknown ring {ring!r}")


def report_dict(result: HomologyResult, meta: Dict) -> Dict:
    return {"meta": meta, "results": result.as_dict()}


def emit(payload: Dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
        return
    meta = payload.get("meta", {})
    print("# " + ", ".join(f"{k}={meta[k]}" for k in sorted(meta)))
    results = payload.get("results", {})
    for degree in sorted(results, key=int):
        entry = results[degree]
        tors = ",".join(str(t) for t in entry["torsion"]) or "-"
        flag = "exact" if entry["exact"] else "truncated"
        print(f"H_{degree}: free={entry['free_rank']} torsion={tors} [{flag}]")
    for key in sorted(payload):
        if key in ("meta", "results"):
            continue
        print(f"{key}: {json.dumps(payload[key], sort_keys=True)}")


def job_config(args: argparse.Namespace) -> Dict:
    """Flags merged with an optional JSON config; config wins."""
    cfg = {
        "input": getattr(args, "input", None),
        "ring": args.ring,
        "p": args.p,
        "max_degree": args.max_degree,
        "max_length": args.max_length,
        "extended": args.extended,
        "format": args.format,
        "route": getattr(args, "route", "cohochschild"),
    }
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            try:
                overrides = json.load(fh)
            except json.JSONDecodeError as exc:
                raise UsageError(
                    f"config parse error at line {exc.lineno}, "
                    f"column {exc.colno}: {exc.msg}") from exc
        cfg.update(overrides)
    if cfg["max_degree"] is None or cfg["max_degree"] < 0:
        raise UsageError("degree window must be nonempty")
    return cfg


def compute_loop_homology(cfg: Dict) -> Dict:
    pres = load_presentation(cfg["input"])
    ring = ring_from_args(cfg["ring"], cfg.get("p"))
    C = from_presentation(pres)
    degrees = list(range(0, cfg["max_degree"] + 1))
    meta = {"input": cfg["input"], "ring": ring.describe(),
            "max_degree": cfg["max_degree"],
            "max_length": cfg.get("max_length"),
            "extended": bool(cfg.get("extended")),
            "route": cfg.get("route", "cohochschild")}
    route = cfg.get("route", "cohochschild")
    if route == "cohochschild":
        coch = CoHochschildComplex(C, extended=bool(cfg.get("extended")))
        result = coch.homology(degrees, ring, max_length=cfg.get("max_length"))
        payload = report_dict(result, meta)
        ctx = coch.ctx
        if (bool(cfg.get("extended")) and ctx._single_loop_alphabet()):
            w_max = cfg.get("max_winding", 5)
            windings = {}
            for w in range(-w_max, w_max + 1):
                hw = coch.homology(degrees, ring,
                                   max_length=cfg.get("max_length"),
                                   winding=w)
                windings[str(w)] = hw.as_dict()
            payload["windings"] = windings
        return payload
    if route == "hochschild-of-cobar":
        ch = HochschildComplex(CobarCategory(C, extended=False))
        result = ch.homology(degrees, ring, max_length=cfg.get("max_length"))
        return report_dict(result, meta)
    raise UsageError(f"unknown route {route!r}")


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        pres = load_presentation(args.input)
    except (SimplicialError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = pres.validate()
    print(report)
    if not report.ok:
        return 1
    C = from_presentation(pres)
    axioms = check_axioms(C)
    print(axioms)
    curved = sorted(s for s, v in C.h.items() if v)
    if curved:
        print("nonzero curvature entries: "
              + ", ".join(f"{s}={C.h[s]}" for s in curved))
    return 0 if axioms.ok else 1


def cmd_loop_homology(args: argparse.Namespace) -> int:
    try:
        cfg = job_config(args)
        payload = compute_loop_homology(cfg)
    except (UsageError,) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (CobarError, CapExceededError, SimplicialError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    emit(payload, cfg["format"])
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    try:
        with open(args.config_a, "r", encoding="utf-8") as fh:
            cfg_a = json.load(fh)
        with open(args.config_b, "r", encoding="utf-8") as fh:
            cfg_b = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error reading configs: {exc}", file=sys.stderr)
        return 1
    for cfg in (cfg_a, cfg_b):
        cfg.setdefault("ring", "q")
        cfg.setdefault("p", None)
        cfg.setdefault("format", args.format)
        cfg.setdefault("extended", False)
        cfg.setdefault("max_length", None)
    if cfg_a.get("max_degree") != cfg_b.get("max_degree"):
        print("error: degree window mismatch", file=sys.stderr)
        return 1
    try:
        pay_a = compute_loop_homology(cfg_a)
        pay_b = compute_loop_homology(cfg_b)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (CobarError, CapExceededError, SimplicialError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    diff = {}
    for degree in pay_a["results"]:
        a = pay_a["results"][degree]
        b = pay_b["results"].get(degree)
        if b is None or (a["free_rank"], a["torsion"]) != \
                (b["free_rank"], b["torsion"]):
            diff[degree] = {"a": a, "b": b}
    payload = {
        "meta": {"a": pay_a["meta"], "b": pay_b["meta"]},
        "equal": not diff,
        "results": pay_a["results"] if not diff else {},
        "differences": diff,
    }
    emit(payload, args.format)
    return 0 if not diff else 1


def cmd_hopf_check(args: argparse.Namespace) -> int:
    try:
        cfg = job_config(args)
        pres = load_presentation(cfg["input"])
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (SimplicialError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    C = from_presentation(pres)
    if len(C.set_likes) != 1:
        print("error: Hopf checks need a reduced (one-vertex) input",
              file=sys.stderr)
        return 1
    max_degree = cfg["max_degree"]
    max_length = cfg.get("max_length") or max_degree + 1
    try:
        failures = run_hopf_suite(C, pres, max_degree, max_length)
    except (CobarError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {"meta": {"input": cfg["input"], "max_degree": max_degree,
                        "max_length": max_length},
               "checks": failures["checks"],
               "first_failure": failures["first_failure"]}
    emit_simple(payload, cfg["format"])
    return 0 if failures["first_failure"] is None else 1


def emit_simple(payload: Dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for name, ok in payload["checks"].items():
            print(f"{name}: {'pass' if ok else 'FAIL'}")
        if payload.get("first_failure"):
            print(f"first violated identity: {payload['first_failure']}")


def run_hopf_suite(C, pres, max_degree: int, max_length: int,
                   hopf: Optional[HopfCobar] = None) -> Dict:
    """Bialgebra, antipode, twisting and twisted-tensor identities on the
    degree/length window.  Returns per-check booleans and the first
    violated identity name."""
    from .formal import FormalSum
    from .hopf import PairSum, phi_map

    h = hopf or HopfCobar(C, pres, extended=True)
    ctx = h.ctx
    v = h.vertex
    words = []
    for n in range(max_degree + 1):
        words.extend(ctx.basis(v, v, n, max_length, allow_capped=True))
    checks: Dict[str, bool] = {}
    first: Optional[str] = None

    def record(name: str, ok: bool):
        nonlocal first
        checks[name] = ok
        if not ok and first is None:
            first = name

    ok = True
    for w in words:
        cp = h.coproduct(w)
        lhs = {}
        rhs = {}
        for (x, y), c in cp.items():
            for (a, b), c2 in h.coproduct(x).items():
                k = (a, b, y)
                lhs[k] = lhs.get(k, 0) + c * c2
            for (a, b), c2 in h.coproduct(y).items():
                k = (x, a, b)
                rhs[k] = rhs.get(k, 0) + c * c2
        if {k: c for k, c in lhs.items() if c} != \
                {k: c for k, c in rhs.items() if c}:
            ok = False
            break
    record("coproduct coassociative", ok)

    ok = True
    for w in words:
        left = FormalSum()
        right = FormalSum()
        for (x, y), c in h.coproduct(w).items():
            if h.counit(x):
                left.add_term(y, c)
            if h.counit(y):
                right.add_term(x, c)
        if left != FormalSum.term(w) or right != FormalSum.term(w):
            ok = False
            break
    record("coproduct counital", ok)

    ok = True
    small = [w for w in words if ctx.degree(w) * 2 <= max_degree][:20]
    for w1 in small:
        for w2 in small:
            lhs = h.coproduct(ctx.compose(w1, w2))
            rhs = PairSum()
            for (x1, y1), c1 in h.coproduct(w1).items():
                for (x2, y2), c2 in h.coproduct(w2).items():
                    s = -1 if (ctx.degree(y1) * ctx.degree(x2)) % 2 else 1
                    rhs.add((ctx.compose(x1, x2), ctx.compose(y1, y2)),
                            s * c1 * c2)
            if lhs != rhs:
                ok = False
                break
        if not ok:
            break
    record("coproduct multiplicative", ok)

    ok = True
    for w in words:
        lhs = PairSum()
        for t, c in ctx.differential(w).items():
            for pair, c2 in h.coproduct(t).items():
                lhs.add(pair, c * c2)
        rhs = PairSum()
        for (x, y), c in h.coproduct(w).items():
            for t, c2 in ctx.differential(x).items():
                rhs.add((t, y), c * c2)
            s = -1 if ctx.degree(x) % 2 else 1
            for t, c2 in ctx.differential(y).items():
                rhs.add((x, t), s * c * c2)
        if lhs != rhs:
            ok = False
            break
    record("coproduct chain map", ok)

    ok = all(h.check_antipode_equations(w) for w in words)
    record("antipode equations", ok)

    ok = True
    for w in words:
        lhs = ctx.differential(w).map_terms(h.antipode)
        rhs = h.antipode(w).map_terms(ctx.differential)
        if lhs != rhs:
            ok = False
            break
    record("antipode chain map", ok)

    tau = universal_twisting_cochain(ctx)
    record("universal twisting cochain", not twisting_cochain_residuals(ctx, tau))

    tw = TwistedComplex(h)
    tw_gens = []
    for n in range(max_degree + 1):
        tw_gens.extend(tw.basis(n, max_length))
    ok = all(tw.differential(g).map_terms(tw.differential).is_zero()
             for g in tw_gens)
    record("twisted differential squares to zero", ok)

    lc = LoopComparison(h)
    ok = True
    for g in tw_gens:
        lhs = tw.differential(g).map_terms(lc.forward)
        rhs = lc.forward(g).map_terms(lc.coch.differential)
        if lhs != rhs:
            ok = False
            break
    record("comparison forward chain map", ok)

    coch_gens = []
    for n in range(max_degree + 1):
        coch_gens.extend(lc.coch.basis(n, max_length, allow_capped=True))
    ok = True
    for g in coch_gens:
        lhs = lc.coch.differential(g).map_terms(lc.backward)
        rhs = lc.backward(g).map_terms(tw.differential)
        if lhs != rhs:
            ok = False
            break
    record("comparison backward chain map", ok)

    ok = True
    ch_gens = []
    for g in tw_gens:
        for y, c in lc.alpha_two(g).items():
            ch_gens.append(y)
    for g in set(ch_gens):
        comp = phi_map(h, g).map_terms(lambda x: phi_map(h, x, inverse=True))
        if comp != FormalSum.term(g):
            ok = False
            break
    record("phi and phi inverse", ok)

    ok = True
    for c in sorted(C.degree_of):
        g = constant_loop(h, c)
        lhs = tw.differential(g).map_terms(lc.forward)
        rhs = lc.forward(g).map_terms(lc.coch.differential)
        if lhs != rhs:
            ok = False
            break
    record("constant loops composite chain map", ok)

    return {"checks": checks, "first_failure": first}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopspace",
        description="Exact chain-level free loop space homology")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--ring", choices=("z", "q", "fp"), default="q")
        p.add_argument("--p", type=int, default=None,
                       help="prime for --ring fp")
        p.add_argument("--max-degree", dest="max_degree", type=int, default=3)
        p.add_argument("--max-length", dest="max_length", type=int,
                       default=None)
        p.add_argument("--extended", action="store_true")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--config", default=None,
                       help="JSON job config; overrides flags")

    p = sub.add_parser("validate", help="check a presentation and its chains")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("loop-homology",
                       help="homology of the loop space model")
    p.add_argument("input")
    common(p)
    p.add_argument("--route", choices=("cohochschild", "hochschild-of-cobar"),
                   default="cohochschild")
    p.set_defaults(func=cmd_loop_homology)

    p = sub.add_parser("compare", help="diff two computations")
    p.add_argument("config_a")
    p.add_argument("config_b")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("hopf-check",
                       help="bialgebra/antipode/twisted-tensor identity suite")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_hopf_check)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
