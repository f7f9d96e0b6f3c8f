"""Command line front end: ``rlab expand | check | bounds``."""

from __future__ import annotations

import argparse
import inspect
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import convergence as cv
from .identities import CONJECTURE, PROVEN, REGISTRY
from .ruijsenaars import chi, f_glN_balanced, f_nonstat, f_trig, phi_bigraded, phi_trig
from .series import PoleError, scalar, sorted_terms
from .special import ParamPoint, random_point

SERIES = ("f_trig", "f_nonstat", "f_balanced", "phi", "phi_bigraded", "chi")


def _rational(text: str):
    try:
        return scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _rational_list(text: str):
    return tuple(_rational(x) for x in text.split(",") if x)


def _int_list(text: str):
    try:
        return tuple(int(x) for x in text.split(",") if x)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int, default=None, help="number of variables")
    common.add_argument("--order", type=int, default=None, help="total truncation degree D")
    common.add_argument("--dual-order", type=int, default=None, help="truncation degree in the dual block")
    common.add_argument("--r", type=_rational, default=None, help="square root of q")
    common.add_argument("--t", type=_rational, default=None)
    common.add_argument("--kappa", type=_rational, default=None)
    common.add_argument("--s", type=_rational_list, default=None, help="spectral variables a/b,c/d,...")
    common.add_argument("--lambda", dest="lam", type=_int_list, default=None,
                        help="integer exponents; selects the spectral point s_i = t^(N-i) q^lam_i")
    common.add_argument("--beta", type=int, default=None, help="integer with t = q**beta")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--strict", action="store_true", help="conjecture checks also gate the exit code")
    common.add_argument("--jobs", type=int, default=1, help="maximum number of worker processes")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--plain", dest="fmt", action="store_const", const="plain")

    parser = argparse.ArgumentParser(prog="rlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("expand", parents=[common], help="expand a series")
    p.add_argument("series", nargs="?", default="f_trig", choices=SERIES)
    p = sub.add_parser("check", parents=[common], help="run identity and conjecture checks")
    p.add_argument("names", nargs="*", help=f"subset of: {', '.join(REGISTRY)}")
    sub.add_parser("bounds", parents=[common], help="convergence constants and estimates")
    return parser


# -- expand ----------------------------------------------------------------------------------------


def _point(args, N) -> ParamPoint:
    base = random_point(N, args.seed)
    r = args.r if args.r is not None else base.r
    kappa = args.kappa if args.kappa is not None else base.kappa
    if args.lam is not None:
        if len(args.lam) != N:
            raise ValueError(f"--lambda needs {N} entries")
        if args.beta is not None:
            return ParamPoint.spectral(r, args.lam, beta=args.beta, kappa=kappa)
        t = args.t if args.t is not None else base.t
        return ParamPoint.spectral(r, args.lam, t=t, kappa=kappa)
    t = args.t if args.t is not None else (r * r) ** args.beta if args.beta is not None else base.t
    s = args.s if args.s is not None else base.s
    if len(s) != N:
        raise ValueError(f"--s needs {N} entries")
    return ParamPoint(r=r, t=t, kappa=kappa, s=s)


def _labels(series, N, nvars):
    z = [f"z{i}" for i in range(1, N + 1)]
    if nvars == 2 * N:
        return z + [f"w{i}" for i in range(1, N + 1)]
    return z[:nvars]


def cmd_expand(args) -> tuple[dict, int]:
    N = args.N or 2
    D = 4 if args.order is None else args.order
    Ds = D if args.dual_order is None else args.dual_order
    name = args.series
    P = _point(args, N)
    if name == "f_trig":
        f = f_trig(N, D, P)
    elif name == "f_nonstat":
        f = f_nonstat(N, D, P)
    elif name == "f_balanced":
        f = f_glN_balanced(N, D, P.q, P.t, P.kappa, P.s)
    elif name == "phi":
        f = phi_trig(N, D, P)
    elif name == "phi_bigraded":
        f = phi_bigraded(N, D, Ds, P.q, P.t)
    else:
        f = chi(N, D, Ds, P.q, P.t)
    # the trigonometric series never involve z_N
    keep = f.nvars - 1 if name in ("f_trig", "phi") else f.nvars
    terms = []
    for k, c in sorted_terms(f):
        if any(k[keep:]):
            raise AssertionError("trigonometric series with a z_N term")
        terms.append({"exponents": list(k[:keep]), "num": str(c.numerator), "den": str(c.denominator)})
    doc = {"series": name, "variables": _labels(name, N, keep), "order": D,
           "point": P.describe(), "terms": terms}
    if f.dual is not None:
        doc["dual_order"] = Ds
    return doc, 0


# -- check -------------------------------------------------------------------------------------------


def _driver_kwargs(fn, args) -> dict:
    params = inspect.signature(fn).parameters
    kw = {}
    if args.N is not None and "N" in params:
        kw["N"] = args.N
    if args.order is not None and "order" in params:
        kw["order"] = args.order
    if "seed" in params:
        kw["seed"] = args.seed
    if args.lam is not None:
        if "lam" in params:
            kw["lam"] = args.lam
        elif "lams" in params:
            kw["lams"] = [args.lam]
    if args.beta is not None:
        if "beta" in params:
            kw["beta"] = args.beta
        elif "betas" in params:
            kw["betas"] = (args.beta,)
    if args.r is not None and "r" in params:
        kw["r"] = args.r
    if args.kappa is not None and "kappa" in params:
        kw["kappa"] = args.kappa
    return kw


def _run(name, kw):
    return REGISTRY[name](**kw).as_dict()


def cmd_check(args) -> tuple[dict, int]:
    names = args.names or list(REGISTRY)
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    jobs = [(n, _driver_kwargs(REGISTRY[n], args)) for n in names]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run, *zip(*jobs)))
    else:
        results = [_run(n, kw) for n, kw in jobs]
    proven_ok = all(r["passed"] for r in results if r["kind"] == PROVEN)
    conj_ok = all(r["passed"] for r in results if r["kind"] == CONJECTURE)
    ok = proven_ok and (conj_ok or not args.strict)
    return {"results": results, "proven_passed": proven_ok,
            "conjectures_consistent": conj_ok, "strict": args.strict}, 0 if ok else 1


# -- bounds ------------------------------------------------------------------------------------------


def cmd_bounds(args) -> tuple[dict, int]:
    N = args.N or 2
    D = 6 if args.order is None else args.order
    inp = cv.sample_input(N, args.seed)
    rep = cv.check_coeff_bound(inp, D)
    rho = 0.5 * rep.rho_max
    ps = cv.partial_sums(inp, [rho] * N, max(D, 1))
    doc = {"float": True, "N": N, "order": D,
           "input": {"sigma": inp.sigma, "q": inp.q, "kappa": inp.kappa,
                     "t": [inp.t.real, inp.t.imag], "s": [[x.real, x.imag] for x in inp.s]},
           "bounds": rep.as_dict(), "partial_sums": ps.as_dict()}
    return doc, 0 if rep.passed and ps.passed else 1


# -- output ------------------------------------------------------------------------------------------


def _plain(doc) -> str:
    lines = []
    if "terms" in doc:
        lines.append(f"{doc['series']}  order {doc['order']}  variables {' '.join(doc['variables'])}")
        rows = [(" ".join(map(str, t["exponents"])) or "-",
                 t["num"] if t["den"] == "1" else f"{t['num']}/{t['den']}") for t in doc["terms"]]
        w = max((len(a) for a, _ in rows), default=1)
        lines += [f"{a.ljust(w)}  {b}" for a, b in rows]
    elif "results" in doc:
        w = max(len(r["name"]) for r in doc["results"])
        for r in doc["results"]:
            line = f"{r['name'].ljust(w)}  {r['kind']:10s}  {r['status']:12s}  cases {r['cases']}"
            if "discrepancy" in r:
                line += f"  first discrepancy {json.dumps(r['discrepancy'], sort_keys=True)}"
            lines.append(line)
    else:
        b = doc["bounds"]
        lines.append(f"C1 {b['C1']:.12g}  C2 {b['C2']:.12g}  rho_max {b['rho_max']:.12g}")
        lines.append(f"worst |C|^(1/|lam|) {b['worst_root']:.12g}  margin {b['margin']:.12g}  "
                     f"checked {b['checked']}  passed {b['passed']}")
        lines.append(f"partial sums passed {doc['partial_sums']['passed']}  "
                     f"alpha {doc['partial_sums']['alpha']:.6g}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    commands = {"expand": cmd_expand, "check": cmd_check, "bounds": cmd_bounds}
    try:
        doc, code = commands[args.command](args)
    except PoleError as exc:
        doc, code = {"error": {"type": "pole", "message": str(exc)}}, 2
    except (ValueError, cv.HypothesisError) as exc:
        doc, code = {"error": {"type": "invalid", "message": str(exc)}}, 2
    if args.fmt == "plain" and "error" not in doc:
        print(_plain(doc))
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
