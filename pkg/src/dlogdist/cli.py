"""Command-line frontend. Every subcommand prints one JSON RunRecord (or CSV rows).

Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or
validation errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from .bounds import corollary1_count, erdos_turan_rhs, extreme_bound_check, theorem1_check
from .dlog import TABLE_MAX_P, build_table, dlog_bsgs, dlog_pollard_rho
from .errors import DlogDistError
from .experiments import (
    IntPolynomial,
    MultiBaseSpec,
    multibase_sum,
    ordering_frequencies,
    poly_twist_sum,
    union_discrepancy_check,
)
from .expsum import (
    log_character_sum,
    progression_phase_sum,
    pv_bound_check,
    resolvent,
    verify_decomposition,
    verify_inversion,
)
from .numtheory import build_ctx
from .torus import (
    BRUTE_FORCE_MAX,
    Interval,
    Progression,
    TorusPoints,
    brute_force_extreme_discrepancy,
    discrepancy_report,
    extreme_discrepancy,
    log_image,
)

# Keys that never enter the config echo: they do not change results.
_NOT_CONFIG = {"func", "format", "jobs"}


def _num(x):
    """Normalise a value for JSON: 15 significant digits, complex as {re, im}."""
    if isinstance(x, (bool, np.bool_)) or x is None or isinstance(x, str):
        return bool(x) if isinstance(x, np.bool_) else x
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating, Fraction)):
        f = float(x)
        if not math.isfinite(f):
            return None
        return float(f"{f:.15g}")
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _num(x.real), "im": _num(x.imag)}
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_num(v) for v in x]
    raise TypeError(f"cannot serialise {type(x).__name__}")


def _setup(args, table: bool = True):
    ctx = build_ctx(args.p, args.g)
    tab = build_table(ctx) if table else None
    return ctx, tab


def _progression(args) -> Progression:
    a = args.a
    r = args.r
    n = args.n if args.n is not None else (args.p - 1 - a) // r
    J = Progression(a, r, n)
    J.validate(args.p)
    return J


def _interval(args) -> Interval:
    return Interval(Fraction(args.alpha), Fraction(args.beta))


def _random_intervals(count: int, seed: int) -> list[Interval]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        x, y = sorted((rng.random(), rng.random()))
        out.append(Interval(x, y))
    return out


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise DlogDistError("missing required flag(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


# --- subcommands: each returns (results, checks) ---------------------------


def cmd_primroot(args):
    ctx = build_ctx(args.p, args.g)
    return {"p": ctx.p, "g": ctx.g, "factors": [list(f) for f in ctx.factors]}, {
        "generator": ctx.is_generator(ctx.g)
    }


def cmd_dlog(args):
    _need(args, "x")
    use_table = args.method == "table"
    if use_table and args.p > TABLE_MAX_P:
        raise DlogDistError(f"--method table needs p <= {TABLE_MAX_P}")
    ctx, tab = _setup(args, table=use_table)
    if args.method == "table":
        n = tab[args.x]
    elif args.method == "bsgs":
        n = dlog_bsgs(ctx, args.x)
    else:
        n = dlog_pollard_rho(ctx, args.x, args.seed)
    return {"log": n, "g": ctx.g}, {"round_trip": pow(ctx.g, n, ctx.p) == args.x % ctx.p}


def cmd_image(args):
    ctx, tab = _setup(args)
    J = _progression(args)
    M = log_image(ctx, J, tab)
    return {
        "g": ctx.g,
        "denominator": M.denominator,
        "cardinality": M.card,
        "numerators": M.numerators.tolist(),
    }, {"cardinality": M.card == J.N}


def cmd_discrepancy(args):
    ctx, tab = _setup(args)
    M = log_image(ctx, _progression(args), tab)
    if args.alpha is not None or args.beta is not None:
        _need(args, "alpha", "beta")
        rep = discrepancy_report(M, _interval(args), args.half_open)
        return rep.to_dict(), {"bounded": abs(rep.raw) <= M.card}
    rep = extreme_discrepancy(M)
    checks = {"normalized_at_least_1_over_card": rep.normalized * M.card >= 1}
    if M.card <= BRUTE_FORCE_MAX // 5:
        checks["matches_brute_force"] = brute_force_extreme_discrepancy(M).raw == rep.raw
    return rep.to_dict(), checks


def cmd_resolvent(args):
    _need(args, "k", "u")
    ctx, tab = _setup(args)
    p = ctx.p
    k, u = args.k % (p - 1), args.u % p
    s = resolvent(ctx, tab, k, u)
    res = {"value": s.value, "modulus_sq": abs(s.value) ** 2, "terms": s.terms, "err_bound": s.err_bound}
    if k == 0 and u == 0:
        checks = {"equals_p_minus_1": abs(s.value - (p - 1)) <= s.err_bound}
    elif u == 0:
        checks = {"vanishes": abs(s.value) <= s.err_bound}
    elif k == 0:
        checks = {"equals_minus_1": abs(s.value + 1) <= s.err_bound}
    else:
        checks = {"modulus_sq_is_p": abs(abs(s.value) ** 2 - p) <= 1e-6 * p}
    return res, checks


def cmd_phasesum(args):
    J = _progression(args)
    p = build_ctx(args.p, args.g).p
    us = [args.u % p] if args.u is not None else list(range(p))
    worst, rows = 0.0, []
    ok = True
    for u in us:
        ps = progression_phase_sum(p, J, u)
        ok &= ps.modulus <= ps.bound
        worst = max(worst, ps.modulus / ps.bound)
        if args.u is not None:
            rows.append({"u": u, "value": ps.value, "bound": ps.bound})
    res = {"max_ratio": worst, "u_checked": len(us)}
    if rows:
        res.update(rows[0])
    return res, {"within_bound": ok}


def cmd_logsum(args):
    _need(args, "k")
    ctx, tab = _setup(args)
    J = _progression(args)
    v = log_character_sum(ctx, tab, J, args.k)
    checks = {"trivial_bound": abs(v) <= J.N * (1 + 1e-12)}
    return {"value": v, "modulus": abs(v), "N": J.N}, checks


def _k_samples(args, q):
    if args.k is not None:
        return [args.k % q]
    rng = random.Random(args.seed)
    return [rng.randrange(q) for _ in range(args.samples or 20)]


def cmd_verify_eq4(args):
    ctx, tab = _setup(args)
    p, q = ctx.p, ctx.p - 1
    rng = random.Random(args.seed)
    if args.k is not None and args.z is not None:
        pairs = [(args.k % q, args.z)]
    else:
        pairs = [(rng.randrange(q), rng.randrange(1, p)) for _ in range(args.samples or 50)]
    worst = max(verify_inversion(ctx, tab, k, z) for k, z in pairs)
    return {"max_residual": worst, "pairs": len(pairs)}, {"residual_le_1e-7": worst <= 1e-7}


def cmd_verify_eq5(args):
    ctx, tab = _setup(args)
    J = _progression(args)
    ks = _k_samples(args, ctx.p - 1)
    worst = max(verify_decomposition(ctx, tab, J, k) for k in ks)
    return {"max_residual": worst, "ks": len(ks)}, {"residual_le_1e-7": worst <= 1e-7}


def cmd_verify_eq7(args):
    ctx, tab = _setup(args)
    J = _progression(args)
    if args.k is not None:
        rep = pv_bound_check(ctx, tab, J, ks=[args.k])
    else:
        rep = pv_bound_check(ctx, tab, J, samples=args.samples, seed=args.seed)
    return rep.to_dict(), {"ratio_le_1": rep.ok}


def cmd_et_bound(args):
    _need(args, "alpha", "beta")
    ctx, tab = _setup(args)
    M = log_image(ctx, _progression(args), tab)
    K = args.K if args.K is not None else ctx.p - 1
    iv = _interval(args)
    rep = discrepancy_report(M, iv)
    rhs = erdos_turan_rhs(M, K, iv)
    lhs = abs(float(rep.raw))
    return {"lhs": lhs, "rhs": rhs, "K": K}, {"et_inequality": lhs <= rhs * (1 + 1e-6)}


def cmd_theorem1(args):
    ctx, tab = _setup(args)
    J = _progression(args)
    if args.alpha is not None or args.beta is not None:
        _need(args, "alpha", "beta")
        ivs = [_interval(args)]
    else:
        ivs = _random_intervals(args.samples or 50, args.seed)
    reps = theorem1_check(ctx, tab, J, ivs, K=args.K)
    ratios = [r.ratio for r in reps if r.ratio is not None]
    ext = extreme_bound_check(ctx, tab, J)
    res = {
        "intervals": [r.to_dict() for r in reps],
        "c1_estimate": max(ratios) if ratios else None,
        "extreme": ext.to_dict(),
    }
    return res, {"et_inequality": all(r.et_ok for r in reps), "capacity": ext.capacity_ok}


def cmd_corollary1(args):
    _need(args, "s", "t")
    ctx, tab = _setup(args)
    rep = corollary1_count(ctx, tab, _progression(args), args.s, args.t, args.delta, args.c3)
    return rep.to_dict(), {"within_delta": bool(rep.within_delta)}


def cmd_union_check(args):
    ctx, tab = _setup(args)
    M = log_image(ctx, _progression(args), tab)
    rng = np.random.Generator(np.random.Philox(key=args.seed))
    ivs = _random_intervals(args.samples or 50, args.seed)
    worst = Fraction(0)
    for iv in ivs:
        mask = rng.random(M.card) < 0.5
        M1 = TorusPoints(M.denominator, M.numerators[mask])
        M2 = TorusPoints(M.denominator, M.numerators[~mask])
        worst = max(worst, union_discrepancy_check(M1, M2, iv))
    return {"max_residual": worst, "splits": len(ivs)}, {"exactly_zero": worst == 0}


def _parse_ints(text: str) -> list[int]:
    return [int(t) for t in text.replace(" ", "").split(",") if t]


def cmd_poly(args):
    _need(args, "coeffs")
    ctx, tab = _setup(args)
    J = _progression(args)
    P = IntPolynomial(tuple(_parse_ints(args.coeffs)), ctx.p - 1)
    v = poly_twist_sum(ctx, tab, J, P)
    checks = {"trivial_bound": abs(v) <= J.N * (1 + 1e-12)}
    if P.degree == 1 and P.coefficients[0] == 0:
        checks["matches_logsum"] = abs(v - log_character_sum(ctx, tab, J, P.coefficients[1])) <= 1e-12
    return {"value": v, "modulus": abs(v), "degree": P.degree, "N": J.N}, checks


def cmd_multibase(args):
    _need(args, "bases")
    ctx, tab = _setup(args)
    J = _progression(args)
    pairs = []
    for item in args.bases.split(","):
        h, _, b = item.partition(":")
        pairs.append((int(h), int(b or 1)))
    for h, _ in pairs:
        if not ctx.is_generator(h):
            raise DlogDistError(f"{h} is not a primitive root modulo {ctx.p}")
    v = multibase_sum(ctx, tab, J, MultiBaseSpec(args.lin, tuple(pairs)))
    envelope = math.sqrt(ctx.p) * math.log(ctx.p) ** 2
    res = {"value": v, "modulus": abs(v), "N": J.N, "envelope": envelope, "ratio": abs(v) / envelope}
    return res, {"trivial_bound": abs(v) <= J.N * (1 + 1e-12)}


def cmd_perm(args):
    ctx, tab = _setup(args)
    J = _progression(args)
    rt = args.r_tuple
    h = ordering_frequencies(ctx, tab, J, rt, args.mode, args.samples or 100_000, args.seed)
    freqs = h.frequencies()
    target = 1 / math.factorial(rt)
    res = h.to_dict()
    res["frequencies"] = {"".join(map(str, k)): v for k, v in freqs.items()}
    if rt == 2:
        res["fraction"] = freqs[(1, 2)]
    return res, {"near_uniform": all(abs(f - target) <= args.tol for f in freqs.values())}


def _sweep_one(p: int, seed: int, samples: int) -> dict:
    ctx = build_ctx(p)
    tab = build_table(ctx)
    J = Progression(0, 1, (p - 1) // 2)
    reps = theorem1_check(ctx, tab, J, _random_intervals(samples, seed))
    ratios = [r.ratio for r in reps if r.ratio is not None]
    ext = extreme_bound_check(ctx, tab, J)
    pv = pv_bound_check(ctx, tab, J)
    results = {
        "p": p,
        "g": ctx.g,
        "N": J.N,
        "c1_estimate": max(ratios) if ratios else None,
        "c2_estimate": ext.ratio,
        "extreme_normalized": ext.normalized,
        "pv_max_ratio": pv.max_ratio,
    }
    checks = {
        "et_inequality": all(r.et_ok for r in reps),
        "capacity": ext.capacity_ok,
        "pv_ratio_le_1": pv.ok,
    }
    return {"config": {"p": p, "seed": seed, "samples": samples}, "results": results, "checks": checks}


def cmd_sweep(args):
    primes = _parse_ints(args.primes)
    samples = args.samples or 50
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            records = list(ex.map(_sweep_one, primes, [args.seed] * len(primes), [samples] * len(primes)))
    else:
        records = [_sweep_one(p, args.seed, samples) for p in primes]
    checks = {f"p{r['config']['p']}.{k}": v for r in records for k, v in r["checks"].items()}
    return {"records": records}, checks


COMMANDS = {
    "primroot": (cmd_primroot, "smallest (or given) primitive root and factored p-1"),
    "dlog": (cmd_dlog, "discrete logarithm of --x"),
    "image": (cmd_image, "log image of the progression on the torus"),
    "discrepancy": (cmd_discrepancy, "interval (with --alpha/--beta) or extreme discrepancy"),
    "resolvent": (cmd_resolvent, "Lagrangian resolvent S(theta^k, zeta^u)"),
    "phasesum": (cmd_phasesum, "progression phase sum and its bound"),
    "logsum": (cmd_logsum, "log-twisted character sum over the progression"),
    "verify-eq4": (cmd_verify_eq4, "inversion identity residuals"),
    "verify-eq5": (cmd_verify_eq5, "decomposition identity residuals"),
    "verify-eq7": (cmd_verify_eq7, "sqrt(p)(2 + ln p) bound on log character sums"),
    "et-bound": (cmd_et_bound, "Erdős–Turán right-hand side for one interval"),
    "theorem1": (cmd_theorem1, "interval and extreme discrepancy against their bounds"),
    "corollary1": (cmd_corollary1, "count logs in a window [s, t]"),
    "union-check": (cmd_union_check, "discrepancy additivity over disjoint splits"),
    "poly": (cmd_poly, "polynomial twist sum"),
    "multibase": (cmd_multibase, "sum over several primitive roots"),
    "perm": (cmd_perm, "ordering pattern frequencies of logs"),
    "sweep": (cmd_sweep, "constant estimates across a list of primes"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="odd prime modulus")
    common.add_argument("--g", type=int, help="primitive root (default: smallest)")
    common.add_argument("--a", type=int, default=0, help="progression offset")
    common.add_argument("--r", type=int, default=1, help="progression step")
    common.add_argument("--n", type=int, help="progression length (default: longest that fits)")
    common.add_argument("--x", type=int)
    common.add_argument("--z", type=int)
    common.add_argument("--k", type=int)
    common.add_argument("--u", type=int)
    common.add_argument("--alpha", type=str)
    common.add_argument("--beta", type=str)
    common.add_argument("--K", type=int, help="Erdős–Turán truncation (default p-1)")
    common.add_argument("--s", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--delta", type=float, default=0.1)
    common.add_argument("--c3", type=float, default=1.0, help="probe constant for the window-count hypothesis")
    common.add_argument("--coeffs", type=str, help="polynomial coefficients a0,a1,...")
    common.add_argument("--bases", type=str, help="g1:b1,g2:b2,...")
    common.add_argument("--lin", type=int, default=0, help="coefficient of x in multibase")
    common.add_argument("--r-tuple", type=int, default=2)
    common.add_argument(
        "--mode", choices=["exhaustive", "exhaustive-adjacent", "sampled"], default="sampled"
    )
    common.add_argument("--method", choices=["table", "bsgs", "rho"], default="table")
    common.add_argument("--samples", type=int)
    common.add_argument("--tol", type=float, default=0.02)
    common.add_argument("--primes", type=str, default="101,1009,10007")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--half-open", action="store_true")

    parser = argparse.ArgumentParser(prog="dlogdist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (fn, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
    return parser


def _flatten(d, prefix=""):
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, separators=(",", ":"))
        else:
            out[key] = v
    return out


def _to_csv(record: dict) -> str:
    if "records" in record["results"]:
        rows = [_flatten(r) for r in record["results"]["records"]]
    else:
        rows = [_flatten({k: record[k] for k in ("config", "results", "checks")})]
    fields = list(dict.fromkeys(k for row in rows for k in row))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command != "sweep" and args.p is None:
        parser.error("--p is required")
    config = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_CONFIG and v is not None}
    t0 = time.perf_counter()
    try:
        results, checks = args.func(args)
    except (DlogDistError, ValueError, ZeroDivisionError) as exc:
        print(f"dlogdist {args.command}: {exc}", file=sys.stderr)
        return 2
    record = {
        "config": _num(config),
        "results": _num(results),
        "checks": {k: bool(v) for k, v in checks.items()},
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
        "version": __version__,
    }
    if args.format == "csv":
        stdout.write(_to_csv(record))
    else:
        stdout.write(json.dumps(record, sort_keys=True) + "\n")
    return 0 if all(record["checks"].values()) else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
