"""Command-line interface: `locklab <subcommand>`.

Exit codes: 0 success, 1 domain/computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict

from . import asymptotics, harness, specfun
from .dynamics import SimConfig, integrate, threshold_bisect
from .locking import FrequencySpec, Rule, locking_threshold_exact, make_frequencies


def _rule_arg(parser, required=True):
    parser.add_argument("--rule", required=required,
                        choices=[r.value for r in Rule])
    parser.add_argument("--sigma", type=float, default=None)
    parser.add_argument("--beta", type=float, default=None)


def _spec_from(args, gamma: float = 1.0) -> FrequencySpec:
    return FrequencySpec(Rule(args.rule), args.n, gamma,
                         sigma=args.sigma, beta=args.beta)


def _print_fields(pairs, as_json: bool, digits: int):
    if as_json:
        print(json.dumps({k: v for k, v in pairs}, indent=2))
    else:
        width = max(len(k) for k, _ in pairs)
        for k, v in pairs:
            if isinstance(v, float):
                print(f"{k:<{width}}  {v:.{digits}g}")
            else:
                print(f"{k:<{width}}  {v}")


def _cmd_constants(args) -> int:
    qrs = specfun.qrs_c1()
    _print_fields([
        ("c1", qrs.c1),
        ("c2", qrs.c2),
        ("zeta_neg_half", qrs.zeta_neg_half_at_c1),
        ("prefactor", qrs.prefactor),
    ], args.json, 12)
    return 0


def _cmd_freqs(args) -> int:
    omega = make_frequencies(_spec_from(args, args.gamma))
    if args.json:
        print(json.dumps([float(w) for w in omega]))
    else:
        for w in omega:
            print(f"{w:.15g}")
    return 0


def _cmd_threshold(args) -> int:
    sol = locking_threshold_exact(_spec_from(args))
    _print_fields([
        ("sin_theta_max", float(sol.sin_theta_max)),
        ("r", float(sol.r)),
        ("omega_max", float(sol.omega_max)),
        ("gamma_l", float(sol.gamma_l)),
        ("residual", float(sol.residual)),
    ], args.json, 15)
    return 0


def _cmd_predict(args) -> int:
    rule = Rule(args.rule)
    if rule is Rule.SIGMA_BETA:
        gamma = asymptotics.predict_gamma_custom(args.sigma, args.beta, args.n)
        _print_fields([("rule", rule.value), ("n", args.n), ("gamma_l", gamma)],
                      args.json, 15)
        return 0
    p = asymptotics.predict_gamma(rule, args.n)
    _print_fields([
        ("rule", p.rule.value),
        ("n", p.n),
        ("gamma_l", p.gamma_l),
        ("term_pi4", p.term_pi4),
        ("term_inv_n", p.term_inv_n),
        ("term_n32", p.term_n32),
        ("error_order", p.error_order),
    ], args.json, 15)
    return 0


def _cmd_decompose(args) -> int:
    ctx = asymptotics.mesh_context(args.n, args.mode)
    m = ctx.m
    total = asymptotics.alpha_sum(ctx)
    bulk = asymptotics.bulk_sum(ctx)
    fringe = asymptotics.fringe_sum(ctx)
    _print_fields([
        ("n", args.n),
        ("m", m),
        ("mode", args.mode),
        ("s_m", ctx.s_m),
        ("delta_u", ctx.delta_u),
        ("alpha_sum", total),
        ("bulk_sum", bulk),
        ("fringe_sum", fringe),
        ("bulk_closed_form", asymptotics.bulk_closed_form(m)),
        ("fringe_closed_form", asymptotics.fringe_closed_form(m)),
        ("gamma_l_from_sum", total / 4.0),
    ], args.json, 15)
    return 0


def _sim_config(args) -> SimConfig:
    kw = {}
    if args.dt is not None:
        kw["dt"] = args.dt
    if args.id_time is not None:
        kw["identification_time"] = args.id_time
    if args.max_transient is not None:
        kw["max_transient"] = args.max_transient
    if args.tol is not None:
        kw["lock_tolerance"] = args.tol
    if getattr(args, "bisect_tol", None) is not None:
        kw["gamma_bisect_tol"] = args.bisect_tol
    return SimConfig(**kw)


def _cmd_simulate(args) -> int:
    spec = _spec_from(args, args.gamma)
    out = integrate(spec, _sim_config(args))
    print(json.dumps({
        "verdict": out.verdict.value,
        "freq_spread": out.freq_spread,
        "elapsed": out.elapsed,
        "order_param_final": float(out.order_param_final),
    }, indent=2))
    return 0


def _cmd_bisect(args) -> int:
    res = threshold_bisect(_spec_from(args), _sim_config(args))
    print(json.dumps({
        "gamma_l": res.gamma_l,
        "probes": [{"gamma": g, "verdict": v.value} for g, v in res.probes],
    }, indent=2))
    return 0


def _cmd_sweep(args) -> int:
    if (args.n_geom is None) == (args.n is None):
        raise ValueError("give exactly one of --n-geom or --n")
    n_values = harness.geometric_ladder(args.n_geom) if args.n_geom else args.n
    rows = harness.sweep(Rule(args.rule), n_values,
                         include_simulation=args.simulate,
                         config=_sim_config(args),
                         sigma=args.sigma, beta=args.beta,
                         sim_cap=args.sim_cap)
    if args.out:
        harness.emit(rows, args.format, args.out)
    else:
        harness.emit(rows, args.format, sys.stdout)
    return 0


def _cmd_fit(args) -> int:
    rows = harness.read_rows(args.infile)
    pairs = []
    for r in rows:
        y = getattr(r, args.column)
        if y is None:
            continue
        pairs.append((r.n, y - args.subtract))
    fit = harness.fit_power_law(pairs)
    print(json.dumps(asdict(fit), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locklab",
        description="Finite-N Kuramoto locking threshold: exact, asymptotic, simulated.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", help="QRS constants and the N^-3/2 prefactor")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("freqs", help="print the natural frequencies of a rule")
    _rule_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_freqs)

    p = sub.add_parser("threshold", help="exact locking threshold")
    _rule_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("predict", help="closed-form gamma_L prediction")
    _rule_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("decompose", help="bulk/fringe decomposition of the sum")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=[asymptotics.EXACT_S, asymptotics.ASYMPTOTIC_S],
                   default=asymptotics.EXACT_S)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_decompose)

    def _sim_flags(p, bisect_tol=False):
        p.add_argument("--dt", type=float, default=None)
        p.add_argument("--id-time", type=float, default=None)
        p.add_argument("--max-transient", type=float, default=None)
        p.add_argument("--tol", type=float, default=None)
        if bisect_tol:
            p.add_argument("--bisect-tol", dest="bisect_tol", type=float, default=None)

    p = sub.add_parser("simulate", help="one simulation run at fixed gamma")
    _rule_arg(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    _sim_flags(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("bisect", help="simulated threshold via bisection on gamma")
    _rule_arg(p)
    p.add_argument("--n", type=int, required=True)
    _sim_flags(p, bisect_tol=True)
    p.set_defaults(func=_cmd_bisect)

    p = sub.add_parser("sweep", help="per-N exact/predicted/simulated thresholds")
    _rule_arg(p)
    p.add_argument("--n-geom", help="geometric ladder min:max:factor")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--simulate", action="store_true")
    p.add_argument("--sim-cap", type=int, default=harness.DEFAULT_SIM_CAP)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _sim_flags(p, bisect_tol=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("fit", help="log-log power-law fit over a sweep column")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--column", default="residual",
                   choices=["residual", "gamma_exact", "gamma_predicted", "gamma_simulated"])
    p.add_argument("--subtract", type=float, default=0.0,
                   help="constant subtracted from the column before |.| (e.g. pi/4)")
    p.set_defaults(func=_cmd_fit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"locklab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
