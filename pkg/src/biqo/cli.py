"""Command-line interface: ``biqo {quantify,curve,verify,maximize,simulate}``.

Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict

from . import capacity, cloning, tradeoff
from .ensemble import helstrom_error, make_ensemble
from .errors import BiqoError
from .report import CURVE_MEASURES, MAXIMIZE_TARGETS, curve, measure_report, most_quantum

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

CAPACITY_TOL = 1e-4
SEARCH_TOL = 2e-3

SEED_ENV = "BIQO_SEED"


class UsageError(Exception):
    pass


def _overlap(args) -> float:
    if args.theta_degrees is not None:
        return math.cos(math.radians(args.theta_degrees))
    if args.overlap is None:
        raise UsageError("an overlap is required (--overlap or --theta-degrees)")
    return args.overlap


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_quantify(args) -> int:
    rep = measure_report(_overlap(args))
    if args.format == "json":
        _emit_json(rep.as_dict())
        return EXIT_OK
    for key, val in rep.as_dict().items():
        print(f"{key:<8} {val:.6f}")
    return EXIT_OK


def _format_curve(header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, row)) for row in rows], indent=2) + "\n"
    lines = [",".join(header)]
    lines += [",".join(f"{v:.12g}" for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def cmd_curve(args) -> int:
    overlap = None
    if args.measure == "tradeoff":
        overlap = _overlap(args)
    header, rows = curve(args.measure, args.steps, overlap)
    text = _format_curve(header, rows, args.format)
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _verify_values(args, x: float, seed: int):
    """Return ``(closed, oracle, tolerance, extra)`` for the chosen target."""
    target = args.target
    if target == "c1":
        oracle = capacity.accessible_info_oracle(x, args.angle_steps, args.prior_steps)
        return capacity.c1_closed(x), oracle, CAPACITY_TOL, {}
    if target == "cinf":
        oracle, prior = capacity.holevo_prior_oracle(x, args.prior_steps)
        return capacity.c_inf_closed(x), oracle, CAPACITY_TOL, {"argmax_prior": prior}
    if target == "tradeoff":
        p = helstrom_error(make_ensemble(x)) if args.p_eve is None or args.at_max_info else args.p_eve
        cfg = tradeoff.EavesdropConfig(
            x=x, p_eve=p, probe_dim=args.probe_dim, restarts=args.restarts, seed=seed
        )
        res = tradeoff.probe_oracle(cfg)
        extra = {"p_eve": p, "p_achieved": res.p_achieved, "converged": res.converged}
        return tradeoff.disturbance_curve(x, p), res.d, SEARCH_TOL, extra
    objective = "global" if target == "clone-global" else "local"
    cand = cloning.cloning_oracle(x, objective, restarts=args.restarts, seed=seed)
    if objective == "global":
        closed, found = cloning.global_fidelity_closed(x), cand.f_global
    else:
        closed, found = cloning.local_fidelity_closed(x), cand.f_local
    extra = {
        "feasible": cand.feasible,
        "marginal_residual": cand.marginal_residual,
        "overlap_residual": cand.overlap_residual,
    }
    return closed, found, SEARCH_TOL, extra


def cmd_verify(args) -> int:
    x = _overlap(args)
    seed = _seed(args)
    closed, oracle, tol, extra = _verify_values(args, x, seed)
    deviation = abs(oracle - closed)
    passed = deviation <= tol
    if args.format == "json":
        _emit_json(
            {
                "target": args.target,
                "x": x,
                "closed_form": closed,
                "oracle": oracle,
                "deviation": deviation,
                "tolerance": tol,
                "pass": passed,
                **extra,
            }
        )
    else:
        print(f"target      {args.target}")
        print(f"x           {x:.6f}")
        print(f"closed form {closed:.8f}")
        print(f"oracle      {oracle:.8f}")
        print(f"deviation   {deviation:.3e} (tolerance {tol:g})")
        for key, val in extra.items():
            print(f"{key:<11} {val}")
        print("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_maximize(args) -> int:
    res = most_quantum(args.measure, args.tol)
    if args.format == "json":
        _emit_json(
            {
                "measure": res.measure,
                "argmax": res.search.argmax,
                "value": res.search.value,
                "iterations": res.search.iterations,
                "bracket": list(res.search.bracket),
                "reference_argmax": res.reference_argmax,
                "deviation": res.deviation,
            }
        )
        return EXIT_OK
    print(f"measure     {res.measure}")
    print(f"argmax      {res.search.argmax:.6f}")
    print(f"value       {res.search.value:.6f}")
    print(f"reference   {res.reference_argmax:.6f}")
    print(f"deviation   {res.deviation:.3e}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    x = _overlap(args)
    seed = _seed(args)
    eve = None
    if args.eve == "on":
        cfg = tradeoff.EavesdropConfig(
            x=x,
            p_eve=helstrom_error(make_ensemble(x)),
            probe_dim=args.probe_dim,
            restarts=args.restarts,
            seed=seed,
        )
        eve = tradeoff.probe_oracle(cfg)
    stats = tradeoff.simulate_b92(x, args.rounds, eve, seed)
    if args.format == "json":
        _emit_json(asdict(stats))
        return EXIT_OK
    print(f"x           {stats.x:.6f}")
    print(f"rounds      {stats.rounds}")
    print(f"seed        {stats.seed}")
    print(
        f"disturbance empirical {stats.disturbance_rate:.6f}  exact {stats.disturbance_expected:.6f}"
        f"  stderr {stats.disturbance_stderr:.6f}"
    )
    if stats.eve_present:
        print(
            f"eve error   empirical {stats.eve_error_rate:.6f}  exact {stats.eve_error_expected:.6f}"
            f"  stderr {stats.eve_error_stderr:.6f}"
        )
    else:
        print("eve error   (no eavesdropper)")
    return EXIT_OK


def _add_overlap(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--overlap", "-x", type=float, help="overlap <psi0|psi1> in [0, 1]")
    g.add_argument("--theta-degrees", type=float, help="angle between the states; x = cos(theta)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biqo", description="Quantumness measures for two nonorthogonal pure states."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantify", help="all closed-form measures at one overlap")
    _add_overlap(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_quantify)

    p = sub.add_parser("curve", help="sample a measure over the overlap range")
    p.add_argument("--measure", required=True, choices=sorted(CURVE_MEASURES) + ["tradeoff"])
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_overlap(p, required=False)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("verify", help="check a closed form against its numerical oracle")
    p.add_argument(
        "--target", required=True, choices=("c1", "cinf", "tradeoff", "clone-global", "clone-local")
    )
    _add_overlap(p)
    p.add_argument("--angle-steps", type=int, default=400)
    p.add_argument("--prior-steps", type=int, default=400)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--probe-dim", type=int, default=4)
    p.add_argument("--p-eve", type=float, default=None, help="Eve's error budget (tradeoff)")
    p.add_argument("--at-max-info", action="store_true", help="use p_eve = Helstrom error")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("maximize", help="find the most quantum overlap for a measure")
    p.add_argument("--measure", required=True, choices=sorted(MAXIMIZE_TARGETS))
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_maximize)

    p = sub.add_parser("simulate", help="Monte Carlo of B92 transmissions")
    _add_overlap(p)
    p.add_argument("--rounds", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--eve", choices=("on", "off"), default="on")
    p.add_argument("--restarts", type=int, default=4, help="probe search restarts")
    p.add_argument("--probe-dim", type=int, default=4)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BiqoError) as exc:
        print(f"biqo {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
