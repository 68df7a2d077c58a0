"""Command-line front end: single-instance analysis and parameter sweeps.

Powers are given either in dB (``--snr1-db/--snr2-db``, converted here via
P = 10^(dB/10)) or linear (``--snr1/--snr2``); the library itself is purely
linear-domain.  All rates are bits per real channel use (log base 2).

Outputs are deterministic: rerunning a command with the same flags (and seed)
produces byte-identical files.  JSON goes to stdout or ``--output``; sweeps
emit CSV with a fixed, versioned column order (see docs/output-schemas.md).
Exit codes: 0 success, 1 structured analysis failure (JSON on stdout), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .aobg import (
    AlwaysRejectStrategy,
    BreakdownProbs,
    equilibrium_strategies,
    play_aobg,
    spe_mac,
    spe_pair,
    spe_residuals,
)
from .bargain import BargainingProblem, is_regular, phase1
from .channel import ChannelParams, classify_regime, disagreement_point, mac_safe_rates
from .errors import IcBargainError, InvalidParameterError
from .gdof import (
    GdofParams,
    gdof_disagreement,
    gdof_nbs,
    gdof_nbs_tdm,
    gdof_phase1,
    gdof_region,
    gdof_tdm_region,
)
from .nbs import nbs_concave, nbs_mac, nbs_polytope
from .regions import efficient_frontier, hk_region, mac_region, tdm_frontier

OUTDIR_ENV = "ICBARGAIN_OUTDIR"
SWEEP_HEADER = (
    "variable,value,r1_safe,r2_safe,r1_nbs,r2_nbs,gbar1,gbar2,gtilde1,gtilde2,status"
)
GRID_HEADER = "a,b,regime,noisy,cooperate,reason,regular,structural_monotone"


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def _fmt(x) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def _resolve_output(path: str | None) -> str | None:
    if path is None or path == "-":
        return None
    if not os.path.isabs(path):
        outdir = os.environ.get(OUTDIR_ENV)
        if outdir:
            return os.path.join(outdir, path)
    return path


def _emit(text: str, path: str | None) -> None:
    target = _resolve_output(path)
    if target is None:
        sys.stdout.write(text)
    else:
        parent = os.path.dirname(target)
        if parent:
            os.makedirs(parent, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _fail(kind: str, reason: str, condition: str | None, path: str | None) -> int:
    _emit(_json({"error": kind, "reason": reason, "condition": condition}), path)
    return 1


def _add_channel_args(sp: argparse.ArgumentParser, need_gains: bool = True) -> None:
    if need_gains:
        sp.add_argument("--a", type=float, help="power gain of the cross link into receiver 1")
        sp.add_argument("--b", type=float, help="power gain of the cross link into receiver 2")
    sp.add_argument("--snr1-db", type=float, help="user 1 power in dB")
    sp.add_argument("--snr2-db", type=float, help="user 2 power in dB")
    sp.add_argument("--snr1", type=float, help="user 1 power, linear")
    sp.add_argument("--snr2", type=float, help="user 2 power, linear")


def _add_output_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("-o", "--output", default=None, help="output file ('-' or omitted: stdout)")
    sp.add_argument("--format", choices=("json", "csv"), default=None, help="output format")


def _powers(args, parser: argparse.ArgumentParser) -> tuple[float, float]:
    db = (args.snr1_db, args.snr2_db)
    lin = (args.snr1, args.snr2)
    if any(v is not None for v in db) and any(v is not None for v in lin):
        parser.error("dB and linear power flags are mutually exclusive")
    if all(v is not None for v in db):
        return db_to_linear(db[0]), db_to_linear(db[1])
    if all(v is not None for v in lin):
        return lin[0], lin[1]
    parser.error("powers required: give --snr1-db/--snr2-db or --snr1/--snr2")
    raise AssertionError  # unreachable


def _channel(args, parser: argparse.ArgumentParser) -> ChannelParams:
    if args.a is None or args.b is None:
        parser.error("cross gains required: give --a and --b")
    p1, p2 = _powers(args, parser)
    return ChannelParams(a=args.a, b=args.b, p1=p1, p2=p2)


def _probs(args, parser: argparse.ArgumentParser, required: bool) -> BreakdownProbs | None:
    given = [v is not None for v in (args.p1, args.p2)]
    if required and not all(given):
        parser.error("breakdown probabilities required: give --p1 and --p2")
    if any(given) and not all(given):
        parser.error("give both --p1 and --p2 or neither")
    if not any(given):
        return None
    return BreakdownProbs(args.p1, args.p2)


# -- figure presets ---------------------------------------------------------------

PRESETS = {
    "fig3": {"command": "mac", "snr1_db": 20.0, "snr2_db": 15.0},
    "fig4a": {"command": "sweep", "kind": "grid", "snr1_db": 20.0, "snr2_db": 20.0},
    "fig4b": {"command": "sweep", "kind": "grid", "snr1_db": 20.0, "snr2_db": 30.0},
    "fig5a": {"command": "nbs", "a": 3.0, "b": 5.0, "snr1_db": 20.0, "snr2_db": 20.0},
    "fig5b": {"command": "nbs", "a": 0.1, "b": 3.0, "snr1_db": 20.0, "snr2_db": 20.0},
    "fig5c": {"command": "nbs", "a": 0.2, "b": 0.5, "snr1_db": 20.0, "snr2_db": 20.0},
    "fig6": {
        "command": "sweep", "kind": "line", "var": "b", "start": 0.0, "stop": 3.0,
        "steps": 61, "a": 1.5, "snr1_db": 20.0, "snr2_db": 20.0,
    },
    "fig7": {
        "command": "sweep", "kind": "line", "var": "p1", "start": 0.1, "stop": 0.9,
        "steps": 9, "a": 0.2, "b": 1.2, "snr1_db": 10.0, "snr2_db": 20.0, "p2": 0.5,
    },
    "fig10": {"command": "gdof", "theta1": 1.0, "theta2": 1.2, "theta3": 0.8},
}


def _apply_preset(args, parser: argparse.ArgumentParser) -> None:
    preset = PRESETS.get(args.preset)
    if preset is None:
        parser.error(f"unknown preset {args.preset!r}")
    if preset["command"] != args.command:
        parser.error(f"preset {args.preset!r} belongs to the {preset['command']!r} command")
    for key, value in preset.items():
        if key not in ("command", "kind"):
            setattr(args, key, value)
    if preset.get("kind"):
        args.grid = preset["kind"] == "grid"


# -- command handlers --------------------------------------------------------------


def _cmd_classify(args, parser) -> int:
    params = _channel(args, parser)
    regime = classify_regime(params)
    outcome = phase1(params)
    d0 = disagreement_point(params)
    payload = {
        "params": params.as_dict(),
        "regime": regime.as_dict(),
        "disagreement": list(d0),
        "phase1": outcome.as_dict(),
        "regularity": None,
    }
    if outcome.cooperate:
        region = hk_region(params, outcome.split)
        payload["regularity"] = is_regular(params, region, d0).as_dict()
    _emit(_json(payload), args.output)
    return 0


def _hk_problem(params, outcome):
    region = hk_region(params, outcome.split)
    d0 = disagreement_point(params)
    return region, d0, BargainingProblem(region, (d0.r1, d0.r2))


def _cmd_region(args, parser) -> int:
    params = _channel(args, parser)
    d0 = disagreement_point(params)
    if args.scheme == "tdm":
        frontier = tdm_frontier(params.p1, params.p2)
        payload = {
            "params": params.as_dict(),
            "region": frontier.as_dict(),
            "frontier": frontier.as_chain(129).as_dict(),
            "disagreement": list(d0),
        }
        _emit(_json(payload), args.output)
        return 0
    outcome = phase1(params)
    if not outcome.cooperate:
        return _fail("Phase1Failed", outcome.reason.value, outcome.condition, args.output)
    region, d0, _ = _hk_problem(params, outcome)
    payload = {
        "params": params.as_dict(),
        "phase1": outcome.as_dict(),
        "region": region.as_dict(),
        "frontier": efficient_frontier(region).as_dict(),
        "disagreement": list(d0),
        "regularity": is_regular(params, region, d0).as_dict(),
    }
    _emit(_json(payload), args.output)
    return 0


def _nbs_payload(params) -> dict | tuple[str, str, str | None]:
    """NBS for both schemes; returns an error triple when phase 1 fails."""
    outcome = phase1(params)
    if not outcome.cooperate:
        return ("Phase1Failed", outcome.reason.value, outcome.condition)
    region, d0, problem = _hk_problem(params, outcome)
    result = {
        "params": params.as_dict(),
        "phase1": outcome.as_dict(),
        "region": region.as_dict(),
        "disagreement": list(d0),
        "nbs": nbs_polytope(problem).as_dict(),
    }
    return result


def _cmd_nbs(args, parser) -> int:
    params = _channel(args, parser)
    d0 = disagreement_point(params)
    if args.scheme == "tdm":
        frontier = tdm_frontier(params.p1, params.p2)
        try:
            result = nbs_concave(frontier, d0)
        except IcBargainError as exc:
            return _fail(type(exc).__name__, str(exc), None, args.output)
        payload = {
            "params": params.as_dict(),
            "region": frontier.as_dict(),
            "disagreement": list(d0),
            "nbs": result.as_dict(),
        }
        _emit(_json(payload), args.output)
        return 0
    payload = _nbs_payload(params)
    if isinstance(payload, tuple):
        return _fail(payload[0], payload[1], payload[2], args.output)
    _emit(_json(payload), args.output)
    return 0


def _cmd_aobg(args, parser) -> int:
    params = _channel(args, parser)
    probs = _probs(args, parser, required=True)
    d0 = disagreement_point(params)
    if args.scheme == "tdm":
        feasible = tdm_frontier(params.p1, params.p2)
        try:
            problem = BargainingProblem(feasible, (d0.r1, d0.r2))
        except IcBargainError as exc:
            return _fail(type(exc).__name__, str(exc), None, args.output)
        aux = {"region": feasible.as_dict()}
    else:
        outcome = phase1(params)
        if not outcome.cooperate:
            return _fail("Phase1Failed", outcome.reason.value, outcome.condition, args.output)
        region, d0, problem = _hk_problem(params, outcome)
        report = is_regular(params, region, d0)
        if not report.regular:
            failed = "; ".join(
                f"{c.name} (lhs={c.lhs:.6g}, rhs={c.rhs:.6g})"
                for c in report.failed_conditions
            )
            return _fail("NotRegular", "bargaining problem is not regular", failed, args.output)
        aux = {"phase1": outcome.as_dict(), "region": region.as_dict(),
               "regularity": report.as_dict()}
    try:
        pair = spe_pair(problem, probs)
    except IcBargainError as exc:
        return _fail(type(exc).__name__, str(exc), None, args.output)
    payload = {
        "params": params.as_dict(),
        "probs": {"p1": probs.p1, "p2": probs.p2},
        "disagreement": list(d0),
        "spe": pair.as_dict(),
        "residuals": list(spe_residuals(pair, d0, probs)),
        **aux,
    }
    if args.simulate > 0:
        s1, s2 = equilibrium_strategies(problem, probs, pair)
        if args.responder == "always-reject":
            s2 = AlwaysRejectStrategy(2, tuple(problem.d0))
        traces = [
            play_aobg(problem, probs, (s1, s2), first_mover=args.first_mover,
                      seed=args.seed + i)
            for i in range(args.simulate)
        ]
        payload["traces"] = [t.as_dict() for t in traces]
    _emit(_json(payload), args.output)
    return 0


def _cmd_mac(args, parser) -> int:
    p1, p2 = _powers(args, parser)
    region = mac_region(p1, p2)
    r0 = mac_safe_rates(p1, p2)
    payload = {
        "powers": {"p1": p1, "p2": p2},
        "region": region.as_dict(),
        "disagreement": list(r0),
        "nbs": nbs_mac(p1, p2).as_dict(),
    }
    probs = _probs(args, parser, required=False)
    if probs is not None:
        pair = spe_mac(p1, p2, probs)
        payload["probs"] = {"p1": probs.p1, "p2": probs.p2}
        payload["spe"] = pair.as_dict()
    _emit(_json(payload), args.output)
    return 0


def _cmd_gdof(args, parser) -> int:
    if None in (args.theta1, args.theta2, args.theta3):
        parser.error("gdof requires --theta1, --theta2 and --theta3 (or --preset fig10)")
    theta = GdofParams(args.theta1, args.theta2, args.theta3)
    d0 = gdof_disagreement(theta)
    try:
        if args.scheme == "tdm":
            region = gdof_tdm_region()
            result = gdof_nbs_tdm(theta)
            outcome = None
        else:
            outcome = gdof_phase1(theta)
            if not outcome.cooperate:
                return _fail("Phase1Failed", outcome.reason.value, outcome.condition, args.output)
            region = gdof_region(theta)
            result = gdof_nbs(theta)
    except IcBargainError as exc:
        return _fail(type(exc).__name__, str(exc), None, args.output)
    payload = {
        "theta": theta.as_dict(),
        "scheme": args.scheme,
        "phase1": None if outcome is None else outcome.as_dict(),
        "region": region.as_dict(),
        "disagreement": list(d0),
        "nbs": result.as_dict(),
    }
    _emit(_json(payload), args.output)
    return 0


def _sweep_row(variable, value, params, probs, scheme) -> list:
    d0 = disagreement_point(params)
    base = [variable, value, d0.r1, d0.r2]
    empty = [None] * 6

    if scheme == "tdm":
        frontier = tdm_frontier(params.p1, params.p2)
        try:
            point = nbs_concave(frontier, d0).point
            problem = BargainingProblem(frontier, (d0.r1, d0.r2))
        except IcBargainError:
            return base + empty + ["not_essential"]
        cells = [point[0], point[1]]
        if probs is not None:
            pair = spe_pair(problem, probs)
            cells += [*pair.gbar, *pair.gtilde]
        else:
            cells += [None] * 4
        return base + cells + ["ok"]

    outcome = phase1(params)
    if not outcome.cooperate:
        return base + empty + [outcome.reason.value]
    region = hk_region(params, outcome.split)
    problem = BargainingProblem(region, (d0.r1, d0.r2))
    point = nbs_polytope(problem).point
    cells = [point[0], point[1]]
    status = "ok"
    if probs is not None:
        if is_regular(params, region, d0).regular:
            pair = spe_pair(problem, probs)
            cells += [*pair.gbar, *pair.gtilde]
        else:
            cells += [None] * 4
            status = "not_regular"
    else:
        cells += [None] * 4
    return base + cells + [status]


def _cmd_sweep(args, parser) -> int:
    if getattr(args, "grid", False):
        return _cmd_sweep_grid(args, parser)
    if args.var is None:
        parser.error("sweep requires --var (or a --preset)")
    if args.steps < 2:
        parser.error("sweep requires --steps >= 2")
    if args.start is None or args.stop is None:
        parser.error("sweep requires --from and --to")

    if args.var in ("p1", "p2"):
        params = _channel(args, parser)
        fixed = args.p2 if args.var == "p1" else args.p1
        if fixed is None:
            parser.error(f"sweeping {args.var} requires the other probability flag")
    else:
        other_gain = args.b if args.var == "a" else args.a
        if other_gain is None:
            parser.error("sweep over a cross gain requires the non-swept gain flag")
        p1, p2 = _powers(args, parser)
        probs = _probs(args, parser, required=False)

    rows = [SWEEP_HEADER.split(",")]
    step = (args.stop - args.start) / (args.steps - 1)
    for i in range(args.steps):
        value = args.start + i * step
        if args.var == "a":
            params_i, probs_i = ChannelParams(value, args.b, p1, p2), probs
        elif args.var == "b":
            params_i, probs_i = ChannelParams(args.a, value, p1, p2), probs
        elif args.var == "p1":
            params_i, probs_i = params, BreakdownProbs(value, args.p2)
        else:
            params_i, probs_i = params, BreakdownProbs(args.p1, value)
        rows.append(_sweep_row(args.var, value, params_i, probs_i, args.scheme))

    _emit_rows(rows, args)
    return 0


def _cmd_sweep_grid(args, parser) -> int:
    """Regularity map over cross gains (a, b) in (0, 3] at fixed powers."""
    p1, p2 = _powers(args, parser)
    rows = [GRID_HEADER.split(",")]
    values = [i / 20.0 for i in range(1, 61)]  # 0.05 .. 3.00
    for a in values:
        for b in values:
            params = ChannelParams(a, b, p1, p2)
            regime = classify_regime(params)
            outcome = phase1(params)
            regular = structural = False
            if outcome.cooperate:
                region = hk_region(params, outcome.split)
                d0 = disagreement_point(params)
                report = is_regular(params, region, d0)
                regular, structural = report.regular, report.structural_monotone
            rows.append(
                [a, b, regime.tag.value, regime.noisy, outcome.cooperate,
                 outcome.reason.value, regular, structural]
            )
    _emit_rows(rows, args)
    return 0


def _emit_rows(rows, args) -> None:
    if args.format == "json":
        header, data = rows[0], rows[1:]
        payload = [dict(zip(header, row)) for row in data]
        _emit(_json(payload), args.output)
        return
    lines = []
    for row in rows:
        lines.append(",".join(c if isinstance(c, str) else _fmt(c) for c in row))
    _emit("\n".join(lines) + "\n", args.output)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icbargain",
        description=(
            "Coordination and bargaining over two-user Gaussian interference "
            "channels.  Rates are in bits per channel use; powers are linear "
            "unless the dB flags are used."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def new(name: str, help_: str, gains: bool = True, scheme: bool = False,
            probs: bool = False, preset: bool = False) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        _add_channel_args(sp, need_gains=gains)
        if scheme:
            sp.add_argument("--scheme", choices=("hk", "tdm"), default="hk",
                            help="cooperating scheme: superposition coding or time division")
        if probs:
            sp.add_argument("--p1", type=float, help="breakdown probability after player 1's offer")
            sp.add_argument("--p2", type=float, help="breakdown probability after player 2's offer")
        if preset:
            sp.add_argument("--preset", default=None, help="figure preset populating all parameters")
        _add_output_args(sp)
        return sp

    new("classify", "regime, incentives and regularity for one channel")
    new("region", "achievable-rate region and efficient frontier", scheme=True)
    new("nbs", "Nash bargaining solution over the agreed region", scheme=True, preset=True)

    sp = new("aobg", "alternating-offer equilibrium pair (and optional play-outs)",
             scheme=True, probs=True)
    sp.add_argument("--first-mover", type=int, choices=(1, 2), default=1)
    sp.add_argument("--simulate", type=int, default=0, help="number of seeded play-outs to emit")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--responder", choices=("equilibrium", "always-reject"),
                    default="equilibrium")

    new("mac", "multiple-access channel bargaining (NBS and optional SPE)",
        gains=False, probs=True, preset=True)

    sp = sub.add_parser("gdof", help="generalized-degrees-of-freedom bargaining")
    sp.add_argument("--theta1", type=float)
    sp.add_argument("--theta2", type=float)
    sp.add_argument("--theta3", type=float)
    sp.add_argument("--scheme", choices=("hk", "tdm"), default="hk")
    sp.add_argument("--preset", default=None)
    _add_output_args(sp)

    sp = new("sweep", "CSV parameter sweep over a, b, p1 or p2",
             scheme=True, probs=True, preset=True)
    sp.add_argument("--var", choices=("a", "b", "p1", "p2"))
    sp.add_argument("--from", dest="start", type=float)
    sp.add_argument("--to", dest="stop", type=float)
    sp.add_argument("--steps", type=int, default=2)

    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "region": _cmd_region,
    "nbs": _cmd_nbs,
    "aobg": _cmd_aobg,
    "mac": _cmd_mac,
    "gdof": _cmd_gdof,
    "sweep": _cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "preset", None):
        _apply_preset(args, parser)
    if args.format is None:
        args.format = "csv" if args.command == "sweep" else "json"
    if args.format == "csv" and args.command != "sweep":
        parser.error("csv output is only available for sweep")
    try:
        return _HANDLERS[args.command](args, parser)
    except InvalidParameterError as exc:
        parser.error(str(exc))
        raise AssertionError  # unreachable


if __name__ == "__main__":
    sys.exit(main())
