"""Command-line entry point: ``hawktele point|sweep|grid``.

Exit status is 0 on success, 2 for bad arguments (including parameter values
outside their domain) and 1 for runtime failures such as unwritable files.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import analysis
from .horizon import HawkingMode
from .protocol import (
    InputState,
    ProtocolConfig,
    average_fidelity,
    concurrence_closed,
    fidelity_closed,
    simulate_circuit,
    success_probability,
)

log = logging.getLogger("hawktele")


def _q_policy(text: str):
    """Parse ``type1``, ``type2`` or ``manual:<q>``."""
    if text in ("type1", "type2"):
        return text
    if text.startswith("manual:"):
        try:
            return float(text.split(":", 1)[1])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected manual:<q>, type1 or type2, got {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hawktele",
        description="Weak-measurement-assisted teleportation through a Hawking channel.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    pt = sub.add_parser("point", help="evaluate a single configuration")
    pt.add_argument("--t", type=float, required=True, help="temperature ratio T/omega")
    pt.add_argument("--theta", type=float, required=True)
    pt.add_argument("--delta", type=float, default=0.0)
    pt.add_argument("--p", type=float, required=True, help="pre-measurement strength")
    qgroup = pt.add_mutually_exclusive_group(required=True)
    qgroup.add_argument("--q", type=float, help="post-measurement strength")
    qgroup.add_argument("--q-policy", choices=("type1", "type2"))
    pt.add_argument(
        "--oracle", action="store_true", help="also run the state-vector circuit simulation"
    )

    sw = sub.add_parser("sweep", help="temperature sweep written as CSV")
    sw.add_argument("--t-min", type=float, default=0.01)
    sw.add_argument("--t-max", type=float, default=20.0)
    sw.add_argument("--t-steps", type=int, default=200)
    sw.add_argument("--p", type=_float_list, default=[0.0, 0.5, 0.8, 0.9])
    sw.add_argument("--q-policy", type=_q_policy, default="type1")
    sw.add_argument("--out", required=True)

    gr = sub.add_parser("grid", help="(p, q) improvement map written as CSV")
    gr.add_argument("--t", type=float, default=10.0)
    gr.add_argument("--resolution", type=int, default=201)
    gr.add_argument("--baseline", choices=analysis.BASELINES, default=analysis.PAPER)
    gr.add_argument("--out", required=True)
    return parser


def _point(args) -> None:
    policy = args.q if args.q is not None else args.q_policy
    cfg = ProtocolConfig(args.p, HawkingMode.from_ratio(args.t), policy)
    state = InputState(args.theta, args.delta)
    values = {
        "q": cfg.q.value,
        "fidelity": fidelity_closed(state, cfg),
        "average_fidelity": average_fidelity(cfg),
        "success_probability": success_probability(cfg),
        "concurrence": concurrence_closed(cfg),
    }
    if args.oracle:
        out = simulate_circuit(state, cfg)
        values["oracle_fidelity"] = out.fidelity
        values["oracle_success_probability"] = out.success_probability
        values["oracle_concurrence"] = out.concurrence_AI
    for key, val in values.items():
        print(f"{key}={analysis.format_number(val)}")


def _sweep(args) -> None:
    spec = analysis.SweepSpec(
        t_min=args.t_min,
        t_max=args.t_max,
        t_steps=args.t_steps,
        p_values=args.p,
        q_policy=args.q_policy,
    )
    rows = analysis.sweep_fidelity(spec)
    analysis.write_csv(rows, args.out, analysis.FIDELITY_COLUMNS)
    log.info("wrote %d rows to %s", len(rows), args.out)


def _grid(args) -> None:
    spec = analysis.SweepSpec(grid_resolution=args.resolution, baseline_convention=args.baseline)
    points = analysis.improvement_grid(spec, args.t)
    comments = [
        f"t={analysis.format_number(args.t)} resolution={args.resolution}",
        f"baseline={args.baseline}: {analysis.BASELINE_NOTES[args.baseline]}",
    ]
    analysis.write_csv(
        (pt.as_row() for pt in points), args.out, analysis.GRID_COLUMNS, comments
    )
    log.info("wrote %d grid points to %s", len(points), args.out)


COMMANDS = {"point": _point, "sweep": _sweep, "grid": _grid}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        COMMANDS[args.command](args)
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"hawktele: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"hawktele: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
