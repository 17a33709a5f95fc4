"""Command-line interface.

Subcommands: eval, select, decide, reduce, verify, suite.  Reports go to
stdout as plain ``name = value`` text or as canonical single-line JSON
(``--format json``); numbers carry 17 significant digits in both modes so
doubles survive a round trip through the output.

Exit codes: 0 success, 1 usage or input errors, 2 computational failures
(singular matrices, enumeration too large).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Optional

from . import jsonio, params
from .core import sp_value
from .errors import ComputationError, InputError
from .metric import distance_scale, encode_graph, load_graph, load_metric_csv
from .reduction import random_equivalence_suite, solve_is_via_sp
from .selection import decide, exact_select, greedy_add, greedy_drop
from .verify import deformation_scan, derivative_identity_check

__all__ = ["RunConfig", "run", "main"]

_METHODS = {"exact": exact_select, "greedy-drop": greedy_drop, "greedy-add": greedy_add}


@dataclass
class RunConfig:
    command: str
    metric_path: Optional[str] = None
    graph_path: Optional[str] = None
    subset: Optional[tuple[int, ...]] = None
    pair: Optional[tuple[int, int]] = None
    k: Optional[int] = None
    theta: float = 1.0
    threshold: Optional[float] = None
    reduction_threshold: bool = False
    method: str = "exact"
    output_format: str = "text"
    seed: int = 42
    trials: int = 200
    n_max: int = 9
    theta0_choices: tuple[float, ...] = (0.5, 1.0, 3.0)
    samples: int = params.DEFAULT_SCAN_SAMPLES
    include_records: bool = False


class _Parser(argparse.ArgumentParser):
    """argparse defaults usage failures to status 2; this CLI reserves 2 for
    computational errors, so downgrade them to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spdiv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")

    p = sub.add_parser("eval", help="diversity value of one subset")
    p.add_argument("--metric", required=True, dest="metric_path", help="CSV distance matrix")
    p.add_argument("--subset", type=_int_list, help="comma-separated indices")
    p.add_argument("--k", type=int, help="evaluate the first k points instead of --subset")
    p.add_argument("--theta", type=float, default=1.0)
    add_format(p)

    p = sub.add_parser("select", help="maximize diversity at fixed cardinality")
    p.add_argument("--metric", required=True, dest="metric_path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--theta", type=float, default=1.0)
    p.add_argument("--method", choices=sorted(_METHODS), default="exact")
    add_format(p)

    p = sub.add_parser("decide", help="is there a size-k subset at or above a threshold?")
    p.add_argument("--metric", required=True, dest="metric_path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--theta", type=float, default=1.0)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--threshold", type=float)
    group.add_argument(
        "--reduction-threshold",
        action="store_true",
        help="use the edge-free-subset value k/(1+(k-1)r) derived from k and theta",
    )
    add_format(p)

    p = sub.add_parser("reduce", help="independent-set decision via diversity, cross-checked")
    p.add_argument("--graph", required=True, dest="graph_path", help="edge-list file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--theta0", type=float, default=1.0, dest="theta")
    add_format(p)

    p = sub.add_parser("verify", help="deformation scan on an encoded graph instance")
    p.add_argument("--graph", required=True, dest="graph_path")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--subset", type=_int_list, required=True)
    p.add_argument("--pair", type=_int_list, required=True, help="edge to stretch, e.g. 0,1")
    p.add_argument("--samples", type=int, default=params.DEFAULT_SCAN_SAMPLES)
    p.add_argument("--theta0", type=float, default=1.0, dest="theta")
    add_format(p)

    p = sub.add_parser("suite", help="random cross-check suite of both decision routes")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--n-max", type=int, default=9, dest="n_max")
    p.add_argument("--theta0", type=_float_list, default=(0.5, 1.0, 3.0), dest="theta0_choices")
    p.add_argument("--records", action="store_true", dest="include_records",
                   help="include per-trial graphs and decisions in the report")
    add_format(p)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(command=args.command)
    for name in vars(config):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    return config


def _flatten(prefix: str, value, lines: list) -> None:
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else key, item, lines)
    elif isinstance(value, (list, tuple)) and any(isinstance(v, (dict, list, tuple)) for v in value):
        for pos, item in enumerate(value):
            _flatten(f"{prefix}[{pos}]", item, lines)
    else:
        lines.append(f"{prefix} = {_scalar_text(value)}")


def _scalar_text(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_scalar_text(v) for v in value)
    if value is None:
        return "none"
    if value is True or value is False:
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(report: dict, output_format: str) -> None:
    if output_format == "json":
        print(jsonio.dumps(report))
    else:
        lines: list[str] = []
        _flatten("", report, lines)
        print("\n".join(lines))


def _cmd_eval(config: RunConfig) -> dict:
    metric = load_metric_csv(config.metric_path)
    if (config.subset is None) == (config.k is None):
        raise InputError("eval needs exactly one of --subset or --k")
    subset = config.subset if config.subset is not None else tuple(range(config.k))
    wv = sp_value(metric, subset, config.theta)
    return {
        "subset": list(subset),
        "theta": config.theta,
        "sp_value": wv.sp_value,
        "residual_inf": wv.residual_inf,
        "weights": [float(x) for x in wv.weights],
    }


def _cmd_select(config: RunConfig) -> dict:
    metric = load_metric_csv(config.metric_path)
    result = _METHODS[config.method](metric, config.k, config.theta)
    return {
        "method": result.method,
        "k": config.k,
        "theta": config.theta,
        "subset": list(result.subset),
        "value": result.value,
        "evaluated": result.evaluated,
        "skipped": result.skipped,
    }


def _cmd_decide(config: RunConfig) -> dict:
    metric = load_metric_csv(config.metric_path)
    if config.reduction_threshold:
        scale = distance_scale(config.k, config.theta)
        nonedge_sim = math.exp(-2.0 * config.theta * scale)
        threshold = config.k / (1.0 + (config.k - 1) * nonedge_sim)
    else:
        threshold = config.threshold
    result = decide(metric, config.k, config.theta, threshold)
    return {
        "k": config.k,
        "theta": config.theta,
        "threshold": result.threshold,
        "decision": result.satisfied,
        "witness": None if result.witness is None else list(result.witness),
        "best_value": result.best_value,
        "best_subset": list(result.best_subset),
        "evaluated": result.evaluated,
        "skipped": result.skipped,
    }


def _cmd_reduce(config: RunConfig) -> dict:
    graph = load_graph(config.graph_path)
    outcome = solve_is_via_sp(graph, config.k, config.theta)
    return outcome.to_dict()


def _cmd_verify(config: RunConfig) -> dict:
    graph = load_graph(config.graph_path)
    metric, instance = encode_graph(graph, config.k, config.theta)
    pair = config.pair
    if len(pair) != 2:
        raise InputError(f"--pair needs exactly two indices, got {pair}")
    report = deformation_scan(
        metric, config.subset, (pair[0], pair[1]), config.theta, instance.scale, config.samples
    )
    out = report.to_dict()
    out["derivative_identity_ok"] = derivative_identity_check(report)
    out["weight_floor_ok"] = report.min_weight_overall > params.WEIGHT_FLOOR
    return out


def _cmd_suite(config: RunConfig) -> dict:
    summary = random_equivalence_suite(
        config.seed, config.trials, config.n_max, config.theta0_choices
    )
    return summary.to_dict(include_records=config.include_records)


_COMMANDS = {
    "eval": _cmd_eval,
    "select": _cmd_select,
    "decide": _cmd_decide,
    "reduce": _cmd_reduce,
    "verify": _cmd_verify,
    "suite": _cmd_suite,
}


def run(config: RunConfig) -> int:
    """Execute one command; returns the process exit code."""
    try:
        report = _COMMANDS[config.command](config)
    except InputError as exc:
        print(f"spdiv {config.command}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"spdiv {config.command}: {exc}", file=sys.stderr)
        return 1
    except ComputationError as exc:
        print(f"spdiv {config.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(report, config.output_format)
    return 0


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return run(_config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
