"""``chaoguide`` command line: simulate | scan | diverge | predict CONFIG.

Exit codes: 0 success, 2 configuration error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import emit
from .analysis import divergence_study, pip_predict
from .chaos_core import scan_robustness
from .config import RunConfig, load_config
from .errors import ChaoguideError, ConfigError
from .guidance import simulate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

log = logging.getLogger("chaoguide")


def run_simulate(cfg: RunConfig):
    emit.write_simulation(cfg.output_dir, simulate(cfg.scenario), cfg.emit)


def run_scan(cfg: RunConfig):
    s = cfg.scan
    report = scan_robustness(s.kind, s.a_range, s.b_range, s.grid, s.iters, s.seed, s.transient)
    emit.write_scan(cfg.output_dir, report, cfg.emit)


def run_diverge(cfg: RunConfig):
    emit.write_divergence(cfg.output_dir, divergence_study(cfg.scenario, cfg.epsilons), cfg.emit)


def run_predict(cfg: RunConfig):
    result = simulate(cfg.scenario)
    times = cfg.observe_times
    if times is None:
        # launch plus every event instant
        times = (0.0, *(e.time for e in result.events))
    emit.write_pip(cfg.output_dir, [pip_predict(result, t) for t in times], cfg.emit)


COMMANDS = {
    "simulate": run_simulate,
    "scan": run_scan,
    "diverge": run_diverge,
    "predict": run_predict,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaoguide", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("config", help="path to the JSON run configuration")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"chaoguide: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        COMMANDS[args.command](cfg)
    except ChaoguideError as exc:
        print(f"chaoguide: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"chaoguide: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    log.info("%s finished, outputs in %s", args.command, cfg.output_dir)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
