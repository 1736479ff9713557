"""
Command-line experiment runner.

Exit status: 0 success, 1 usage or configuration error, 2 numerical or
convergence failure, 3 validation failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import output, validate
from .config import ExperimentConfig, dump_config, load_config
from .errors import ArgumentError, ConfigError, ConvergenceError, NumericalError
from .montecarlo import Metric, SweepSpec, run_sweep
from .precoder import Method

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VALIDATION = 0, 1, 2, 3

DEFAULT_GRIDS = {
    "range": "200:10000:50",
    "azimuth": "-80:80:81",
    "elevation": "-80:80:81",
    "snr": "0:14:8",
    "lambda_b": "0:30:7",
    "lambda_e": "0:40:9",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def parse_grid(text: str) -> tuple:
    """``start:stop:count`` (inclusive linspace) or a comma-separated list."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, count = text.split(":")
            n = int(count)
            if n < 1:
                raise ValueError("count must be >= 1")
            return tuple(float(v) for v in np.linspace(float(start), float(stop), n))
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise ArgumentError(f"bad grid {text!r}: {exc}") from None


def _parse_methods(text: str) -> tuple:
    return tuple(Method.parse(m.strip()) for m in text.split(",") if m.strip())


def _parse_sets(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise ConfigError("expected key=value", item)
        key, value = item.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key = value config file (defaults when omitted)")
    common.add_argument("--set", action="append", metavar="KEY=VALUE", help="override one config key")
    common.add_argument("--output-dir", help=f"result directory (default ${output.OUTPUT_DIR_ENV} or ./results)")
    common.add_argument("--json", action="store_true", help="also write a JSON copy of the records")

    sweep = _Parser(add_help=False)
    sweep.add_argument("--grid", help="start:stop:count or v1,v2,...")
    sweep.add_argument("--methods", help="comma-separated subset of SP,ZF,SVD,NoAN")
    sweep.add_argument("--trials", type=int, help="Monte Carlo trials per point")
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--workers", type=int, default=1, help="parallel grid-point workers")

    p = _Parser(prog="fdadm", description="FDA directional-modulation secrecy experiments.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ber = sub.add_parser("ber", parents=[common, sweep], help="BER over position or SNR")
    ber.add_argument("--sweep", choices=("range", "azimuth", "elevation", "snr"), default="snr")
    ber.add_argument("--scheme", choices=("PSK", "QAM"))
    ber.add_argument("--order", type=int, help="constellation size M")
    ber.add_argument("--fading", action="store_true", help="apply Bob's fading")

    for name, helptext in (("secrecy-rate", "average secrecy rate"), ("sop", "secrecy outage probability")):
        sp = sub.add_parser(name, parents=[common, sweep], help=f"{helptext} over average SNR")
        sp.add_argument("--over", choices=("lambda_b", "lambda_e"), default="lambda_b")
        sp.add_argument("--no-analytic", action="store_true", help="skip series and bound evaluation")
        if name == "sop":
            sp.add_argument("--r0", type=float, help="target secrecy rate, bits/s/Hz")

    mem = sub.add_parser("memory", parents=[common], help="precoder storage over N")
    mem.add_argument("--n-min", type=int, default=1)
    mem.add_argument("--n-max", type=int, default=25)
    mem.add_argument("--l", type=int, help="subcarriers L (config value when omitted)")

    sub.add_parser("validate", parents=[common], help="run the invariant suites")

    dump = sub.add_parser("dump-config", help="print the effective configuration")
    dump.add_argument("--config")
    dump.add_argument("--set", action="append", metavar="KEY=VALUE")
    return p


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig.defaults()
    return cfg.with_overrides(_parse_sets(args.set))


def _ber_spec(args, cfg):
    metric = {"range": Metric.BER_vs_range, "azimuth": Metric.BER_vs_azimuth,
              "elevation": Metric.BER_vs_elevation, "snr": Metric.BER_vs_SNR}[args.sweep]
    over = {}
    if args.scheme:
        over["modulation.scheme"] = args.scheme
    if args.order:
        over["modulation.order"] = args.order
    if args.fading:
        over["ber.fading"] = True
    cfg = cfg.with_overrides(over)
    return cfg, metric, DEFAULT_GRIDS[args.sweep]


def _secrecy_spec(args, cfg):
    fam = "SOP" if args.command == "sop" else "SR"
    metric = Metric(f"{fam}_vs_{'lambdaB' if args.over == 'lambda_b' else 'lambdaE'}")
    if fam == "SOP" and args.r0 is not None:
        cfg = cfg.with_overrides({"secrecy.r0": args.r0})
    return cfg, metric, DEFAULT_GRIDS[args.over]


def _run_sweep_command(args, cfg):
    if args.command == "ber":
        cfg, metric, grid = _ber_spec(args, cfg)
        methods = (Method.SP, Method.ZF, Method.SVD)
        analytic = True
    elif args.command == "memory":
        if args.l is not None:
            cfg = cfg.with_overrides({"array.subcarriers": args.l})
        if not 1 <= args.n_min <= args.n_max:
            raise ArgumentError("need 1 <= --n-min <= --n-max")
        spec = SweepSpec(Metric.MEMORY_vs_NL, tuple(range(args.n_min, args.n_max + 1)),
                         fixed=cfg, trials=1)
        return cfg, spec
    else:
        cfg, metric, grid = _secrecy_spec(args, cfg)
        methods = (Method.SP, Method.ZF, Method.SVD, Method.NoAN)
        analytic = not args.no_analytic
    if args.methods:
        methods = _parse_methods(args.methods)
    run = {}
    if args.trials is not None:
        run["run.trials"] = args.trials
    if args.seed is not None:
        run["run.seed"] = args.seed
    cfg = cfg.with_overrides(run)
    spec = SweepSpec(metric, parse_grid(args.grid or grid), methods, cfg, analytic=analytic)
    return cfg, spec


def _write(args, cfg, records, label):
    directory = output.output_dir(args.output_dir)
    h = cfg.hash()
    path = output.emit_csv(records, output.output_path(directory, args.command, h))
    extra = ""
    if args.json:
        jpath = output.emit_json(records, path.with_suffix(".json"))
        extra = f", {jpath}"
    print(f"{label}: {len(records)} rows -> {path}{extra}")


def _join_grid(argv):
    # argparse reads "-20:20:5" as an option flag, so bind it to --grid here
    out, it = [], iter(argv)
    for a in it:
        if a == "--grid":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--grid={nxt}")
        else:
            out.append(a)
    return out


def _dispatch(args) -> int:
    if args.command == "dump-config":
        sys.stdout.write(dump_config(_load(args)))
        return EXIT_OK
    cfg = _load(args)
    if args.command == "validate":
        results = validate.run_all(cfg, progress=lambda r: print(r.summary(), flush=True))
        failed = [r for r in results if not r.passed]
        for r in failed:
            for msg in r.failures:
                print(f"  {r.name}: {msg}")
        print(f"validate: {len(results) - len(failed)}/{len(results)} suites passed")
        return EXIT_VALIDATION if failed else EXIT_OK
    if getattr(args, "workers", 1) < 1:
        raise ArgumentError("--workers must be >= 1")
    cfg, spec = _run_sweep_command(args, cfg)
    result = run_sweep(spec, getattr(args, "workers", 1))
    experiment = f"{args.command}:{spec.metric.value}"
    records = output.records_from_result(result, experiment, cfg.hash())
    name, unit = spec.metric.sweep_variable
    label = (f"{experiment} over {len(spec.grid)} {name} values [{unit}], "
             f"methods {','.join(m.value for m in spec.methods)}")
    _write(args, cfg, records, label)
    return EXIT_OK


def main(argv=None) -> int:
    """Entry point; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(_join_grid(sys.argv[1:] if argv is None else list(argv)))
        return _dispatch(args)
    except _UsageError as exc:
        print(f"{exc}\n{parser.format_usage().rstrip()}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, NumericalError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
