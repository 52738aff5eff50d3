"""Command-line front end.

    nuccr single {purity,ccr,survival,entropy} [options]
    nuccr pair {spin-ccr-global,spin-ccr-parties,purity,amplitude} [options]
    nuccr verify [options]

Config files hold ``key = value`` lines; ``#`` starts a comment.  Keys are the
long option names with dashes or underscores (``p_over_m1 = 0.1, 1, 10``).
Command-line flags override file values.

Exit codes: 0 ok, 1 invariant failure, 2 usage error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import fields

from .runner import (
    InvariantViolation,
    ScenarioConfig,
    dump_report,
    format_csv,
    run_scenario,
    verify,
    write_outputs,
)

EXIT_OK, EXIT_INVARIANT, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

VERIFY_STEPS = 400

# config key -> (ScenarioConfig field, parser)
_KEYS = {
    "p_over_m1": ("p_over_m1", lambda s: tuple(float(x) for x in s.replace(",", " ").split())),
    "sin2_theta": ("sin2_theta", float),
    "dm2_over_m1sq": ("dm2_over_m1sq", float),
    "ml_over_m1": ("ml_over_m1", float),
    "t_max": ("t_max", float),
    "steps": ("steps", int),
    "out": ("out_path", str),
    "precision": ("precision", int),
}


class ConfigError(ValueError):
    pass


def read_config_file(path: str) -> dict:
    """Parse a ``key = value`` file into ScenarioConfig keyword arguments."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or not val.strip():
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            if key not in _KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            name, conv = _KEYS[key]
            try:
                values[name] = conv(val.strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p-over-m1", type=float, nargs="+", metavar="P", help="momentum values in units of m1")
    common.add_argument("--sin2-theta", type=float, help="sin^2 of the mixing angle (default 0.306)")
    common.add_argument("--dm2-over-m1sq", type=float, help="(m2^2 - m1^2) / m1^2 (default 0.001)")
    common.add_argument("--ml-over-m1", type=float, help="charged lepton mass / m1 (default 10)")
    common.add_argument("--t-max", type=float, help="end of the time grid in 1/m1 (default 4 pi / dE)")
    common.add_argument("--steps", type=int, help="number of grid points")
    common.add_argument("--out", dest="out_path", help="output CSV path (default stdout)")
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--precision", type=int, help="significant digits in CSV output (default 12)")

    parser = argparse.ArgumentParser(prog="nuccr", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="model", required=True)
    single = sub.add_parser("single", parents=[common], help="single oscillating neutrino")
    single.add_argument("quantity", choices=["purity", "ccr", "survival", "entropy"])
    pair = sub.add_parser("pair", parents=[common], help="lepton-antineutrino pair")
    pair.add_argument("quantity", choices=["spin-ccr-global", "spin-ccr-parties", "purity", "amplitude"])
    sub.add_parser("verify", parents=[common], help="run the invariant suite, print a JSON report")
    return parser


def parse_config(argv=None) -> ScenarioConfig:
    """Resolve defaults, config file and flags (in increasing priority).

    Invalid input exits with status 2 through ``argparse``.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    values = {}
    if args.config:
        try:
            values.update(read_config_file(args.config))
        except (OSError, ConfigError) as exc:
            parser.error(str(exc))
    names = {f.name for f in fields(ScenarioConfig)}
    for name, val in vars(args).items():
        if name in names and val is not None and name not in ("model", "quantity"):
            values[name] = tuple(val) if name == "p_over_m1" else val
    if args.model == "verify":
        values.setdefault("steps", VERIFY_STEPS)
        quantity = "all"
    else:
        quantity = args.quantity.replace("-", "_")
    try:
        return ScenarioConfig(model=args.model, quantity=quantity, **values)
    except ValueError as exc:
        parser.error(str(exc))


def main(argv=None) -> int:
    cfg = parse_config(argv)
    if cfg.model == "verify":
        report = verify(cfg)
        text = dump_report(report) + "\n"
        try:
            if cfg.out_path:
                with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        except OSError as exc:
            print(f"nuccr: {exc}", file=sys.stderr)
            return EXIT_IO
        return EXIT_OK if report["pass"] else EXIT_INVARIANT

    try:
        tables = run_scenario(cfg)
    except InvariantViolation as exc:
        print(f"nuccr: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    try:
        if cfg.out_path:
            for path in write_outputs(cfg, tables):
                print(path, file=sys.stderr)
        else:
            sys.stdout.write("\n".join(format_csv(t, cfg.precision) for t in tables))
    except OSError as exc:
        print(f"nuccr: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
