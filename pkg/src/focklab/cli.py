"""Command-line experiment runner.

Usage:
    focklab run [--config cfg.toml] [--suite NAME] [--out DIR] [--seed S]
                [--jobs J] [--tolerance-scale X]
    focklab list-suites

Exit codes: 0 all checks passed, 2 at least one check failed, 1 bad
configuration or usage.  Reports are deterministic for a fixed configuration
and seed, except for the timestamp field.
"""

from __future__ import annotations

import argparse
import sys
import time

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .reports import SuiteReport, write_report, write_tables
from .suites import SUITES, ConfigError, ExperimentConfig, run_suite, suite_anchors


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="focklab", description="Fock-space operator laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one suite or the full battery")
    run.add_argument("--config", type=Path, default=None, help="TOML configuration file")
    run.add_argument("--suite", default=None, help="suite name or 'full' (overrides config)")
    run.add_argument("--out", type=Path, default=None, help="report output directory")
    run.add_argument("--seed", type=int, default=None, help="random seed (overrides config)")
    run.add_argument("--jobs", type=int, default=None, help="parallel suite workers")
    run.add_argument(
        "--tolerance-scale", type=float, default=None, help="multiply every tolerance by this factor"
    )

    sub.add_parser("list-suites", help="list suite names and the identities they verify")
    return parser


def _load_config(args) -> ExperimentConfig:
    from .suites import validate_config

    raw = {}
    if args.config is not None:
        try:
            raw = tomllib.loads(Path(args.config).read_text())
        except FileNotFoundError:
            raise ConfigError(f"configuration file not found: {args.config}")
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"malformed TOML: {exc}")
    cfg = validate_config(raw)
    overrides = {}
    if args.suite is not None:
        if args.suite != "full" and args.suite not in SUITES:
            raise ConfigError(f"unknown suite {args.suite!r}; see list-suites")
        overrides["suite"] = args.suite
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.jobs is not None:
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
        overrides["jobs"] = args.jobs
    if args.tolerance_scale is not None:
        if args.tolerance_scale <= 0:
            raise ConfigError("--tolerance-scale must be positive")
        overrides["tolerance_scale"] = args.tolerance_scale
    if args.out is not None:
        overrides["out_dir"] = str(args.out)
    if overrides:
        from dataclasses import replace

        cfg = replace(cfg, **overrides)
    return cfg


def _config_dict(cfg: ExperimentConfig) -> dict:
    return {
        "t": cfg.t,
        "n": cfg.n,
        "max_degree": cfg.max_degree,
        "ladder": list(cfg.ladder),
        "seed": cfg.seed,
        "tolerance_scale": cfg.tolerance_scale,
        "trace_s_factors": list(cfg.trace_s_factors),
        "trace_z_points": list(cfg.trace_z_points),
    }


def _run_one(name: str, cfg: ExperimentConfig) -> SuiteReport:
    start = time.perf_counter()
    checks, tables = run_suite(name, cfg)
    report = SuiteReport(name, cfg.seed, _config_dict(cfg), checks, tables)
    report.runtime_seconds = time.perf_counter() - start
    return report


def _cmd_run(args) -> int:
    try:
        cfg = _load_config(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    names = list(SUITES) if cfg.suite == "full" else [cfg.suite]
    out_dir = Path(cfg.out_dir)

    reports = []
    if cfg.jobs > 1 and len(names) > 1:
        # collect in submission order so output and reports stay deterministic
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = [pool.submit(_run_one, n, cfg) for n in names]
            reports = [f.result() for f in futures]
    else:
        reports = [_run_one(n, cfg) for n in names]

    failed = 0
    for report in reports:
        write_report(report, out_dir)
        write_tables(report, out_dir)
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            print(f"[{status}] {report.suite}/{check.name}: {check.anchor}")
            if not check.passed:
                failed += 1
        print(
            f"-- {report.suite}: {len(report.checks) - sum(not c.passed for c in report.checks)}"
            f"/{len(report.checks)} checks passed in {report.runtime_seconds:.1f}s"
        )
    total = sum(len(r.checks) for r in reports)
    print(f"== {total - failed}/{total} checks passed; reports in {out_dir}")
    return 0 if failed == 0 else 2


def _cmd_list(_args) -> int:
    anchors = suite_anchors()
    for name in SUITES:
        print(name)
        for anchor in anchors.get(name, ()):
            print(f"    {anchor}")
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_list(args)


if __name__ == "__main__":
    sys.exit(main())
