"""Command-line entry point: ``verify <case-id>`` or ``verify --all``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .lab import ConfigError, ToleranceConfig, case_ids, REGISTRY, reports_json, reports_markdown, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="verify", description="Run the registered example checks.")
    p.add_argument("case", nargs="?", help="case id (see --list)")
    p.add_argument("--all", action="store_true", help="run every registered case")
    p.add_argument("--list", action="store_true", help="print the registry and exit")
    p.add_argument("--tol", type=float, help="limit/comparison tolerance (default 1e-6)")
    p.add_argument("--schedule", help="step schedule as s0,rho,K")
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--json", dest="json_path", help="write a JSON report here")
    p.add_argument("--md", dest="md_path", help="write a markdown report here")
    return p


def _parse_schedule(text: str) -> dict:
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"--schedule expects s0,rho,K, got {text!r}")
    try:
        return {"s0": float(parts[0]), "rho": float(parts[1]), "K": int(parts[2])}
    except ValueError as exc:
        raise ConfigError(f"bad --schedule value {text!r}") from exc


def resolve_config(args: argparse.Namespace) -> ToleranceConfig:
    cfg = ToleranceConfig.from_file(args.config) if args.config else ToleranceConfig()
    overrides = {}
    if args.tol is not None:
        overrides["tol"] = args.tol
    if args.schedule:
        overrides.update(_parse_schedule(args.schedule))
    return replace(cfg, **overrides) if overrides else cfg


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list:
        for cid, (loc, _) in REGISTRY.items():
            print(f"{cid:30s} {loc}")
        return EXIT_OK
    if args.all == bool(args.case):
        print("verify: give exactly one of <case-id> or --all", file=sys.stderr)
        return EXIT_USAGE
    if args.case and args.case not in REGISTRY:
        print(f"verify: unknown case {args.case!r}; try --list", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = resolve_config(args)
    except ConfigError as exc:
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_USAGE

    reports, summary = run_all(cfg, case_ids() if args.all else [args.case])
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        print(f"{status} {rep.case} ({sum(a.passed for a in rep.assertions)}/{len(rep.assertions)}, "
              f"{rep.runtime_ms} ms)")
        for a in rep.assertions:
            if not a.passed:
                print(f"    failed: {a.name}: expected {a.expected}, got {a.actual} (tol {a.tol:g})")
    print(f"{summary.passed}/{summary.total} cases pass")

    try:
        if args.json_path:
            Path(args.json_path).write_text(reports_json(reports, summary) + "\n")
        if args.md_path:
            Path(args.md_path).write_text(reports_markdown(reports, summary))
    except OSError as exc:
        print(f"verify: cannot write report: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if summary.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
