"""Command line interface.

Three modes: ``decide`` a formula, decide whether a type is ``inhabit``-ed,
and ``normalize`` a context written in the debug syntax.  The verdict doubles
as the exit status so shell harnesses need no output parsing: 0 derivable,
1 not derivable, 2 usage or input errors, 3 timeout, 4 oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Callable, Optional

from . import systemf
from .context import measure, normalize, parse_context
from .oracle import FlatSequent, first_provable_depth
from .prover import (
    Derivation,
    NotPositive,
    SearchStats,
    SearchTimeout,
    derivable,
    derivation_to_json,
)
from .syntax import (
    NotBarendregt,
    NotNegative,
    ParseError,
    free_vars,
    parse_formula,
)


@dataclass
class RunConfig:
    mode: str
    text: Optional[str] = None
    file: Optional[str] = None
    trace: bool = False
    json_out: bool = False
    stats: bool = False
    audit: bool = False
    oracle_check: Optional[int] = None
    timeout: Optional[float] = None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minpl",
        description="Decide derivability in the positive fragment of minimal "
        "predicate logic, and inhabitation of positive System F types.",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", help="input text")
        p.add_argument("--file", metavar="PATH", help="read the input from a file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--stats", action="store_true", help="report search statistics")

    decide = sub.add_parser("decide", help="decide derivability of a formula")
    inhabit = sub.add_parser("inhabit", help="decide inhabitation of a type")
    for p in (decide, inhabit):
        add_common(p)
        p.add_argument("--trace", action="store_true", help="show the derivation")
        p.add_argument(
            "--audit",
            action="store_true",
            help="check structural invariants on every visited sequent",
        )
        p.add_argument(
            "--oracle-check",
            type=int,
            metavar="N",
            help="cross-check with the reference prover, deepening to N",
        )
        p.add_argument(
            "--timeout",
            type=float,
            metavar="SECONDS",
            help="abort the search after this many seconds",
        )

    norm = sub.add_parser("normalize", help="clean a context written as [G]_{x,y} items")
    add_common(norm)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        mode=args.mode,
        text=args.input,
        file=args.file,
        trace=getattr(args, "trace", False),
        json_out=args.json,
        stats=args.stats,
        audit=getattr(args, "audit", False),
        oracle_check=getattr(args, "oracle_check", None),
        timeout=getattr(args, "timeout", None),
    )


def _load_input(config: RunConfig) -> str:
    if (config.text is None) == (config.file is None):
        raise ValueError("provide the input either as an argument or via --file")
    if config.file is not None:
        with open(config.file, "r", encoding="utf-8") as handle:
            return handle.read().strip()
    return config.text.strip()


def _format_derivation(
    d: Derivation,
    render_sequent: Callable[..., str],
    render_formula: Callable[..., str],
    indent: int = 0,
) -> list[str]:
    label = d.rule
    if d.head is not None:
        label += f" [{render_formula(d.head)}]"
    lines = [f"{'  ' * indent}{label}: {render_sequent(d.conclusion)}"]
    for premise in d.premises:
        lines.extend(_format_derivation(premise, render_sequent, render_formula, indent + 1))
    return lines


def _stats_lines(stats: SearchStats) -> list[str]:
    return [
        f"visited: {stats.visited}",
        f"max seen set: {stats.max_seen}",
        f"max bracket depth: {stats.max_depth}",
        f"elapsed: {stats.elapsed * 1000:.2f} ms",
    ]


def _run_normalize(config: RunConfig, text: str) -> int:
    ctx = parse_context(text)
    cleaned = normalize(ctx)
    if config.json_out:
        payload = {
            "input": text,
            "mode": "normalize",
            "normalized": str(cleaned),
            "warnings": [],
        }
        print(json.dumps(payload))
    else:
        print(str(cleaned))
        if config.stats:
            print(f"measure: {measure(ctx)} -> {measure(cleaned)}")
    return 0


def run(config: RunConfig) -> int:
    """Execute one query and return the process exit status."""
    try:
        text = _load_input(config)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        if config.mode == "normalize":
            return _run_normalize(config, text)

        warnings: list[str] = []
        if config.mode == "decide":
            f = parse_formula(text)
            render_seq, render_formula = str, str
        else:
            t = systemf.parse_type(text)
            f = systemf.phi(t)
            render_seq, render_formula = systemf.render_sequent, systemf.compact_eps
        if free_vars(f):
            names = ", ".join(sorted(free_vars(f)))
            warnings.append(
                f"input is not closed; free variables ({names}) are treated "
                "as constants"
            )
        if config.mode == "inhabit":
            verdict, stats, derivation = systemf.inhabited(
                t, audit=config.audit, timeout=config.timeout
            )
        else:
            verdict, stats, derivation = derivable(
                f, audit=config.audit, timeout=config.timeout
            )
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (NotPositive, NotNegative, NotBarendregt) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SearchTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return 3

    warnings.extend(f"audit: {v}" for v in stats.audit_violations)

    oracle_agrees: Optional[bool] = None
    if config.oracle_check is not None:
        found = first_provable_depth(FlatSequent((), f), config.oracle_check)
        oracle_agrees = (found is not None) == verdict

    if config.json_out:
        payload = {
            "input": text,
            "mode": config.mode,
            "derivable": verdict,
            "visited": stats.visited,
            "elapsed_ms": round(stats.elapsed * 1000, 3),
            "derivation": (
                derivation_to_json(derivation)
                if config.trace and derivation is not None
                else None
            ),
            "oracle_agrees": oracle_agrees,
            "warnings": warnings,
        }
        print(json.dumps(payload))
    else:
        for warning in warnings:
            print(f"warning: {warning}", file=sys.stderr)
        if config.mode == "decide":
            print("derivable" if verdict else "not derivable")
        else:
            print("inhabited" if verdict else "not inhabited")
        if config.trace and derivation is not None:
            print("\n".join(_format_derivation(derivation, render_seq, render_formula)))
        if config.stats:
            print("\n".join(_stats_lines(stats)))
        if oracle_agrees is not None:
            print(f"oracle agrees: {'yes' if oracle_agrees else 'NO'}")

    if oracle_agrees is False:
        return 4
    return 0 if verdict else 1


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    return run(_config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
