"""Command-line front end.

    weaktrace run FILE --arch tso          final states and condition verdict
    weaktrace count FILE --arch sc         number of normal executions
    weaktrace show FILE --arch tso         normal executions as (ac)(bd)(a'c')
    weaktrace verify FILE --arch pso       brute-force cross-check
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from .arch import ARCHITECTURES, by_name
from .evaluation import ExecutionLimitExceeded, check_condition, litmus_config, reachable
from .gen import GenStats, count_paths, normal_executions
from .lang import Litmus, LitmusSyntaxError, parse_litmus
from .oracle import OracleLimitError, verify
from .trace import render_execution

EXIT_OK = 0
EXIT_EXPECTATION = 1
EXIT_USAGE = 2


@dataclass
class RunReport:
    litmus_name: str
    architecture: str
    unroll_bound: int
    all_paths: Optional[int]
    normal_executions: int
    stuck_paths: int
    observations: list  # list of {name: value} dicts, sorted
    condition_holds: bool
    witness: Optional[str]

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [
            f"litmus: {self.litmus_name}",
            f"architecture: {self.architecture}",
            f"unroll bound: {self.unroll_bound}",
        ]
        if self.all_paths is not None:
            lines.append(f"all paths: {self.all_paths}")
        lines += [
            f"normal executions: {self.normal_executions}",
            f"stuck paths: {self.stuck_paths}",
            f"observations ({len(self.observations)}):",
        ]
        for obs in self.observations:
            lines.append("  " + " ".join(f"{k}={v}" for k, v in obs.items()))
        lines.append(f"condition: {'holds' if self.condition_holds else 'does not hold'}")
        if self.witness is not None:
            lines.append(f"witness: {self.witness}")
        return "\n".join(lines)


def load_litmus(path: str) -> Litmus:
    lit = parse_litmus(Path(path).read_text(encoding="utf-8"))
    if not lit.name:
        lit = Litmus(Path(path).stem, lit.init, lit.procs, lit.cond)
    return lit


def run_report(lit: Litmus, arch_name: str, unroll: int = 2, max_execs=None, all_paths: bool = False) -> RunReport:
    arch = by_name(arch_name)
    reach = reachable(lit, arch, unroll, max_execs)
    verdict, witness = check_condition(lit, reach)
    total = None
    if all_paths:
        total = count_paths(arch, litmus_config(lit, unroll))[0]
    return RunReport(
        litmus_name=lit.name,
        architecture=arch.name,
        unroll_bound=unroll,
        all_paths=total,
        normal_executions=reach.executions,
        stuck_paths=reach.stats.stuck,
        observations=[dict(obs) for obs in sorted(reach.states)],
        condition_holds=verdict,
        witness=None if witness is None else render_execution(arch, witness),
    )


def _normal_list(lit: Litmus, arch_name: str, unroll: int, max_execs):
    arch = by_name(arch_name)
    stats = GenStats()
    out = []
    for es in normal_executions(arch, litmus_config(lit, unroll), stats):
        if max_execs is not None and len(out) >= max_execs:
            raise ExecutionLimitExceeded(f"more than {max_execs} normal executions")
        out.append(render_execution(arch, es))
    return out, stats


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weaktrace", description=__doc__.splitlines()[0] if __doc__ else None)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "replay normal executions and decide the exists-condition"),
        ("count", "count normal executions"),
        ("show", "list normal executions in step notation"),
        ("verify", "cross-check against brute-force enumeration"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file")
        p.add_argument("--arch", required=True, choices=sorted(ARCHITECTURES))
        p.add_argument("--unroll", type=int, default=2, help="loop unroll bound (default 2)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-execs", type=int, default=None, help="abort beyond this many normal executions")
        if name == "run":
            p.add_argument("--expect", choices=("holds", "fails"), help="exit 1 if the verdict differs")
            p.add_argument("--all-paths", action="store_true", help="also count every execution")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.unroll < 0:
        print("error: --unroll must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        lit = load_litmus(args.file)
        if args.command == "run":
            report = run_report(lit, args.arch, args.unroll, args.max_execs, args.all_paths)
            print(report.to_json() if args.json else report.to_text())
            if args.expect is not None and report.condition_holds != (args.expect == "holds"):
                return EXIT_EXPECTATION
        elif args.command == "count":
            forms, _ = _normal_list(lit, args.arch, args.unroll, args.max_execs)
            print(json.dumps({"normal_executions": len(forms)}) if args.json else len(forms))
        elif args.command == "show":
            forms, stats = _normal_list(lit, args.arch, args.unroll, args.max_execs)
            if args.json:
                print(json.dumps({"executions": forms, "stuck_paths": stats.stuck}, indent=2))
            else:
                print("\n".join(forms))
        else:
            rep = verify(lit, by_name(args.arch), args.unroll)
            if args.json:
                print(json.dumps(asdict(rep), indent=2, sort_keys=True))
            else:
                print(
                    f"{rep.litmus} [{rep.arch}, unroll {rep.unroll}]: {rep.total} executions, "
                    f"{rep.classes} classes, {rep.normal} normal, {rep.stuck} stuck"
                )
                print("PASS" if rep.passed else "FAIL: " + "; ".join(rep.failures))
            if not rep.passed:
                return EXIT_EXPECTATION
    except (OSError, LitmusSyntaxError, OracleLimitError, ExecutionLimitExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
