"""``diffext verify <suite>``: seeded verification runs with text or JSON reports.

Exit codes: 0 all cases passed, 1 some case failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import asdict, dataclass

from .errors import DiffExtError
from .field import Derivation
from .groups import REPRESENTATIONS
from .suites import FIELD, SUITES, Settings, run_suite

TIMING_KEYS = ("elapsed_ms", "suite_elapsed_ms")


@dataclass(frozen=True)
class RunConfig:
    suite: str = "all"
    samples: int = 50
    seed: int = 0
    degree_cap: int = 3
    rep: str = "natural"
    d1: str = "p1"
    d2: str = "p2"
    output: str = "text"


def parse_derivation(spec: str) -> Derivation:
    """``p1``/``∂1`` for a formal partial, or comma-separated coefficients ``1,t1``.

    A leading ``d1=`` / ``d2=`` label is accepted and ignored.
    """
    text = re.sub(r"^\s*d\d+\s*=", "", spec).strip()
    m = re.fullmatch(r"(?:p|∂|d/dt)(\d+)", text)
    if m:
        i = int(m.group(1))
        if not 1 <= i <= FIELD.nvars:
            raise DiffExtError(f"no variable t{i}")
        return Derivation.partial(FIELD, i)
    parts = [p for p in text.split(",")]
    if len(parts) != FIELD.nvars or any(not p.strip() for p in parts):
        raise DiffExtError(f"derivation spec {spec!r} needs {FIELD.nvars} coefficients")
    return Derivation.of(FIELD, [FIELD.parse(p) for p in parts])


def run(config: RunConfig) -> tuple[dict, int]:
    """Execute the configured suite(s); returns the report and exit code."""
    settings = Settings(
        samples=config.samples,
        seed=config.seed,
        degree_cap=config.degree_cap,
        rep=REPRESENTATIONS[config.rep],
        d1=parse_derivation(config.d1),
        d2=parse_derivation(config.d2),
    )
    names = SUITES if config.suite == "all" else (config.suite,)
    cases = []
    per_suite = {}
    start = time.perf_counter()
    for name in names:
        t0 = time.perf_counter()
        for case in run_suite(name, settings):
            label = f"{name}: {case.name}" if config.suite == "all" else case.name
            entry = {"name": label, "pass": case.passed}
            if case.witness is not None:
                entry["witness"] = case.witness
            cases.append(entry)
        per_suite[name] = round((time.perf_counter() - t0) * 1000)
    cases.sort(key=lambda c: c["name"])
    passed = sum(c["pass"] for c in cases)
    report = {
        "suite": config.suite,
        "config": asdict(config),
        "cases": cases,
        "passed": passed,
        "failed": len(cases) - passed,
        "elapsed_ms": round((time.perf_counter() - start) * 1000),
        "suite_elapsed_ms": per_suite,
    }
    return report, (0 if report["failed"] == 0 else 1)


def strip_timing(report: dict) -> dict:
    return {k: v for k, v in report.items() if k not in TIMING_KEYS}


def format_text(report: dict) -> str:
    lines = [f"suite: {report['suite']}"]
    for c in report["cases"]:
        line = f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}"
        if not c["pass"]:
            line += f"\n      witness: {c.get('witness')}"
        lines.append(line)
    for name, ms in report["suite_elapsed_ms"].items():
        lines.append(f"time  {name}: {ms} ms")
    lines.append(f"{report['passed']} passed, {report['failed']} failed in {report['elapsed_ms']} ms")
    return "\n".join(lines)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffext",
        description="Verify central extensions of SL2 over differential fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser(
        "verify",
        help="run a verification suite",
        description="Elements of SL2(Q(t1,t2)) are sampled as products of at most 4 "
                    "elementary/torus generators with random rational parameters.",
    )
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--samples", type=_positive, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--degree-cap", type=_positive, default=3)
    v.add_argument("--rep", choices=("natural", "adjoint"), default="natural")
    v.add_argument("--d1", default="p1", help="derivation: p1, p2 or coefficients like '1,t1'")
    v.add_argument("--d2", default="p2")
    v.add_argument("--output", choices=("text", "json"), default="text")
    v.add_argument("--report-file", help="also write the JSON report here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not -(2**63) <= args.seed < 2**64:
        parser.error("--seed must fit in 64 bits")
    for spec in (args.d1, args.d2):
        try:
            parse_derivation(spec)
        except (DiffExtError, ZeroDivisionError) as exc:
            parser.error(f"malformed derivation spec {spec!r}: {exc}")
    config = RunConfig(args.suite, args.samples, args.seed, args.degree_cap,
                       args.rep, args.d1, args.d2, args.output)
    report, code = run(config)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.report_file:
        with open(args.report_file, "w") as fh:
            fh.write(text + "\n")
    print(text if args.output == "json" else format_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
