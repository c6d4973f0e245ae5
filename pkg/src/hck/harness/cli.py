"""Command-line entry point ``hck``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .io import InputError, read_json
from .scenarios import EXIT_INPUT, SCENARIO_IDS, Scenario, run_scenario


def render_text(report: dict) -> str:
    lines = [f"scenario: {report['scenario']}"]
    for k, v in report["inputs"].items():
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    for k, v in report["construction"].items():
        if not isinstance(v, (list, dict)) or k in ("levels", "ordered_levels", "full_levels",
                                                     "diagonal_levels", "nondegenerate", "level_sizes"):
            lines.append(f"  {k}: {json.dumps(v)}")
    if report["homology"]:
        lines.append("homology:")
        for name, table in report["homology"].items():
            cells = []
            for row in table:
                parts = (["Z" if row["betti"] == 1 else f"Z^{row['betti']}"] if row["betti"] else []) + \
                    [f"Z/{t}" for t in row["torsion"]]
                cells.append(f"H{row['degree']}={' + '.join(parts) if parts else '0'}")
            lines.append(f"  {name:<24} " + "  ".join(cells))
    lines.append("checks:")
    for name, ok in report["checks"].items():
        lines.append(f"  [{'pass' if ok else 'FAIL'}] {name}")
    for msg in report["failures"]:
        lines.append(f"  failure: {msg}")
    if "timings" in report:
        lines.append("timings: " + ", ".join(f"{k}={v}s" for k, v in report["timings"].items()))
    lines.append("result: " + ("pass" if report["passed"] else f"fail ({report['failure_class']})"))
    return "\n".join(lines)


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    print(render_text(report))


def _execute(s: Scenario, out: str | None) -> int:
    r = run_scenario(s)
    _emit(r.data, out)
    return r.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hck", description="Homotopy-colimit checks for covers and "
                                 "hypercovers of finite spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario described by a JSON file")
    run.add_argument("scenario", help="path to a scenario JSON file")
    run.add_argument("--json", dest="out", help="also write the report as JSON to this path")
    run.add_argument("--timings", action="store_true", help="include wall-clock timings")

    chk = sub.add_parser("check", help="run one scenario from command-line arguments")
    chk.add_argument("id", choices=SCENARIO_IDS)
    chk.add_argument("--space", help="fixture name or space JSON file")
    chk.add_argument("--cover", help="fixture cover name, 'random', 'random-complete' or cover JSON file")
    chk.add_argument("--map", help="fixture map name or map JSON file")
    chk.add_argument("--group", help="fixture group name or group JSON file")
    chk.add_argument("--hypercover", help="fixture hypercover name, 'random' or hypercover JSON file")
    chk.add_argument("-K", type=int, default=2, help="top homology degree (default 2)")
    chk.add_argument("-L", type=int, default=4, help="level cap (default 4)")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--json", dest="out", help="also write the report as JSON to this path")
    chk.add_argument("--timings", action="store_true", help="include wall-clock timings")

    fx = sub.add_parser("fixtures", help="inspect the fixture corpus")
    fx.add_argument("action", choices=["list"])
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fixtures":
            for kind, names in fixtures.listing().items():
                print(f"{kind}:")
                for n in names:
                    print(f"  {n}")
            return 0
        if args.command == "run":
            data = read_json(args.scenario)
            s = Scenario.from_json(data)
            s.timings = s.timings or args.timings
            return _execute(s, args.out)
        s = Scenario(args.id, space=args.space, cover=args.cover, map=args.map, group=args.group,
                     hypercover=args.hypercover, K=args.K, L=args.L, seed=args.seed,
                     timings=args.timings)
        s.validate()
        return _execute(s, args.out)
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
