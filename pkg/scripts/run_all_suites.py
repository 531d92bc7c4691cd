#!/usr/bin/env python3
"""Run every verification suite at its default field sizes.

Prints one summary row per report and optionally dumps the full JSON
and CSV artifacts.  Exit status is nonzero when an assertive suite
fails, mirroring the CLI.
"""

import argparse
import sys

from permrf.verify import (
    reports_to_csv,
    reports_to_json,
    run_battery,
)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--samples", type=int, default=1000,
                        help="random cases for the criteria-agreement suite")
    parser.add_argument("--budget", type=int, default=None,
                        help="largest field size the run may construct")
    parser.add_argument("--json", metavar="PATH",
                        help="write the full report array here")
    parser.add_argument("--csv", metavar="PATH",
                        help="write one row per exception here")
    parser.add_argument("--timings", action="store_true",
                        help="include wall-clock seconds in the JSON")
    args = parser.parse_args(argv)

    reports = run_battery(seed=args.seed, workers=args.workers,
                          size_budget=args.budget, samples=args.samples)

    width = max(len(r.suite) for r in reports)
    for r in reports:
        mode = r.mode or "-"
        print(f"{r.suite:<{width}}  {r.field_spec:<8} {mode:<13} "
              f"{r.cases_passed:>7}/{r.cases_total:<7} "
              f"{r.verdict:<11} {r.elapsed:7.2f}s")
    failed = [r for r in reports if r.assertive and r.verdict != "pass"]
    total = sum(r.cases_total for r in reports)
    print(f"{len(reports)} reports, {total} cases, {len(failed)} failing")

    if args.json:
        with open(args.json, "w") as fh:
            fh.write(reports_to_json(reports, include_elapsed=args.timings))
            fh.write("\n")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(reports_to_csv(reports))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
