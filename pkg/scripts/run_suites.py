#!/usr/bin/env python3
"""Run every verification suite and print a summary table.

Usage: python scripts/run_suites.py [--seed K] [--trials N]
"""

import argparse
import sys
import time

from conley_kernel.suites import SUITES, run_suite


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--only", action="append", help="suite name (repeatable)")
    args = parser.parse_args()

    names = args.only or sorted(SUITES)
    failures = 0
    for name in names:
        started = time.time()
        result = run_suite(name, trials=args.trials, seed=args.seed)
        status = "pass" if result.passed else "FAIL"
        print(f"{name:28s} {status}  ({time.time() - started:6.1f}s)")
        for line in result.lines:
            print(f"    {line}")
        if not result.passed:
            failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
