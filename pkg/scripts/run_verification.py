#!/usr/bin/env python3
"""Run the full transform-identity verification suite and print a report.

Exits 0 when every identity holds within tolerance, 1 otherwise.  A thin
wrapper over `solowfrac verify` that prints the full per-point deviation
tables instead of one line per identity group.
"""

import sys

from solowfrac.transforms import run_all_verifications


def main() -> int:
    reports = run_all_verifications()
    ok = True
    for report in reports:
        print(report.render())
        ok = ok and report.passed
    print("all identities verified" if ok else "IDENTITY FAILURES PRESENT")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
