"""Run every verification suite with its pinned settings and print one line per suite.

    python scripts/run_acceptance.py            # all suites
    python scripts/run_acceptance.py thm1 thm4  # a subset

Exits nonzero if any suite fails.
"""

from __future__ import annotations

import argparse
import sys

from bincss import verify


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("suites", nargs="*", metavar="SUITE", help=f"any of: {', '.join(verify.SUITES)}")
    parser.add_argument("-v", "--verbose", action="store_true", help="also print every per-trial line")
    args = parser.parse_args(argv)

    unknown = sorted(set(args.suites) - set(verify.SUITES))
    if unknown:
        parser.error(f"unknown suite(s): {', '.join(unknown)}")
    names = args.suites or list(verify.SUITES)
    gcss = None
    failed = 0
    for name in names:
        if name == "thm4" or (name == "invariants" and gcss is None):
            gcss = verify.run_gcss_ratio(verify.GcssRatioConfig(check_candidates=True))
        if name == "thm4":
            res = gcss
        elif name == "invariants":
            res = verify.run_invariants(gcss_result=gcss)
        else:
            res = verify.SUITES[name]()
        if args.verbose:
            for line in res.lines:
                print("   ", line)
        print(f"{name:16s} {res.summary()}")
        failed += not res.passed
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
