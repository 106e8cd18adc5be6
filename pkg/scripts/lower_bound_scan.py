"""Exhaustive CSS error on the lower-bound family against the large-n closed form.

For each admissible ``n`` the script builds ``A = L R + I_n``, runs the exact
CSS search and prints the error, the closed form ``n + q k 2^(k-1) - 2k``, and
the ratio against the planted witness error ``n``.  For small ``n`` the search
can beat the formula, which is only derived once each block is long enough.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from math import lcm

from bincss.css_gf2 import css_exhaustive, ratio_bound
from bincss.instances import expected_css_error_lb, lower_bound_instance


def admissible(k: int, nmax: int) -> list[int]:
    step = lcm(k, 2**k - 1)
    return list(range(step, nmax + 1, step))


def main() -> None:
    parser = argparse.ArgumentParser(description="CSS error on the lower-bound instances")
    parser.add_argument("--k", type=int, nargs="+", default=[1, 2])
    parser.add_argument("--nmax", type=int, default=24)
    args = parser.parse_args()

    print(f"{'k':>2} {'n':>4} {'css':>5} {'formula':>7} {'css/n':>8} {'bound':>6}")
    for k in args.k:
        for n in admissible(k, args.nmax):
            inst = lower_bound_instance(k, n)
            css = css_exhaustive(inst.A, k).error
            formula = expected_css_error_lb(k, n)
            ratio = Fraction(css, n)
            print(f"{k:>2} {n:>4} {css:>5} {formula:>7} {float(ratio):>8.4f} {float(ratio_bound(k)):>6.3f}")


if __name__ == "__main__":
    main()
