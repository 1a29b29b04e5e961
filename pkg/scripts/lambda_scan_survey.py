#!/usr/bin/env python3
"""Survey exceptional-multiplier counts across a degree grid.

For each prime and degree pair (d, e) this samples random non-perfect-power
maps f/g, scans their exceptional multipliers over F_p*, and prints how the
observed counts sit against the 4*deg^2 cap. Useful for eyeballing how loose
the cap is in practice.

    python3 scripts/lambda_scan_survey.py [--samples N] [--seed S]
"""

import argparse
import pathlib
import random
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from subgroup_values.errors import PerfectPowerInput, ZeroDenominator
from subgroup_values.fields import FieldCtx
from subgroup_values.lambda_scan import exceptional_lambdas
from subgroup_values.polynomials import UniPoly, rational_normalize


def sample_psi(rng, ctx, d, e):
    p = ctx.p
    while True:
        num = [rng.randrange(p) for _ in range(d)] + [rng.randrange(1, p)]
        den = [rng.randrange(p) for _ in range(e)] + [1]
        try:
            psi = rational_normalize(UniPoly.from_ints(ctx, num), UniPoly.from_ints(ctx, den))
        except ZeroDenominator:
            continue
        if psi.d == d and psi.e == e:
            return psi


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'p':>4} {'(d,e)':>7} {'samples':>8} {'max |Λ|':>8} {'cap':>5} {'mean':>6}")
    for p in (7, 11, 13):
        ctx = FieldCtx(p)
        for d, e in ((2, 0), (3, 0), (2, 1), (4, 0), (3, 2)):
            if d + e >= p:
                continue
            counts = []
            while len(counts) < args.samples:
                psi = sample_psi(rng, ctx, d, e)
                try:
                    counts.append(exceptional_lambdas(psi, p).count)
                except PerfectPowerInput:
                    continue
            cap = 4 * max(d, e) ** 2
            mean = sum(counts) / len(counts)
            print(f"{p:>4} {f'({d},{e})':>7} {len(counts):>8} {max(counts):>8} {cap:>5} {mean:>6.2f}")


if __name__ == "__main__":
    main()
