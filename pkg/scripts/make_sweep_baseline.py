#!/usr/bin/env python3
"""Regenerate the sweep ratio baseline used by the regression guard.

Run from the repository root:

    python3 scripts/make_sweep_baseline.py

Overwrites tests/data/sweep_baseline.json with the N/bound ratio of every
cell of the standard corpus (deterministic, so reruns are byte-identical).
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from subgroup_values.reporting import format_value
from subgroup_values.pipeline import run_sweep, standard_sweep_cells


def cell_key(row) -> str:
    return f"p={row.p},d={row.d},e={row.e},H={row.H},T={row.T},u={row.u}"


def main() -> None:
    rows = run_sweep(standard_sweep_cells())
    baseline = {
        "ratios": {
            cell_key(r): float(format_value(r.ratio)) for r in rows if r.ratio is not None
        },
        "statuses": {cell_key(r): r.status for r in rows},
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "sweep_baseline.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(baseline, indent=2, sort_keys=True) + "\n")
    print(f"wrote {out} ({len(baseline['ratios'])} ratios, {len(rows)} rows)")


if __name__ == "__main__":
    main()
