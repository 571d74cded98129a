"""Run every fixture through the pipeline and print a comparison table.

    python scripts/run_fixtures.py [--out-dir runs/]
"""

import argparse
from pathlib import Path

from fraccover.report import FixtureSpec, GridSpec, ScaleSpec, run_report

RUNS = [
    (FixtureSpec("koch", level=7), 3**7, 3),
    (FixtureSpec("sierpinski", level=8), 2**8, 2),
    (FixtureSpec("cantor", level=6), 3**6, 3),
    (FixtureSpec("square"), 1024, 2),
    (FixtureSpec("segment"), 1024, 2),
    *[(FixtureSpec("fbm", hurst=h, n=2**14, seed=0), 512, 2) for h in (0.2, 0.5, 0.8)],
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="runs")
    args = ap.parse_args()
    print(f"{'fixture':<28}{'expected':>10}{'d_h':>10}{'r^2':>9}{'med|r|':>9}  pass")
    for fixture, side, base in RUNS:
        tag = "-".join(str(v) for v in fixture.describe().values())
        b = run_report(fixture, GridSpec(side), ScaleSpec(base), Path(args.out_dir) / tag)
        print(
            f"{tag:<28}{b.expected_dimension:>10.4f}{b.estimate.d_h:>10.4f}"
            f"{b.estimate.r_squared:>9.4f}{b.residuals['median_abs_residual']:>9.4f}  {b.passed}"
        )


if __name__ == "__main__":
    main()
