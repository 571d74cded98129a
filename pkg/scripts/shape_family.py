"""Write the optimal-cover shape family (SVG) and per-dimension profiles (CSV).

    python scripts/shape_family.py [--out-dir figures/]
"""

import argparse
from pathlib import Path

from fraccover import fileio
from fraccover.optimal_cover import shape_area_numeric, shape_profile
from fraccover.svg import shape_family_svg

DIMENSIONS = (1.0, 1.2, 1.4, 1.6, 1.8, 2.0)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="figures")
    ap.add_argument("--samples", type=int, default=512)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "shape_family.svg").write_text(shape_family_svg(DIMENSIONS, n_samples=args.samples))
    for d in DIMENSIONS:
        s = shape_profile(1.0, d, 1.0, args.samples)
        fileio.write_shape(out / f"shape_dh{d:.1f}.csv", s)
        print(f"d_h={d:.1f}  area={s.area_closed_form:.6f}  numeric={shape_area_numeric(s):.6f}")


if __name__ == "__main__":
    main()
