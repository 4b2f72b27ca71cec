"""Sample the self-motion of the bundled hexapod and write the platform
trajectories to motion.csv (one row per pose, platform points in the fixed
frame).  Usage: python3 demos/motion_trajectories.py [slices] [out.csv]"""
from __future__ import annotations

import sys

from hexapod_liaison import cli, moebius, study


def main(slices: int = 200, out: str = "motion.csv") -> None:
    fx = cli.load_fixture()
    base = moebius.SixTuple([tuple(p) for p in fx["base"]])
    plat = moebius.SixTuple([tuple(p) for p in fx["platform"]])
    curve = study.motion_curve(base, plat, cli.fixture_legs(fx))
    print("degrees:", curve.degrees())
    sample = study.sample_motion(curve, slices)
    sample.write_csv(out, plat)
    print(f"{len(sample.poses)} poses in chart {sample.chart}=1, worst leg residual "
          f"{float(sample.max_residual):.2e}, written to {out}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(int(args[0]) if args else 200, args[1] if len(args) > 1 else "motion.csv")
