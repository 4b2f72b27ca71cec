"""One random member of each closed-form family, pushed through the
self-motion pipeline, plus the three-plane degeneration of the lines family."""
from __future__ import annotations

import random
from fractions import Fraction

from hexapod_liaison import families, study


def describe(name, h) -> None:
    curve = study.motion_curve(h.base, h.scaled_platform, h.legs2)
    d = curve.degrees()
    print(f"{name}: gamma {h.gamma}, S = {curve.S.factor()[1]}")
    vx = None if curve.vertex is None else tuple(str(c) for c in curve.vertex)
    print(f"  vertex {vx}, deg J {d['J']}, deg F {sorted(set(d['F'].values()))}")


def main(seed: int = 1) -> None:
    rng = random.Random(seed)
    describe("lines", families.make_family_lines(families.random_lines_params(rng)))
    p = families.random_order3_params(rng)
    inst = families.make_family_order3(p)
    describe("order-3", inst.hexapod)
    print("  k - K factor:", families.kK_factor_check(p, rng))

    special = families.LinesFamilyParams(A1=2, mu1=-1, A3=0, B3=2, mu3=-1, A5=1, B5=3,
                                          C5=Fraction(1, 2), d1=30, d3=30, d5=41, mu5=Fraction(-2, 3))
    h = families.make_family_lines(special)
    _, gs = study.omega_and_g(study.build_system(h.base, h.scaled_platform, h.legs2))
    S = study.common_cubic(gs).S
    # S is free of e0 here, so no elimination step follows
    print("lines, symmetric choice: S splits into", [str(f) for f, _ in S.factor()[1]])


if __name__ == "__main__":
    main()
