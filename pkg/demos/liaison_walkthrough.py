"""From a base six-tuple to a certified movable hexapod.

Runs the bundled base/platform pair through classification, the liaison
check, the two tangency conditions and the certificate.  Takes about a
minute and a half on one core.
"""
from __future__ import annotations

import time

from hexapod_liaison import cli, liaison, moebius


def main() -> None:
    fx = cli.load_fixture()
    base = moebius.SixTuple([tuple(p) for p in fx["base"]])
    plat = moebius.SixTuple([tuple(p) for p in fx["platform"]])

    rep = moebius.moebius_general_test(base)
    print(f"base map: {rep.tag}, pencil dimension {rep.pencil_dimension}, "
          f"residual count {rep.residual_count}")

    t0 = time.perf_counter()
    v = liaison.verify_residual_platform(base, plat)
    print(f"platform on the pencil: {v.pencil_contains_platform}, matched directions {v.total_multiplicity}"
          f"  ({time.perf_counter() - t0:.0f}s)")

    bonds = liaison.compute_bonds(base, plat, pairs=v.pairs)
    r2 = liaison.tang2_solve(base, plat, bonds=bonds)
    print(f"gamma: {[str(g) for g in r2.gammas]}")

    r3 = liaison.tang3_solve(base, plat, r2.gammas[0], bonds=bonds)
    print(f"squared legs: affine subspace of dimension {r3.dimension}")
    for p, (cs, c) in sorted(r3.relations.items()):
        rhs = " + ".join(f"({v}) d{f + 1}^2" for f, v in sorted(cs.items()))
        print(f"  d{p + 1}^2 = {rhs} + ({c})")

    legs = r3.complete([20, 17, 9])
    h = liaison.Hexapod(base, plat, r2.gammas[0], legs)
    cert = liaison.movability_certificate(h, bonds=bonds, with_motion=True)
    print(f"certificate: {cert.summary}; self-motion curve of degree {cert.motion_degree}")


if __name__ == "__main__":
    main()
