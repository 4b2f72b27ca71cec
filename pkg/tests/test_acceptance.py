"""Acceptance criteria 1-9, one test each, with a PASS/FAIL line per criterion."""
from __future__ import annotations

import csv
import random
import time
from fractions import Fraction as Q

import mpmath

from hexapod_liaison import conformal as cf
from hexapod_liaison import families as fam
from hexapod_liaison import liaison as lia
from hexapod_liaison import moebius as mb
from hexapod_liaison import study
from hexapod_liaison.exactalg import mpoly_deg_in, mpoly_total_degree

# Tang3 relations of the fixture: pivot -> (coefficients of d1^2, d2^2, d3^2, constant)
FIXTURE_RELATIONS = {
    3: (Q(71, 92), Q(-105, 92), Q(63, 46), Q(-535801, 676062)),
    4: (Q(71, 41), Q(-75, 41), Q(45, 41), Q(-1908080, 1074159)),
    5: (Q(71, 44), Q(-45, 44), Q(9, 22), Q(-114265, 154638)),
}


def test_criterion_1_fixture_classification(base, criterion):
    t0 = time.perf_counter()
    m = mb.photographic_map(base)
    pen = mb.quadric_pencil(m)
    dt = time.perf_counter() - t0
    ok = m.tag == "birational-6" and m.degree == 6 and m.map_degree == 1 and pen.dimension == 2 and dt < 10
    criterion(1, ok, f"{m.tag}, map degree {m.map_degree}, pencil dimension {pen.dimension}, {dt:.1f}s")
    assert ok


def test_criterion_2_liaison_count(base, platform, criterion):
    t0 = time.perf_counter()
    ma, mp_ = mb.photographic_map(base), mb.photographic_map(platform)
    pen = mb.quadric_pencil(ma)
    on_pencil = all(mb.pencil_vanishes_on(pen, mp_))
    matched = mb.total_multiplicity(mb.matched_directions(ma, mp_))
    residual = mb.residual_intersection_count(ma, pen)
    dt = time.perf_counter() - t0
    ok = on_pencil and matched == 14 and residual == 14 and dt < 60
    criterion(2, ok, f"matched {matched}, residual count {residual}, platform on pencil {on_pencil}, {dt:.1f}s")
    assert ok


def test_criterion_3_tang2(base, platform, criterion):
    t0 = time.perf_counter()
    with mpmath.workprec(256):
        r = lia.tang2_solve(base, platform, precision=256)
    dt = time.perf_counter() - t0
    ok = r.gammas == [Q(1)] and r.residual < mpmath.mpf(2) ** -100 and dt < 120
    criterion(3, ok, f"gamma roots {[str(g) for g in r.gammas]}, residual {mpmath.nstr(r.residual, 3)}, {dt:.1f}s")
    assert ok


def test_criterion_4_tang3(base, platform, criterion):
    t0 = time.perf_counter()
    r = lia.tang3_solve(base, platform, 1, precision=256)
    dt = time.perf_counter() - t0
    got = {p: tuple(cs.get(f, Q(0)) for f in (0, 1, 2)) + (c,) for p, (cs, c) in r.relations.items()}
    ok = r.dimension == 3 and got == FIXTURE_RELATIONS and r.verified and dt < 300
    criterion(4, ok, f"dimension {r.dimension}, relations exact {got == FIXTURE_RELATIONS}, "
                     f"verified at 512 bits {r.verified}, {dt:.1f}s")
    assert ok


def test_criterion_5_study_pipeline(base, platform, special_legs, generic_legs, criterion):
    t0 = time.perf_counter()
    sp = study.motion_curve(base, platform, special_legs)
    gen = study.motion_curve(base, platform, generic_legs)
    dt = time.perf_counter() - t0
    alt = study.alternating_sum(sp.G).is_zero()
    factor = all((sp.L[k] * sp.S) == sp.G[k] for k in range(2, 7))
    s_ok = mpoly_total_degree(sp.S) == 3 and mpoly_deg_in(sp.S, 0) == 1
    f_gen = sorted({mpoly_total_degree(F) for F in gen.F.values()})
    f_sp = sorted({mpoly_total_degree(F) for F in sp.F.values()})
    ok = (alt and factor and s_ok and f_gen == [22] and f_sp == [18] and sp.j_degree == 10
          and gen.j_degree == 12 and dt < 600)
    criterion(5, ok, f"alternating sum zero {alt}, G_k = L_k S {factor}, S cubic linear in e0 {s_ok}, "
                     f"deg F generic {f_gen} / special {f_sp}, deg J special {sp.j_degree} / generic "
                     f"{gen.j_degree}, {dt:.1f}s")
    assert ok


def _family_instance(h, expected_gamma, order3_params=None, rng=None):
    base, plat = h.base, h.platform
    curve = study.motion_curve(base, h.scaled_platform, h.legs2)
    cubic = curve.L is not None and mpoly_total_degree(curve.S) == 3
    bonds = lia.compute_bonds(base, plat)
    r2 = lia.tang2_solve(base, plat, bonds=bonds)
    cert = lia.movability_certificate(h, bonds=bonds)
    kk = True
    if order3_params is not None:
        res = fam.kK_factor_check(order3_params, rng)
        kk = res["nonzero_at_params"] and res["vanish_on_locus"]
    return cubic and r2.gammas == [expected_gamma] and cert.issued and curve.movable and kk


def test_criterion_6_families(criterion):
    t0 = time.perf_counter()
    rng = random.Random(2024)
    lines = []
    for _ in range(5):
        h = fam.make_family_lines(fam.random_lines_params(rng))
        lines.append(_family_instance(h, Q(-1)))
    order3 = []
    for _ in range(5):
        p = fam.random_order3_params(rng)
        h = fam.make_family_order3(p).hexapod
        order3.append(_family_instance(h, Q(1), p, rng))
    dt = time.perf_counter() - t0
    ok = all(lines) and all(order3) and dt < 600
    criterion(6, ok, f"lines {sum(lines)}/5, order-3 {sum(order3)}/5 (cubic S, gamma, certificate, "
                     f"k-K factor), {dt:.1f}s")
    assert ok


def test_criterion_7_motion_sampling(special_curve, tmp_path, criterion):
    t0 = time.perf_counter()
    s = study.sample_motion(special_curve, 200, precision=256)
    path = tmp_path / "motion.csv"
    s.write_csv(path, special_curve.system.platform)
    dt = time.perf_counter() - t0
    with open(path) as fh:
        rows = list(csv.reader(fh))
    ok = len(s.poses) >= 200 and s.max_residual < mpmath.mpf(10) ** -20 and len(rows) == len(s.poses) + 1 \
        and dt < 300
    criterion(7, ok, f"{len(s.poses)} poses, max leg residual {mpmath.nstr(s.max_residual, 3)}, "
                     f"csv rows {len(rows) - 1}, {dt:.1f}s")
    assert ok


def _rand_q(rng, lo=-6, hi=6, den=7):
    return Q(rng.randint(lo * den, hi * den), rng.randint(1, den))


def test_criterion_8_property_suites(criterion):
    t0 = time.perf_counter()
    rng = random.Random(8)

    def rand_tuple():
        while True:
            try:
                return mb.SixTuple([tuple(_rand_q(rng) for _ in range(3)) for _ in range(6)])
            except ValueError:
                continue

    def rand_rotation():
        e = [Q(rng.randint(-6, 6)) for _ in range(4)]
        while not any(e):
            e = [Q(rng.randint(-6, 6)) for _ in range(4)]
        return cf.quaternion_rotation(e)

    segre = all(mb.segre_check(mb.raw_components(rand_tuple())) for _ in range(100))

    sigma_ok = True
    with mpmath.workprec(128):
        for _ in range(20):
            phi = mb.raw_components(rand_tuple())
            for _ in range(5):
                t = mpmath.mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
                a = [p(t) for p in phi]
                b = [mpmath.conj(p(mb.sigma(t))) for p in phi]
                k = max(range(5), key=lambda i: abs(a[i]))
                sigma_ok &= max(abs(x / a[k] - y / b[k]) for x, y in zip(a, b)) < mpmath.mpf(2) ** -90

    spherical = True
    for _ in range(100):
        R, tau = rand_rotation(), [_rand_q(rng) for _ in range(3)]
        p, P, d2 = [_rand_q(rng) for _ in range(3)], [_rand_q(rng) for _ in range(3)], _rand_q(rng)
        z = cf.embed_isometry(R, tau).vector()
        moved = [sum(R[a][b] * p[b] for b in range(3)) + tau[a] for a in range(3)]
        want = sum((moved[a] - P[a]) ** 2 for a in range(3)) - d2
        spherical &= cf.apply_form(cf.spherical_form(p, P, d2), z) == want

    quadrics = cf.x_defining_quadrics()
    membership = all(all(q(cf.embed_isometry(rand_rotation(), [_rand_q(rng) for _ in range(3)]).vector()) == 0
                         for q in quadrics) for _ in range(100))

    red = {q.name: q.terms for q in cf.boundary_reduction(cf.x_defining_quadrics(extra=False))}
    rename = {"Mty": "hx+Mty", "Mx": "Mx+hy", "xx": "hr-xx", "yy": "hr-yy"}
    boundary = True
    for q in cf.boundary_system():
        stem = q.name.rstrip("0123456789")
        terms = red[rename.get(stem, stem) + q.name[len(stem):]]
        if stem in ("xx", "yy"):
            terms = tuple((i, j, -c) for i, j, c in terms)
        boundary &= terms == q.terms
    dt = time.perf_counter() - t0
    ok = segre and sigma_ok and spherical and membership and boundary and dt < 300
    criterion(8, ok, f"segre {segre}, sigma {sigma_ok}, spherical form {spherical}, X membership "
                     f"{membership}, boundary reduction {boundary}, {dt:.1f}s")
    assert ok


def test_criterion_9_observations(special_curve, generic_legs, criterion):
    rep = study.observation_checks(special_curve, generic_legs)
    ok = all(rep.passed.values())
    criterion(9, ok, f"checks {rep.passed}, vertex {tuple(str(c) for c in rep.vertex)}, difference rank {rep.difference_rank}")
    assert ok
