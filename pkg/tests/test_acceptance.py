"""Acceptance criteria 1-10. Each test prints one PASS/FAIL line (also listed in the terminal summary)."""

import itertools
import random
import time
from fractions import Fraction

import numpy as np

from acrkit.acrdetect import (
    CacrStatus,
    Status,
    acr_candidates,
    analyze,
    cacr,
    check_condition2,
    is_zero_divisor,
    jacobian_minor_augment,
    jacobian_minors,
    positive_restriction_ideal,
    verify_candidate,
)
from acrkit.exactalg import krull_dimension, parse_order, parse_polynomial
from acrkit.exactalg.univariate import from_coeffs
from acrkit.netmodel import steady_state_ideal
from acrkit.numacr import (
    TrackerConfig,
    procedure2_numerical_acr,
    procedure3_preclude,
    sample_real_points,
    solve_total_degree,
)
from acrkit.realroots import count_positive_roots

from conftest import ideal, network, random_rates
from test_realroots import grid_count_positive, random_case


def test_criterion_01_groebner_fixture(criterion):
    with criterion(1, "reduced lex GB (B>C>D>A) of the four-species zero-divisor network, exact, < 1 s"):
        I = ideal("zd_four_species")
        order = parse_order("lex:B,C,D,A", I.names)
        t0 = time.perf_counter()
        gb = I.with_generators(I.generators).groebner(order)
        elapsed = time.perf_counter() - t0
        expected = ["A^2*D - 4*A*D + 3*D", "A^2*C - 3*A*C + 2*C", "A*C*D - C*D", "B - C"]
        exp_polys = {parse_polynomial(s, I.names) for s in expected}
        assert set(gb.elements) == exp_polys
        assert len(gb.elements) == 4
        assert elapsed < 1.0, elapsed


def test_criterion_02_candidate_algorithm(criterion):
    with criterion(2, "candidate pairs on four fixture networks, exact"):
        def pairs(name):
            return {(c.species.name, c.value) for c in acr_candidates(ideal(name))}

        assert pairs("zd_four_species") == {("A", 1), ("A", 3), ("A", 2)}
        assert pairs("elim_quadratic") == {("A", 1), ("A", 3)}
        assert {("A", 1), ("C", 2)} <= pairs("two_candidates")
        assert ("A", 1) in pairs("no_positive_states")
        rep = analyze(network("no_positive_states"))
        assert rep.vacuity.vacuous
        assert ("A", Fraction(1)) in {(c.species.name, c.value) for c in rep.candidates}
        assert rep.to_json()["vacuous"] is True


def test_criterion_03_saturation_acr(criterion):
    with criterion(3, "Joshi-Nguyen S3 = 2 via saturation; Shinar-Feinberg Yp = 2 zero-divisor ACR; < 30 s each"):
        t0 = time.perf_counter()
        rep = analyze(network("joshi_nguyen"))
        t_jn = time.perf_counter() - t0
        v = rep.verdict("S3")
        assert v.status in (Status.ACR, Status.ZERO_DIVISOR_ACR) and v.value == 2
        assert v.method == "condition2"
        I = ideal("joshi_nguyen")
        assert check_condition2(I, I.names.index("S3")).value == 2
        t0 = time.perf_counter()
        rep = analyze(network("shinar_feinberg"))
        t_sf = time.perf_counter() - t0
        v = rep.verdict("Yp")
        assert v.status == Status.ZERO_DIVISOR_ACR and v.value == 2
        assert t_jn < 30 and t_sf < 30, (t_jn, t_sf)


def test_criterion_04_counterexamples(criterion):
    with criterion(4, "ACR without zero divisor; zero divisor without ACR; two-line candidates without ACR"):
        I = ideal("acr_not_zero_divisor")
        v = analyze(network("acr_not_zero_divisor")).verdict("A")
        assert v.status == Status.ACR and v.value == 1
        assert not is_zero_divisor(I, parse_polynomial("A - 1", I.names))

        J = ideal("zero_divisor_no_acr")
        c = verify_candidate(J, J.names.index("A"), 1)
        assert c.status == Status.CANDIDATE
        assert analyze(network("zero_divisor_no_acr")).verdict("A").status not in (Status.ACR, Status.ZERO_DIVISOR_ACR)

        K = ideal("two_lines")
        assert {(c.species.name, c.value) for c in acr_candidates(K)} == {("A", 1), ("A", 2)}
        rep = analyze(network("two_lines"))
        assert all(v.status not in (Status.ACR, Status.ZERO_DIVISOR_ACR) for v in rep.verdicts)


def test_criterion_05_sturm_suite(criterion):
    with criterion(5, "Sturm counts: two quartics and 200 random polynomials vs grid oracle"):
        x = ["x"]
        assert count_positive_roots(parse_polynomial("-x^4+2*x^3-x^2", x)) == 1
        assert count_positive_roots(parse_polynomial("-x^4+3*x^3-2*x^2", x)) == 2
        rnd = random.Random(2024)
        for _ in range(200):
            coeffs, _roots = random_case(rnd)
            assert count_positive_roots(from_coeffs(coeffs)) == grid_count_positive(coeffs), coeffs


def test_criterion_06_cacr(criterion):
    with criterion(6, "CACR in A = 2 on the cycle network; NO_CACR on the ACR-without-zero-divisor system"):
        I = ideal("cycle_cacr")
        assert [r.rate for r in network("cycle_cacr").reactions] == [1, 2, 11, 6, 6, 1]
        c = cacr(I, I.names.index("A"))
        assert c.status == CacrStatus.CACR and c.value == 2
        J = ideal("acr_not_zero_divisor")
        assert all(cacr(J, i).status == CacrStatus.NO_CACR for i in range(J.nvars))


def test_criterion_07_homotopy_core(criterion):
    with criterion(7, "total-degree homotopy: circle/line residual < 1e-10, Bezout counts, 1 vs 4 threads"):
        names = ["x", "y"]
        sys_ = [parse_polynomial("x^2+y^2-5", names), parse_polynomial("x-y-1", names)]
        res = solve_total_degree(sys_, TrackerConfig(seed=0))
        got = sorted((round(p.coordinates[0].real, 9), round(p.coordinates[1].real, 9)) for p in res)
        assert got == [(-1.0, -2.0), (2.0, 1.0)]
        assert all(p.residual < 1e-10 for p in res)

        cases = [(["x^2-1", "y^3-2"], 6), (["x*y-1", "x^2+y^2-4"], 4), (["x^3-y", "y^2-x"], 6)]
        for texts, bez in cases:
            r = solve_total_degree([parse_polynomial(t, names) for t in texts], TrackerConfig(seed=1))
            assert r.n_paths == bez and len(r) == bez

        big = [parse_polynomial(t, ["a", "b", "c"]) for t in ["a^2 + b*c - 2", "b^2 - a*c + 1", "c^2 + a - b - 1"]]
        one = solve_total_degree(big, TrackerConfig(seed=9, threads=1, chunk=2))
        four = solve_total_degree(big, TrackerConfig(seed=9, threads=4, chunk=2))
        assert one.n_paths == 8
        for p, q in zip(one.paths, four.paths):
            assert p.status == q.status and np.array_equal(p.x, q.x)


def test_criterion_08_procedure2(criterion):
    with criterion(8, "two-seed witness ACR test on Shinar-Feinberg with seeded random rates: Yp constant within 1e-8, < 2 min"):
        net = network("shinar_feinberg")
        net = net.with_rates(random_rates(net, 5))
        I = steady_state_ideal(net)
        t0 = time.perf_counter()
        r = procedure2_numerical_acr(I, 1e-8, TrackerConfig(seed=0))
        elapsed = time.perf_counter() - t0
        print(r.verdict, r.counts, f"{elapsed:.1f}s")
        assert r.verdict == "Numerical ACR in Yp within 1e-08"
        assert [I.names[i] for i in r.acr_species] == ["Yp"]
        assert r.counts_agree and r.counts[0] and sum(r.counts[0].values()) > 0
        # the value agrees with the exact zero-divisor certificate on the same rates
        exact = analyze(net).verdict("Yp")
        assert exact.status == Status.ZERO_DIVISOR_ACR
        assert abs(r.values[I.names.index("Yp")] - float(exact.value)) < 1e-8
        assert elapsed < 120, elapsed


def test_criterion_09_procedure3(criterion):
    with criterion(9, "real-sampling preclusion: phosphorylation cycle -> No Numerical ACR; generalized network box -> Inconclusive"):
        I = ideal("phospho")
        r = procedure3_preclude(I, [(0.1, 10.0)] * I.nvars, 0.1, 1e-6, TrackerConfig(seed=7))
        print(r.verdict, len(r.sample.points))
        assert r.verdict == "No Numerical ACR"
        P = [p.coordinates for p in r.sample.points]
        assert all(np.all(p > 0) for p in P)
        assert any(np.all(np.abs(p - q) > 1e-6) for p, q in itertools.combinations(P, 2))
        for p in P:
            vals = [float(g.evaluate([Fraction(v) for v in p])) for g in I.generators]
            assert max(abs(v) for v in vals) < 1e-6

        G = ideal("gen_shinar_feinberg")
        r2 = procedure3_preclude(G, [(0.5, 1.5)] * G.nvars, 0.1, 1e-6, TrackerConfig(seed=0))
        print(r2.verdict, len(r2.sample.points))
        assert r2.verdict == "Inconclusive"


H_MINORS = [
    "-4*(A-1)*A*z_A*z_B^2",
    "-4*(B-2)*B*z_A^2*z_B",
    "8*(A-1)*A*B*z_A*z_B",
    "8*(B-2)*A*B*z_A*z_B",
]
Q1 = ["A^2 - 2*A + B^2 - 4*B + 5", "A*z_A^2 - 1", "B*z_B^2 - 1"]


def _proportional(p, q) -> bool:
    if set(p.terms) != set(q.terms):
        return False
    m = next(iter(p.terms))
    r = Fraction(p.terms[m]) / Fraction(q.terms[m])
    return all(Fraction(p.terms[k]) == r * Fraction(q.terms[k]) for k in p.terms)


def test_criterion_10_positive_restriction_cover(criterion):
    with criterion(10, "positive-restriction cover: minors h1..h4, A-1 and B-2 in the augmented ideal, sampled zeros"):
        I = ideal("acr_not_zero_divisor")
        P = positive_restriction_ideal(I)
        names = P.ideal.names
        # the supplied component: same real zeros as the full positive-restriction ideal
        Q = P.ideal.with_generators([parse_polynomial(s, names) for s in Q1])
        assert krull_dimension(Q) == 1
        minors = jacobian_minors(Q, 1)
        h = [parse_polynomial(s, names) for s in H_MINORS]
        assert len(minors) == 4
        for hi in h:
            assert any(_proportional(hi, m) for m in minors), hi
        aug = jacobian_minor_augment(Q, 1)
        assert krull_dimension(aug) == 0
        assert aug.contains(parse_polynomial("A - 1", names))
        assert aug.contains(parse_polynomial("B - 2", names))

        # real zeros, sampled through the augmented ideal (same real variety, nonsingular points)
        gb = aug.groebner().elements
        box = [(0.1, 5.0), (0.1, 5.0), (-3.0, 3.0), (-3.0, 3.0)]
        s = sample_real_points(list(gb), box, 0.1, 1e-6, TrackerConfig(seed=0), max_rounds=6)
        print(f"{len(s.points)} sampled real zeros")
        assert len(s.points) >= 1
        n = I.nvars
        for p in s.points:
            x = p.coordinates
            for i in range(n):
                assert abs(x[i] * x[n + i] ** 2 - 1) < 1e-8
            vals = [float(g.evaluate([Fraction(float(v)) for v in x])) for g in P.generators]
            assert max(abs(v) for v in vals) < 1e-8
