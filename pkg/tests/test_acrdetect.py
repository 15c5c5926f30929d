"""Symbolic ACR detection on fixture networks, with sympy as an independent membership route."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from acrkit.acrdetect import (
    AlgebraicValue,
    CacrStatus,
    Status,
    analyze,
    analyze_ideal,
    cacr,
    check_condition1,
    check_condition2,
    check_condition3,
    is_zero_divisor,
    one_species_acr,
    positive_restriction_ideal,
    sign_definite,
    value_float,
    verify_candidate,
    zero_divisor_test,
)
from acrkit.exactalg import Ideal, parse_polynomial
from acrkit.exactalg.univariate import from_coeffs
from acrkit.netmodel import parse_network

from conftest import ideal, network, report

CERTIFIED = (Status.ACR, Status.ZERO_DIVISOR_ACR)


def cands(name):
    return {(c.species.name, c.value) for c in report(name).candidates}


def sympy_saturated_contains(I: Ideal, f_text: str) -> bool:
    """x in I : (x_1...x_n)^inf, computed by sympy with one Rabinowitsch variable."""
    syms = sympy.symbols(" ".join(f"s{k}" for k in range(I.nvars)))
    syms = syms if isinstance(syms, tuple) else (syms,)
    t = sympy.Symbol("t")
    loc = {n: s for n, s in zip(I.names, syms)}
    gens = [sympy.sympify(g.to_str(I.names).replace("^", "**"), locals=loc) for g in I.generators]
    gens.append(t * sympy.Mul(*syms) - 1)
    G = sympy.groebner(gens, t, *syms, order="lex")
    f = sympy.sympify(f_text.replace("^", "**"), locals=loc)
    return G.contains(f)


# --- fixtures with known answers ------------------------------------------------

def test_zd_four_species():
    rep = report("zd_four_species")
    v = rep.verdict("A")
    assert v.status == Status.ZERO_DIVISOR_ACR and v.value == 1
    assert cands("zd_four_species") == {("A", 1), ("A", 2), ("A", 3)}
    for s in "BCD":
        assert rep.verdict(s).status not in CERTIFIED


def test_elim_quadratic():
    assert cands("elim_quadratic") == {("A", 1), ("A", 3)}
    assert report("elim_quadratic").verdict("A").status == Status.ZERO_DIVISOR_ACR


def test_two_candidates():
    rep = report("two_candidates")
    assert {("A", 1), ("C", 2)} <= cands("two_candidates")
    assert rep.verdict("A").value == 1 and rep.verdict("C").value == 2


def test_no_positive_states_is_vacuous_with_candidate():
    rep = report("no_positive_states")
    assert ("A", 1) in cands("no_positive_states")
    assert rep.vacuity.vacuous
    assert all(v.status == Status.VACUOUS for v in rep.verdicts)


def test_joshi_nguyen_condition2():
    I = ideal("joshi_nguyen")
    i = I.names.index("S3")
    assert check_condition1(I, i) is None
    v = check_condition2(I, i)
    assert v is not None and v.value == 2
    assert sympy_saturated_contains(I, "S3 - 2")
    rep = report("joshi_nguyen")
    assert rep.verdict("S3").status in CERTIFIED and rep.verdict("S3").method == "condition2"


def test_shinar_feinberg_zero_divisor():
    rep = report("shinar_feinberg")
    v = rep.verdict("Yp")
    assert v.status == Status.ZERO_DIVISOR_ACR and v.value == 2
    assert sympy_saturated_contains(ideal("shinar_feinberg"), "Yp - 2")


def test_acr_without_zero_divisor():
    I = ideal("acr_not_zero_divisor")
    rep = report("acr_not_zero_divisor")
    a, b = rep.verdict("A"), rep.verdict("B")
    assert a.status == Status.ACR and a.value == 1
    assert b.status == Status.ACR and b.value == 2
    assert not is_zero_divisor(I, parse_polynomial("A - 1", I.names))
    assert not is_zero_divisor(I, parse_polynomial("B - 2", I.names))


def test_zero_divisor_without_acr():
    I = ideal("zero_divisor_no_acr")
    i = I.names.index("A")
    f = parse_polynomial("A - 1", I.names)
    assert is_zero_divisor(I, f)
    v = verify_candidate(I, i, 1)
    assert v.status == Status.CANDIDATE
    assert report("zero_divisor_no_acr").verdict("A").status == Status.CANDIDATE


def test_two_lines_candidates_only():
    rep = report("two_lines")
    assert cands("two_lines") == {("A", 1), ("A", 2)}
    assert all(v.status not in CERTIFIED for v in rep.verdicts)


def test_irrational_value():
    v = report("sqrt2").verdict("A")
    assert v.status == Status.ACR
    assert isinstance(v.value, AlgebraicValue)
    assert v.value.interval.lo ** 2 < 2 <= v.value.interval.hi ** 2
    assert abs(value_float(v.value) - 2 ** 0.5) < 1e-6


def test_one_species_networks():
    assert one_species_acr(network("one_species")).value == 1
    v = one_species_acr(network("one_species_two_states"))
    assert v.status == Status.NO_ACR and set(v.values) == {Fraction(1), Fraction(2)}
    with pytest.raises(ValueError):
        one_species_acr(network("shinar_feinberg"))


def test_cacr_cycle_and_counterexample():
    I = ideal("cycle_cacr")
    c = cacr(I, I.names.index("A"))
    assert c.status == CacrStatus.CACR and c.value == 2
    assert cacr(I, I.names.index("B")).status == CacrStatus.NO_CACR
    J = ideal("acr_not_zero_divisor")
    assert cacr(J, 0).status == CacrStatus.NO_CACR


def test_cycle_candidates_for_b():
    rep = report("cycle_cacr")
    b = rep.verdict("B")
    assert b.status == Status.CANDIDATE and set(b.values) == {1, 2, 3}
    assert rep.verdict("A").value == 2


def test_phosphorylation_has_no_symbolic_verdict():
    rep = report("phospho")
    assert all(v.status == Status.INCONCLUSIVE for v in rep.verdicts)
    assert not rep.conclusive


def test_gen_shinar_feinberg():
    v = report("gen_shinar_feinberg").verdict("A")
    assert v.status == Status.ZERO_DIVISOR_ACR and v.value == 1


def test_report_json_shape():
    d = report("shinar_feinberg").to_json()
    assert {"verdicts", "candidates", "vacuous", "cacr", "network_hash", "rates"} <= set(d)
    yp = next(v for v in d["verdicts"] if v["species"] == "Yp")
    assert yp["value"] == {"num": "2", "den": "1"}


def test_zero_divisor_membership_flag():
    I = Ideal([parse_polynomial("x - 1", ["x", "y"])], 2, ["x", "y"])
    r = zero_divisor_test(I, parse_polynomial("x - 1", ["x", "y"]))
    assert r.in_ideal and not r.is_zero_divisor


def test_verify_candidate_rejects_nonpositive():
    with pytest.raises(ValueError):
        verify_candidate(ideal("two_lines"), 0, 0)


def test_positive_restriction_lift():
    P = positive_restriction_ideal(ideal("acr_not_zero_divisor"))
    pt = P.lift_point([1.0, 2.0])
    vals = [float(g.evaluate([Fraction(v).limit_denominator(10 ** 12) for v in pt])) for g in P.generators]
    assert max(abs(v) for v in vals) < 1e-9


def test_sign_definite():
    names = ["x", "y"]
    assert sign_definite(parse_polynomial("x^2 + 3*y + 1", names))
    assert not sign_definite(parse_polynomial("x - 1", names))


# --- property: one-species ideals with a known set of positive roots ----------------

root_sets = st.lists(st.fractions(min_value=Fraction(-4), max_value=4, max_denominator=4).filter(lambda r: r != 0),
                     min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(root_sets, st.booleans(), st.integers(0, 2))
def test_one_species_verdict_matches_roots(roots, complex_pair, x_power):
    coeffs = [Fraction(1)]
    factors = [[-r, Fraction(1)] for r in roots]
    if complex_pair:
        factors.append([Fraction(1), Fraction(0), Fraction(1)])
    factors += [[Fraction(0), Fraction(1)]] * x_power
    for fac in factors:
        out = [Fraction(0)] * (len(coeffs) + len(fac) - 1)
        for a, x in enumerate(coeffs):
            for b, y in enumerate(fac):
                out[a + b] += x * y
        coeffs = out
    I = Ideal([from_coeffs(coeffs)], 1, ["x"])
    rep = analyze_ideal(I)
    v = rep.verdicts[0]
    pos = {r for r in roots if r > 0}
    if not pos:
        assert v.status == Status.VACUOUS
    elif len(pos) == 1:
        assert v.status in CERTIFIED and v.value == next(iter(pos))
    else:
        assert v.status == Status.NO_ACR
    if len(pos) == 1:
        assert check_condition3(I, 0).value == next(iter(pos))


def test_dsl_rescaling_preserves_certificate():
    # scaling all rates by a constant leaves the steady states unchanged
    base = network("shinar_feinberg")
    scaled = base.with_rates([r.rate * 3 for r in base.reactions])
    assert analyze(scaled).verdict("Yp").value == 2


def test_parse_network_inline():
    net = parse_network("A -> 2A ; 1\n2A -> A ; 1\n")
    assert one_species_acr(net).value == 1
