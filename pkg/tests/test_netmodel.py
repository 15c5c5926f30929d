from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from acrkit.exactalg import parse_polynomial
from acrkit.exactalg.polynomial import Polynomial
from acrkit.netmodel import (
    NetworkSyntaxError,
    network_from_polynomials,
    network_hash,
    parse_network,
    pretty_print,
    steady_state_polys,
    stoichiometry,
)

from conftest import network


def test_species_order_and_odes():
    net = parse_network("B -> A ; 1\n2A + B -> A + 2B ; 1\n")
    assert net.names == ["B", "A"]
    f = steady_state_polys(net)
    names = net.names
    assert f[0] == parse_polynomial("-B + A^2*B", names)
    assert f[1] == parse_polynomial("B - A^2*B", names)


def test_reversible_rates_and_zero_complex():
    net = parse_network("A <-> B ; 2, 7/2  # comment\n0 -> A ; 1.5\n")
    assert [r.rate for r in net.reactions] == [Fraction(2), Fraction(7, 2), Fraction(3, 2)]
    assert net.reactions[2].reactant.is_zero()


@pytest.mark.parametrize("text, line, column", [
    ("A -> B ; 1\nA -> ; 1\n", 2, 5),
    ("A -> B\n", 1, 7),
    ("A B ; 1\n", 1, 1),
    ("A -> B ; -1\n", 1, 9),
    ("A -> B ; x\n", 1, 9),
    ("A <-> B ; 1\n", 1, 10),
    ("A -> B ; 1\n\n2A + -B -> C ; 1\n", 3, 6),
    ("A -> B -> C ; 1\n", 1, 8),
    ("# nothing\n", 1, 1),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(NetworkSyntaxError) as exc:
        parse_network(text)
    assert (exc.value.line, exc.value.column) == (line, column)


def test_reactant_equal_product_rejected():
    with pytest.raises(NetworkSyntaxError):
        parse_network("A + B -> B + A ; 1\n")


def test_conservation_laws_shinar_feinberg():
    net = network("shinar_feinberg")
    info = stoichiometry(net)
    N = sympy.Matrix(info.matrix)
    assert len(info.conservation_basis) == net.n_species - N.rank()
    for w in info.conservation_basis:
        for row in info.matrix:
            assert sum(Fraction(a) * b for a, b in zip(w, row)) == 0
    # every conservation law is a linear first integral of the ODEs
    f = steady_state_polys(net)
    for w in info.conservation_basis:
        acc = Polynomial.zero(net.n_species)
        for wi, fi in zip(w, f):
            acc = acc + fi * wi
        assert acc.is_zero()


def test_hash_stable_under_comments_and_spacing():
    a = parse_network("A->B;1\nB -> A ; 2\n")
    b = parse_network("# x\nA  ->  B ; 1   \n\nB -> A ; 2 # y\n")
    assert network_hash(a) == network_hash(b)
    assert network_hash(a) != network_hash(a.with_rates([1, 3]))


def test_realisation_from_polynomials():
    names = ["A", "B"]
    polys = [parse_polynomial("A*(A-1)^2 + A*(B-2)^2", names), parse_polynomial("B*(A-1)^2 + B*(B-2)^2", names)]
    net = network_from_polynomials(polys, names)
    assert steady_state_polys(net) == polys
    with pytest.raises(ValueError):
        network_from_polynomials([parse_polynomial("-B", names), parse_polynomial("B", names)], names)


NAMES = ["A", "B", "C"]
complexes = st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2))
rates = st.fractions(min_value=Fraction(1, 20), max_value=50, max_denominator=20).filter(lambda q: q > 0)
reaction = st.tuples(complexes, complexes, rates).filter(lambda r: r[0] != r[1])


def render(reactions):
    lines = []
    for lhs, rhs, k in reactions:
        def side(c):
            parts = [(f"{e}{n}" if e > 1 else n) for e, n in zip(c, NAMES) if e]
            return " + ".join(parts) or "0"
        lines.append(f"{side(lhs)} -> {side(rhs)} ; {k.numerator}/{k.denominator}")
    return "\n".join(lines) + "\n"


@settings(max_examples=80, deadline=None)
@given(st.lists(reaction, min_size=1, max_size=6))
def test_pretty_print_roundtrip(reactions):
    net = parse_network(render(reactions))
    again = parse_network(pretty_print(net))
    assert again.names == net.names
    assert again.reactions == net.reactions
    assert steady_state_polys(again) == steady_state_polys(net)


@settings(max_examples=80, deadline=None)
@given(st.lists(reaction, min_size=1, max_size=6))
def test_conservation_basis_is_left_kernel(reactions):
    net = parse_network(render(reactions))
    info = stoichiometry(net)
    N = sympy.Matrix(info.matrix)
    assert len(info.conservation_basis) == net.n_species - N.rank()
    for w in info.conservation_basis:
        assert all(sum(Fraction(a) * b for a, b in zip(w, row)) == 0 for row in info.matrix)
