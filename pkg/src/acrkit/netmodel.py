"""Reaction networks: the text DSL, the data model and mass-action polynomials.

DSL, one reaction per line, ``#`` starts a comment::

    B -> A ; 1
    2A + B -> A + 2B ; 1/3
    A <-> B ; 2, 3.5
    0 -> A ; 1

Species are ordered by first appearance.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg.coeffs import QQ, parse_rational, rational_json, to_fraction
from .exactalg.ideals import Ideal
from .exactalg.polynomial import Polynomial


class NetworkSyntaxError(ValueError):
    """Raised for malformed DSL input; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class SpeciesId:
    index: int
    name: str


@dataclass(frozen=True)
class Complex:
    exponents: Tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.exponents)

    def to_str(self, names: Sequence[str]) -> str:
        parts = []
        for name, e in zip(names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{e}{name}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Reaction:
    reactant: Complex
    product: Complex
    rate: Fraction

    def __post_init__(self):
        if self.reactant == self.product:
            raise ValueError("reactant equals product")
        if self.rate <= 0:
            raise ValueError(f"rate must be positive, got {self.rate}")

    def vector(self) -> Tuple[int, ...]:
        return tuple(p - r for p, r in zip(self.product.exponents, self.reactant.exponents))


@dataclass(frozen=True)
class Network:
    species: Tuple[SpeciesId, ...]
    reactions: Tuple[Reaction, ...]

    def __post_init__(self):
        if not self.reactions:
            raise ValueError("a network needs at least one reaction")
        n = len(self.species)
        for k, s in enumerate(self.species):
            if s.index != k:
                raise ValueError("species index must equal its position")
        if len({s.name for s in self.species}) != n:
            raise ValueError("species names must be unique")
        for r in self.reactions:
            if len(r.reactant.exponents) != n or len(r.product.exponents) != n:
                raise ValueError("complex length does not match species count")

    @property
    def names(self) -> List[str]:
        return [s.name for s in self.species]

    @property
    def n_species(self) -> int:
        return len(self.species)

    def species_index(self, name: str) -> int:
        for s in self.species:
            if s.name == name:
                return s.index
        raise KeyError(name)

    def with_rates(self, rates: Sequence) -> "Network":
        if len(rates) != len(self.reactions):
            raise ValueError("one rate per reaction required")
        rs = tuple(Reaction(r.reactant, r.product, Fraction(k)) for r, k in zip(self.reactions, rates))
        return Network(self.species, rs)


@dataclass(frozen=True)
class StoichiometryInfo:
    matrix: Tuple[Tuple[int, ...], ...]
    conservation_basis: Tuple[Tuple[Fraction, ...], ...]


# --- parsing ---------------------------------------------------------------

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_TERM = re.compile(r"\s*(\d*)\s*([A-Za-z_][A-Za-z0-9_']*)\s*$")


def _parse_complex(text: str, line: int, col0: int, species: Dict[str, int], order: List[str]):
    stripped = text.strip()
    if stripped == "0":
        return {}
    if not stripped:
        raise NetworkSyntaxError("empty complex", line, col0 + 1)
    counts: Dict[str, int] = {}
    offset = 0
    for piece in text.split("+"):
        col = col0 + offset + (len(piece) - len(piece.lstrip())) + 1
        m = _TERM.match(piece)
        if not m:
            raise NetworkSyntaxError(f"bad term {piece.strip()!r}", line, col)
        coeff = int(m.group(1)) if m.group(1) else 1
        if coeff <= 0:
            raise NetworkSyntaxError("stoichiometric coefficient must be positive", line, col)
        name = m.group(2)
        if name not in species:
            species[name] = len(order)
            order.append(name)
        counts[name] = counts.get(name, 0) + coeff
        offset += len(piece) + 1
    return counts


def _parse_rate(text: str, line: int, col: int):
    try:
        q = parse_rational(text)
    except ValueError:
        raise NetworkSyntaxError(f"invalid rate {text.strip()!r}", line, col) from None
    if q <= 0:
        raise NetworkSyntaxError(f"rate must be positive, got {text.strip()}", line, col)
    return to_fraction(q)


def parse_network(text: str) -> Network:
    """Parse the reaction DSL into a Network."""
    species: Dict[str, int] = {}
    order: List[str] = []
    raw: List[Tuple[dict, dict, Fraction, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if ";" not in body:
            raise NetworkSyntaxError("missing ';' before rate", lineno, len(body.rstrip()) + 1)
        lhs_rhs, rate_txt = body.split(";", 1)
        rate_col = len(lhs_rhs) + 2
        if "<->" in lhs_rhs:
            arrow, reversible = "<->", True
        elif "->" in lhs_rhs:
            arrow, reversible = "->", False
        else:
            raise NetworkSyntaxError("missing arrow '->' or '<->'", lineno, 1)
        a = lhs_rhs.index(arrow)
        left, right = lhs_rhs[:a], lhs_rhs[a + len(arrow):]
        if arrow in right:
            raise NetworkSyntaxError("more than one arrow", lineno, a + len(arrow) + right.index(arrow) + 1)
        lc = _parse_complex(left, lineno, 0, species, order)
        rc = _parse_complex(right, lineno, a + len(arrow), species, order)
        rates = rate_txt.split(",")
        if reversible and len(rates) != 2:
            raise NetworkSyntaxError("'<->' needs two rates: forward, backward", lineno, rate_col)
        if not reversible and len(rates) != 1:
            raise NetworkSyntaxError("'->' takes exactly one rate", lineno, rate_col)
        col = rate_col
        parsed = []
        for r in rates:
            parsed.append(_parse_rate(r, lineno, col))
            col += len(r) + 1
        if lc == rc:
            raise NetworkSyntaxError("reactant equals product", lineno, 1)
        raw.append((lc, rc, parsed[0], lineno))
        if reversible:
            raw.append((rc, lc, parsed[1], lineno))
    if not raw:
        raise NetworkSyntaxError("no reactions found", 1, 1)
    n = len(order)

    def vec(d):
        return Complex(tuple(d.get(name, 0) for name in order))

    sp = tuple(SpeciesId(i, name) for i, name in enumerate(order))
    reactions = tuple(Reaction(vec(l), vec(r), k) for l, r, k, _ in raw)
    return Network(sp, reactions)


def load_network(path: str) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())


def _fmt_rate(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def pretty_print(net: Network) -> str:
    """DSL text that reparses to the same network."""
    names = net.names
    lines = []
    for r in net.reactions:
        lines.append(f"{r.reactant.to_str(names)} -> {r.product.to_str(names)} ; {_fmt_rate(r.rate)}")
    return "\n".join(lines) + "\n"


def network_to_json(net: Network) -> dict:
    return {
        "species": net.names,
        "reactions": [
            {
                "reactant": list(r.reactant.exponents),
                "product": list(r.product.exponents),
                "rate": rational_json(QQ(r.rate)),
            }
            for r in net.reactions
        ],
    }


def network_hash(net: Network) -> str:
    blob = json.dumps(network_to_json(net), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


# --- mass-action polynomials -------------------------------------------------

def steady_state_polys(net: Network) -> List[Polynomial]:
    """Right-hand sides of the mass-action ODEs, one per species."""
    n = net.n_species
    acc: List[Dict[tuple, object]] = [dict() for _ in range(n)]
    for r in net.reactions:
        k = QQ(r.rate)
        m = r.reactant.exponents
        for i, d in enumerate(r.vector()):
            if d:
                acc[i][m] = acc[i].get(m, 0) + k * d
    return [Polynomial(a, n) for a in acc]


def steady_state_ideal(net: Network) -> Ideal:
    return Ideal(steady_state_polys(net), net.n_species, net.names)


def _rational_nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of {v : rows . v = 0} by exact Gauss-Jordan elimination."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -m[row][fc]
        basis.append(v)
    return basis


def stoichiometry(net: Network) -> StoichiometryInfo:
    """Reaction vectors and a rational basis of conservation laws."""
    mat = tuple(r.vector() for r in net.reactions)
    rows = [[Fraction(v) for v in row] for row in mat]
    basis = _rational_nullspace(rows, net.n_species)
    return StoichiometryInfo(mat, tuple(tuple(v) for v in basis))


def network_from_polynomials(polys: Sequence[Polynomial], names: Sequence[str]) -> Network:
    """Mass-action network whose ODE right-hand sides equal ``polys``.

    A term c*x^m of polynomial i becomes the reaction m -> m + sign(c)*e_i
    with rate |c|. Negative terms must contain x_i, otherwise no
    mass-action realisation of this form exists.
    """
    n = len(names)
    reactions = []
    for i, p in enumerate(polys):
        if p.nvars != n:
            raise ValueError("arity mismatch")
        for m, c in sorted(p.terms.items()):
            prod = list(m)
            if c > 0:
                prod[i] += 1
            else:
                if m[i] == 0:
                    raise ValueError(
                        f"negative term in d{names[i]}/dt lacks {names[i]}; not realisable by mass action")
                prod[i] -= 1
            reactions.append(Reaction(Complex(tuple(m)), Complex(tuple(prod)), abs(to_fraction(c))))
    return Network(tuple(SpeciesId(k, nm) for k, nm in enumerate(names)), tuple(reactions))
