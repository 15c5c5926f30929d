"""Symbolic ACR detection on the steady-state ideal.

The pipeline per species is: condition 1 (x_i - a in I), condition 2
(x_i - a in the saturation by x_1...x_n), condition 3 (unique positive
root of the elimination generator), candidate search with verification
through colon ideals, complex-number ACR and finally a real-zero reduction
by positive semidefinite quadratic generators.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exactalg.coeffs import QQ, rational_json, to_fraction
from .exactalg.ideals import Ideal, colon, eliminate, ideal_member, saturate
from .exactalg.orders import MonomialOrder, elimination, grevlex, lex
from .exactalg.polynomial import Polynomial
from .exactalg.univariate import rational_roots, squarefree_part, univariate_data
from .netmodel import Network, SpeciesId, network_hash, steady_state_ideal
from .realroots import IsolatingInterval, count_positive_roots, isolate_positive_roots

DEFAULT_WIDTH = Fraction(1, 10 ** 9)


class Status(str, Enum):
    ACR = "ACR"
    ZERO_DIVISOR_ACR = "ZERO_DIVISOR_ACR"
    CANDIDATE = "CANDIDATE"
    VACUOUS = "VACUOUS"
    NO_ACR = "NO_ACR"
    INCONCLUSIVE = "INCONCLUSIVE"


class CacrStatus(str, Enum):
    CACR = "CACR"
    VACUOUS_CACR = "VACUOUS_CACR"
    NO_CACR = "NO_CACR"


@dataclass(frozen=True)
class AlgebraicValue:
    """An irrational real number: the root of ``poly`` inside ``interval``."""

    interval: IsolatingInterval
    poly: Polynomial
    var_name: str = "x"

    def approx(self) -> float:
        return float(self.interval.midpoint())

    def to_json(self) -> dict:
        d = self.interval.to_json()
        d["poly"] = self.poly.to_str([self.var_name] * self.poly.nvars if self.poly.nvars else None)
        return d

    def __str__(self):
        return f"root of {self.to_json()['poly']} in {self.interval}"


Value = Union[Fraction, AlgebraicValue]


def value_json(v: Value):
    if isinstance(v, AlgebraicValue):
        return v.to_json()
    return rational_json(QQ(v))


def value_str(v: Value) -> str:
    if isinstance(v, AlgebraicValue):
        return str(v)
    return str(v)


def value_float(v: Value) -> float:
    return v.approx() if isinstance(v, AlgebraicValue) else float(v)


@dataclass
class AcrVerdict:
    species: SpeciesId
    status: Status
    value: Optional[Value] = None
    values: Tuple[Value, ...] = ()
    certificate: str = ""
    method: str = ""
    elapsed_ms: float = 0.0

    def __post_init__(self):
        if self.status in (Status.ACR, Status.ZERO_DIVISOR_ACR) and self.value is None:
            raise ValueError(f"{self.status.value} verdict needs a value")
        if self.status == Status.CANDIDATE and not self.values:
            raise ValueError("CANDIDATE verdict needs at least one value")

    def to_json(self) -> dict:
        d = {
            "species": self.species.name,
            "index": self.species.index,
            "status": self.status.value,
            "value": value_json(self.value) if self.value is not None else None,
            "certificate": self.certificate,
            "method": self.method,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.values:
            d["values"] = [value_json(v) for v in self.values]
        return d


@dataclass
class CacrVerdict:
    species: SpeciesId
    status: CacrStatus
    value: Optional[Fraction]
    generator: Polynomial
    note: str = ""

    def to_json(self, names: Sequence[str]) -> dict:
        return {
            "species": self.species.name,
            "status": self.status.value,
            "value": rational_json(QQ(self.value)) if self.value is not None else None,
            "generator": self.generator.to_str(names),
            "note": self.note,
        }


@dataclass(frozen=True)
class Candidate:
    species: SpeciesId
    value: Value
    source: str

    def to_json(self) -> dict:
        return {"species": self.species.name, "value": value_json(self.value), "source": self.source}


@dataclass(frozen=True)
class ZeroDivisorResult:
    is_zero_divisor: bool
    in_ideal: bool
    witness: Optional[Polynomial]
    colon_ideal: Optional[Ideal]


@dataclass(frozen=True)
class VacuityResult:
    vacuous: bool
    certificate: str


@dataclass(frozen=True)
class PositiveRestrictionIdeal:
    """Steady-state generators plus x_i z_i^2 - 1 in variables (x, z)."""

    ideal: Ideal
    n: int

    @property
    def generators(self):
        return self.ideal.generators

    def lift_point(self, x: Sequence[float]) -> List[float]:
        return list(x) + [1.0 / float(v) ** 0.5 for v in x]


# --- helpers ----------------------------------------------------------------

def _sid(I: Ideal, i: int) -> SpeciesId:
    if not 0 <= i < I.nvars:
        raise IndexError(f"species index {i} out of range")
    return SpeciesId(i, I.names[i])


def _monomial_all(n: int) -> Polynomial:
    return Polynomial.monomial([1] * n)


def _x_minus(I: Ideal, i: int, alpha) -> Polynomial:
    return Polynomial.variable(i, I.nvars) - QQ(Fraction(alpha))


def _fmt(p: Polynomial, I: Ideal) -> str:
    return p.to_str(I.names)


def positive_saturation(I: Ideal) -> Ideal:
    """I : (x_1 ... x_n)^inf, memoised on I."""
    return I.memo("sat_m", lambda: saturate(I, _monomial_all(I.nvars)).reduced_generators())


def _elim(I: Ideal, i: int) -> Optional[Polynomial]:
    """The generator of I intersected with Q[x_i], or None for the zero ideal."""
    def compute():
        E = eliminate(I, [i])
        gens = [g for g in E.generators if not g.is_zero()]
        return gens[0] if gens else None
    return I.memo(("elim", i), compute)


def _single_positive_root(g: Polynomial, I: Ideal, i: int, width=DEFAULT_WIDTH) -> Value:
    ivs = isolate_positive_roots(g, width)
    iv = ivs[0]
    if iv.exact:
        return iv.lo
    return AlgebraicValue(iv, squarefree_part(g), I.names[i])


def _positive_roots(g: Polynomial, I: Ideal, i: int, width=DEFAULT_WIDTH) -> List[Value]:
    out: List[Value] = []
    sq = None
    for iv in isolate_positive_roots(g, width):
        if iv.exact:
            out.append(iv.lo)
        else:
            sq = sq or squarefree_part(g)
            out.append(AlgebraicValue(iv, sq, I.names[i]))
    return out


def sign_definite(p: Polynomial) -> bool:
    """All coefficients share a sign, so p has no zero in the open orthant."""
    return not p.is_zero() and len(p.coefficient_signs()) == 1


# --- the three sufficient conditions ----------------------------------------

def check_condition1(I: Ideal, i: int) -> Optional[AcrVerdict]:
    """ACR(a) when x_i - a (a > 0) is in I."""
    n = I.nvars
    others = [j for j in range(n) if j != i]
    order = elimination(n, others) if others else grevlex(n)
    gb = I.groebner(order)
    if gb.is_unit():
        return None
    for g in gb.elements:
        vs = g.variables()
        if vs == (i,) and g.total_degree() == 1:
            alpha = -to_fraction(g.constant_term())
            if alpha > 0:
                return AcrVerdict(_sid(I, i), Status.ACR, alpha,
                                  certificate=f"{_fmt(g, I)} is in the ideal (reduced GB element, {order.describe(I.names)})",
                                  method="condition1")
    return None


def check_condition2(I: Ideal, i: int) -> Optional[AcrVerdict]:
    """Condition 1 applied to the saturation by the product of all variables."""
    S = positive_saturation(I)
    v = check_condition1(S, i)
    if v is None:
        return None
    v.certificate = (f"{_fmt(_x_minus(I, i, v.value), I)} is in I:(" + "*".join(I.names) + ")^inf")
    v.method = "condition2"
    return v


def check_condition3(I: Ideal, i: int) -> Optional[AcrVerdict]:
    """Sturm count on the generator g of I intersected with Q[x_i]."""
    g = _elim(I, i)
    sid = _sid(I, i)
    if g is None:
        return None
    if g.is_constant():
        return AcrVerdict(sid, Status.VACUOUS, certificate="the ideal is <1>: no steady states", method="condition3")
    k = count_positive_roots(g)
    gs = _fmt(g, I)
    if k == 1:
        val = _single_positive_root(g, I, i)
        return AcrVerdict(sid, Status.ACR, val,
                          certificate=f"elimination generator {gs} has exactly one positive root (Sturm count 1)",
                          method="condition3")
    if k == 0:
        return AcrVerdict(sid, Status.VACUOUS,
                          certificate=f"elimination generator {gs} has no positive root (Sturm count 0)",
                          method="condition3")
    if I.nvars == 1:
        vals = _positive_roots(g, I, i)
        return AcrVerdict(sid, Status.NO_ACR, values=tuple(vals),
                          certificate=f"{gs} has {k} positive roots (Sturm count)", method="condition3")
    return None


def one_species_acr(net: Network) -> AcrVerdict:
    """Sturm-based decision for one-species networks."""
    if net.n_species != 1:
        raise ValueError(f"one_species_acr needs exactly 1 species, got {net.n_species}")
    I = steady_state_ideal(net)
    f = I.generators[0]
    sid = SpeciesId(0, net.names[0])
    if f.is_zero():
        return AcrVerdict(sid, Status.NO_ACR, certificate="the ODE is identically zero: every point is steady",
                          method="one_species")
    v = check_condition3(I, 0)
    assert v is not None
    v.method = "one_species"
    return v


# --- zero divisors and candidates -------------------------------------------

def zero_divisor_test(I: Ideal, f: Polynomial) -> ZeroDivisorResult:
    """Is f a zero-divisor modulo I, i.e. is (I : f) strictly larger than I?"""
    if ideal_member(f, I):
        return ZeroDivisorResult(False, True, None, None)
    C = colon(I, f)
    for h in C.generators:
        if not ideal_member(h, I):
            return ZeroDivisorResult(True, False, h, C)
    return ZeroDivisorResult(False, False, None, C)


def is_zero_divisor(I: Ideal, f: Polynomial) -> bool:
    return zero_divisor_test(I, f).is_zero_divisor


def leading_coefficient_in(g: Polynomial, i: int, order: MonomialOrder) -> Polynomial:
    """lc of g viewed in Q[x_i][other variables] under ``order`` (x_i must be last in a lex order)."""
    lm = g.leading_monomial(order)
    hat = tuple(0 if j == i else e for j, e in enumerate(lm))
    terms = {}
    for m, c in g.terms.items():
        if tuple(0 if j == i else e for j, e in enumerate(m)) == hat:
            mm = [0] * g.nvars
            mm[i] = m[i]
            terms[tuple(mm)] = c
    return Polynomial(terms, g.nvars)


def acr_candidates(I: Ideal, species: Optional[Sequence[int]] = None) -> List[Candidate]:
    """Candidate (species, value) pairs from lex bases with x_i last.

    Positive roots of the elimination element when it exists, otherwise
    positive roots of the leading coefficients in Q[x_i]. Irrational
    roots are reported as isolating intervals.
    """
    out: List[Candidate] = []
    n = I.nvars
    for i in (range(n) if species is None else species):
        sid = _sid(I, i)
        order = lex(n, [j for j in range(n) if j != i] + [i])
        gb = I.groebner(order)
        if gb.is_unit():
            continue
        seen: List[Value] = []

        def emit(vals, source):
            for v in vals:
                if v not in seen:
                    seen.append(v)
                    out.append(Candidate(sid, v, source))

        uni = [g for g in gb.elements if set(g.variables()) <= {i}]
        if uni:
            h = uni[0]
            emit(_positive_roots(h, I, i), f"elimination element {_fmt(h, I)}")
        else:
            for g in gb.elements:
                lc = leading_coefficient_in(g, i, order)
                if lc.is_constant():
                    continue
                emit(_positive_roots(lc, I, i), f"leading coefficient {_fmt(lc, I)} of {_fmt(g, I)}")
    return out


def _strip(p: Polynomial, f: Polynomial) -> Polynomial:
    """Remove the monomial content and every factor f from p."""
    p = p.divide_monomial(p.monomial_content())
    while not p.is_constant():
        q = p.divides_exactly(f)
        if q is None:
            break
        p = q
    return p


def factor_polynomial(p: Polynomial) -> List[Tuple[Polynomial, int]]:
    """Irreducible factors over Q (constant dropped), via sympy."""
    import sympy

    if p.is_constant():
        return []
    gens = sympy.symbols(f"v0:{p.nvars}")
    sp = sympy.Poly.from_dict({m: sympy.Rational(int(c.numerator), int(c.denominator)) for m, c in p.terms.items()},
                              *gens, domain="QQ")
    _, facs = sp.factor_list()
    out = []
    for fp, mult in facs:
        terms = {}
        for m, c in fp.as_dict().items():
            c = sympy.Rational(c)
            terms[tuple(int(e) for e in m)] = Fraction(int(c.p), int(c.q))
        out.append((Polynomial(terms, p.nvars), int(mult)))
    return out


def verify_candidate(I: Ideal, i: int, alpha) -> Optional[AcrVerdict]:
    """Certify a rational candidate through membership or a sign-definite cofactor.

    Returns ZERO_DIVISOR_ACR when certified, CANDIDATE when x_i - alpha is a
    zero-divisor without a positivity certificate, and None when x_i - alpha
    is neither in I nor a zero-divisor.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("candidate value must be positive")
    sid = _sid(I, i)
    f = _x_minus(I, i, alpha)
    fs = _fmt(f, I)
    zd = zero_divisor_test(I, f)
    if zd.in_ideal:
        return AcrVerdict(sid, Status.ZERO_DIVISOR_ACR, alpha, certificate=f"{fs} is in the ideal",
                          method="membership")
    if not zd.is_zero_divisor:
        return None
    C = zd.colon_ideal
    pool: List[Polynomial] = list(C.generators)
    for g in C.groebner().elements:
        if g not in pool:
            pool.append(g)
    # direct route: h*(x_i - a) in I with h = monomial * f^k * (sign-definite)
    for h in pool:
        r = _strip(h, f)
        if r.is_constant() or sign_definite(r):
            return AcrVerdict(sid, Status.ZERO_DIVISOR_ACR, alpha,
                              certificate=f"({fs})*({_fmt(h, I)}) is in I and {_fmt(r, I)} has no zero in the positive orthant",
                              method="candidate+colon")
    # factor route: saturate by the certified factors of colon generators
    certified: List[Polynomial] = []
    for h in pool:
        try:
            facs = factor_polynomial(h)
        except Exception:  # sympy missing or failed: the route is optional
            facs = []
        for fac, _ in facs:
            if len(fac.terms) == 1 or fac.divides_exactly(f) is not None:
                continue
            if sign_definite(fac):
                monic = fac.monic(grevlex(I.nvars))
                if monic not in certified:
                    certified.append(monic)
    if certified:
        J = positive_saturation(I)
        for q in certified:
            J = saturate(J, q)
            if ideal_member(f, J):
                qs = "*".join(f"({_fmt(q, I)})" for q in certified[: certified.index(q) + 1])
                return AcrVerdict(sid, Status.ZERO_DIVISOR_ACR, alpha,
                                  certificate=f"{fs} is in I:(x_1...x_n*{qs})^inf with sign-definite factors",
                                  method="candidate+saturation")
    return AcrVerdict(sid, Status.CANDIDATE, values=(alpha,),
                      certificate=f"{fs} is a zero-divisor (witness {_fmt(zd.witness, I)}), no positivity certificate",
                      method="candidate")


# --- complex-number ACR -----------------------------------------------------

def cacr(I: Ideal, i: int) -> CacrVerdict:
    """Complex-number ACR: radical of (I : m^inf) intersected with Q[x_i]."""
    sid = _sid(I, i)
    S = positive_saturation(I)
    if S.is_unit():
        one = Polynomial.constant(1, I.nvars)
        return CacrVerdict(sid, CacrStatus.VACUOUS_CACR, None, one, "I:m^inf = <1>")
    g = _elim(S, i)
    if g is None:
        return CacrVerdict(sid, CacrStatus.NO_CACR, None, Polynomial.zero(I.nvars), "elimination ideal is zero")
    sq = squarefree_part(g)
    d = sq.total_degree()
    if d == 0:
        return CacrVerdict(sid, CacrStatus.VACUOUS_CACR, None, sq)
    if d == 1:
        _, co = univariate_data(sq)
        val = to_fraction(-co[0] / co[1])
        note = "" if val > 0 else "CACR value is not a positive real: ACR is vacuous"
        return CacrVerdict(sid, CacrStatus.CACR, val, sq, note)
    return CacrVerdict(sid, CacrStatus.NO_CACR, None, sq, f"squarefree generator has degree {d}")


# --- positive restriction and Jacobian minors -------------------------------

def positive_restriction_ideal(I: Ideal) -> PositiveRestrictionIdeal:
    """Generators of I plus x_i z_i^2 - 1 in Q[x, z]."""
    n = I.nvars
    N = 2 * n
    gens = [g.embed(N, list(range(n))) for g in I.generators]
    for i in range(n):
        x = Polynomial.variable(i, N)
        z = Polynomial.variable(n + i, N)
        gens.append(x * z * z - 1)
    names = list(I.names) + [f"z_{nm}" for nm in I.names]
    return PositiveRestrictionIdeal(Ideal(gens, N, names), n)


def jacobian_matrix(gens: Sequence[Polynomial], nvars: int) -> List[List[Polynomial]]:
    return [[g.diff(j) for j in range(nvars)] for g in gens]


def _all_minors(J: List[List[Polynomial]], k: int, nvars: int) -> List[Polynomial]:
    memo: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Polynomial] = {}

    def det(rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Polynomial:
        if not rows:
            return Polynomial.constant(1, nvars)
        key = (rows, cols)
        if key in memo:
            return memo[key]
        r0, rest = rows[0], rows[1:]
        acc = Polynomial.zero(nvars)
        for pos, c in enumerate(cols):
            e = J[r0][c]
            if e.is_zero():
                continue
            sub = det(rest, cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = e * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    out = []
    for rows in itertools.combinations(range(len(J)), k):
        for cols in itertools.combinations(range(nvars), k):
            out.append(det(rows, cols))
    return out


def jacobian_minors(P: Ideal, d: int) -> List[Polynomial]:
    """Nonzero (N-d)x(N-d) minors of the Jacobian of P's generators, deduplicated up to scaling."""
    N = P.nvars
    if not 0 <= d <= N:
        raise ValueError(f"dimension {d} out of range 0..{N}")
    k = N - d
    gens = [g for g in P.generators if not g.is_zero()]
    if k == 0 or k > len(gens):
        return []
    J = jacobian_matrix(gens, N)
    order = grevlex(N)
    seen = set()
    out = []
    for m in _all_minors(J, k, N):
        if m.is_zero():
            continue
        key = m.monic(order)
        if key in seen:
            continue
        seen.add(key)
        out.append(m)
    return out


def jacobian_minor_augment(P: Ideal, d: int) -> Ideal:
    """P together with all (N-d)-minors of its Jacobian (N = number of variables)."""
    return P.with_generators(list(P.generators) + jacobian_minors(P, d))


def split_components(I: Ideal, max_depth: int = 4) -> List[Ideal]:
    """Heuristic splitting along factors of basis elements.

    If some reduced basis element factors as a*b, V(I) is the union of
    V(I + <a>) and V(I + <b>). Components with empty complex variety are
    dropped. This is not a prime decomposition.
    """
    def rec(J: Ideal, depth: int) -> List[Ideal]:
        gb = J.groebner()
        if gb.is_unit():
            return []
        J = J.with_generators(gb.elements)
        if depth >= max_depth:
            return [J]
        for g in gb.elements:
            facs = [f for f, _ in factor_polynomial(g)]
            if len(facs) > 1 or (facs and factor_polynomial(g)[0][1] > 1 and len(facs) == 1 and facs[0] != g.monic(gb.order)):
                out: List[Ideal] = []
                for fac in facs:
                    out.extend(rec(J + [fac], depth + 1))
                return _dedupe(out)
        return [J]

    return rec(I, 0)


def _dedupe(ideals: List[Ideal]) -> List[Ideal]:
    out: List[Ideal] = []
    for J in ideals:
        if not any(J.equals(K) for K in out):
            out.append(J)
    return out


# --- real-zero reduction via PSD quadratics ---------------------------------

def _psd_linear_forms(g: Polynomial) -> Optional[List[Polynomial]]:
    """If g (degree <= 2) is +/- a sum d_j*l_j^2 with d_j > 0, return the l_j.

    Uses exact symmetric Gaussian elimination on the Gram matrix in the
    basis (1, x_1, ..., x_n), which is unique for quadratics.
    """
    if g.total_degree() != 2:
        return None
    n = g.nvars
    for sign in (1, -1):
        Q = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for m, c in g.terms.items():
            c = to_fraction(c) * sign
            idx = [j + 1 for j, e in enumerate(m) for _ in range(e)]
            if len(idx) == 0:
                Q[0][0] += c
            elif len(idx) == 1:
                Q[0][idx[0]] += c / 2
                Q[idx[0]][0] += c / 2
            elif idx[0] == idx[1]:
                Q[idx[0]][idx[0]] += c
            else:
                a, b = idx
                Q[a][b] += c / 2
                Q[b][a] += c / 2
        forms = _ldl_psd(Q)
        if forms is not None:
            out = []
            for row in forms:
                terms = {}
                for k, v in enumerate(row):
                    if v:
                        m = [0] * n
                        if k:
                            m[k - 1] = 1
                        terms[tuple(m)] = v
                out.append(Polynomial(terms, n))
            return out
    return None


def _ldl_psd(Q: List[List[Fraction]]) -> Optional[List[List[Fraction]]]:
    """Rows l_j of an LDL^T factorisation with d_j > 0, or None if Q is not PSD.

    Variables are pivoted before the constant so linear forms stay monic
    in a variable whenever possible.
    """
    size = len(Q)
    A = [row[:] for row in Q]
    forms = []
    remaining = list(range(1, size)) + [0]
    while remaining:
        piv = next((p for p in remaining if A[p][p] != 0), None)
        if piv is None:
            if any(A[a][b] != 0 for a in remaining for b in remaining):
                return None
            break
        d = A[piv][piv]
        if d < 0:
            return None
        row = [Fraction(0)] * size
        for b in remaining:
            row[b] = A[piv][b] / d
        forms.append(row)
        rest = [p for p in remaining if p != piv]
        for a in rest:
            for b in rest:
                A[a][b] -= A[a][piv] * A[piv][b] / d
        for a in rest:
            A[a][piv] = A[piv][a] = Fraction(0)
        remaining = rest
    return forms


def real_linear_consequences(I: Ideal) -> Tuple[List[Polynomial], List[Polynomial]]:
    """Linear forms vanishing on every real zero of I : m^inf.

    Returns (forms, sources) where each source is a PSD (or NSD) quadratic
    basis element. A nonzero constant form means there is no real zero.
    """
    def compute():
        S = positive_saturation(I)
        forms: List[Polynomial] = []
        sources: List[Polynomial] = []
        for g in S.groebner().elements:
            fs = _psd_linear_forms(g)
            if fs:
                sources.append(g)
                forms.extend(fs)
        return forms, sources
    return I.memo("psd_linear", compute)


def check_real_quadratic(I: Ideal, i: int) -> Optional[AcrVerdict]:
    forms, sources = real_linear_consequences(I)
    if not forms:
        return None
    sid = _sid(I, i)
    src = ", ".join(_fmt(s, I) for s in sources)
    if any(f.is_constant() for f in forms):
        return AcrVerdict(sid, Status.VACUOUS,
                          certificate=f"{src} is a positive definite sum of squares: no real zeros", method="real_quadratic")
    S = positive_saturation(I)
    J = I.memo("psd_aug", lambda: S.with_generators(list(S.generators) + forms))
    v = check_condition1(J, i) or check_condition3(J, i)
    if v is None or v.status not in (Status.ACR, Status.VACUOUS):
        return None
    lin = ", ".join(_fmt(f, I) for f in forms)
    v.certificate = (f"{src} = sum of d_j*l_j^2 with d_j > 0 in I:m^inf, so real zeros satisfy {lin}; then "
                     + v.certificate)
    v.method = "real_quadratic"
    return v


# --- vacuity and the full pipeline ------------------------------------------

def vacuity_check(I: Ideal) -> VacuityResult:
    """Sound sufficient tests for the absence of positive steady states."""
    S = positive_saturation(I)
    if S.is_unit():
        return VacuityResult(True, "I:(x_1...x_n)^inf = <1>: no steady state with nonzero coordinates")
    for g in list(I.generators) + list(S.groebner().elements):
        if not g.is_constant() and sign_definite(g):
            return VacuityResult(True, f"{_fmt(g, I)} lies in I:(x_1...x_n)^inf and has no zero in the positive orthant")
    return VacuityResult(False, "")


@dataclass
class AnalyzeOptions:
    methods: Tuple[str, ...] = ("condition1", "condition2", "condition3", "candidates", "cacr", "real_quadratic")
    candidate_width: Fraction = DEFAULT_WIDTH


@dataclass
class AcrReport:
    network_hash: str
    rates: List[Fraction]
    species: List[str]
    verdicts: List[AcrVerdict]
    methods_attempted: Dict[str, List[str]]
    candidates: List[Candidate] = field(default_factory=list)
    vacuity: Optional[VacuityResult] = None
    cacr: Dict[str, CacrVerdict] = field(default_factory=dict)

    def verdict(self, name: str) -> AcrVerdict:
        for v in self.verdicts:
            if v.species.name == name:
                return v
        raise KeyError(name)

    @property
    def conclusive(self) -> bool:
        return any(v.status in (Status.ACR, Status.ZERO_DIVISOR_ACR, Status.VACUOUS, Status.NO_ACR)
                   for v in self.verdicts)

    def to_json(self) -> dict:
        return {
            "network_hash": self.network_hash,
            "rates": [rational_json(QQ(r)) for r in self.rates],
            "verdicts": [v.to_json() for v in self.verdicts],
            "methods_attempted": self.methods_attempted,
            "candidates": [c.to_json() for c in self.candidates],
            "vacuous": bool(self.vacuity and self.vacuity.vacuous),
            "vacuity_certificate": self.vacuity.certificate if self.vacuity else "",
            "cacr": {k: v.to_json(self.species) for k, v in self.cacr.items()},
        }


_CONCLUSIVE = (Status.ACR, Status.ZERO_DIVISOR_ACR, Status.VACUOUS, Status.NO_ACR)


def _upgrade_zero_divisor(I: Ideal, v: AcrVerdict) -> AcrVerdict:
    """Relabel a rational ACR verdict as zero-divisor ACR when x_i - a is in I or a zero-divisor."""
    if v.status != Status.ACR or isinstance(v.value, AlgebraicValue):
        return v
    f = _x_minus(I, v.species.index, v.value)
    zd = zero_divisor_test(I, f)
    if zd.in_ideal:
        v.status = Status.ZERO_DIVISOR_ACR
        v.certificate += f"; {_fmt(f, I)} is in I"
    elif zd.is_zero_divisor:
        v.status = Status.ZERO_DIVISOR_ACR
        v.certificate += f"; {_fmt(f, I)} is a zero-divisor of I (witness {_fmt(zd.witness, I)})"
    return v


def analyze_ideal(I: Ideal, options: Optional[AnalyzeOptions] = None) -> AcrReport:
    """Run the per-species pipeline on a steady-state ideal."""
    options = options or AnalyzeOptions()
    n = I.nvars
    vac = vacuity_check(I)
    verdicts: List[AcrVerdict] = []
    attempted: Dict[str, List[str]] = {}
    # candidates are reported for every species, even ones settled earlier
    all_candidates = acr_candidates(I) if "candidates" in options.methods else []
    cacrs: Dict[str, CacrVerdict] = {}
    for i in range(n):
        sid = _sid(I, i)
        t0 = time.perf_counter()
        tried: List[str] = []
        verdict: Optional[AcrVerdict] = None
        pending: List[Value] = []
        for method in options.methods:
            tried.append(method)
            if method == "condition1":
                verdict = check_condition1(I, i)
            elif method == "condition2":
                verdict = check_condition2(I, i)
            elif method == "condition3":
                verdict = check_condition3(I, i)
            elif method == "candidates":
                for c in (c for c in all_candidates if c.species.index == i):
                    if isinstance(c.value, AlgebraicValue):
                        pending.append(c.value)
                        continue
                    v = verify_candidate(I, i, c.value)
                    if v is None:
                        pending.append(c.value)
                    elif v.status == Status.ZERO_DIVISOR_ACR:
                        verdict = v
                        break
                    else:
                        pending.append(c.value)
            elif method == "cacr":
                cv = cacr(I, i)
                cacrs[sid.name] = cv
                if cv.status == CacrStatus.VACUOUS_CACR:
                    verdict = AcrVerdict(sid, Status.VACUOUS, certificate="vacuous CACR: " + (cv.note or _fmt(cv.generator, I)),
                                         method="cacr")
                elif cv.status == CacrStatus.CACR:
                    if cv.value > 0:
                        verdict = AcrVerdict(sid, Status.ACR, cv.value,
                                             certificate=f"CACR: radical elimination generator {_fmt(cv.generator, I)}",
                                             method="cacr")
                    else:
                        verdict = AcrVerdict(sid, Status.VACUOUS, certificate=f"CACR value {cv.value} is not positive",
                                             method="cacr")
            elif method == "real_quadratic":
                verdict = check_real_quadratic(I, i)
            else:
                raise ValueError(f"unknown method {method!r}")
            if verdict is not None and verdict.status in _CONCLUSIVE:
                break
            verdict = None
        if verdict is None:
            if pending:
                verdict = AcrVerdict(sid, Status.CANDIDATE, values=tuple(pending),
                                     certificate="candidate values not certified", method="candidates")
            else:
                verdict = AcrVerdict(sid, Status.INCONCLUSIVE, certificate="no symbolic criterion applied",
                                     method="symbolic")
        verdict = _upgrade_zero_divisor(I, verdict)
        verdict.elapsed_ms = (time.perf_counter() - t0) * 1000.0
        verdicts.append(verdict)
        attempted[sid.name] = tried
    vac_verdict = next((v for v in verdicts if v.status == Status.VACUOUS), None)
    if vac.vacuous or vac_verdict is not None:
        cert = vac.certificate if vac.vacuous else f"{vac_verdict.species.name}: {vac_verdict.certificate}"
        if not vac.vacuous:
            vac = VacuityResult(True, cert)
        for v in verdicts:
            if v.status != Status.VACUOUS:
                v.status = Status.VACUOUS
                v.value = None
                v.values = ()
                v.certificate = "no positive steady states: " + cert
                v.method = "vacuity"
    return AcrReport("", [], list(I.names), verdicts, attempted, all_candidates, vac, cacrs)


def analyze(net: Network, options: Optional[AnalyzeOptions] = None) -> AcrReport:
    """Per-species ACR verdicts for a network with rational rates."""
    I = steady_state_ideal(net)
    rep = analyze_ideal(I, options)
    rep.network_hash = network_hash(net)
    rep.rates = [r.rate for r in net.reactions]
    return rep
