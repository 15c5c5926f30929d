"""Buchberger's algorithm with the Gebauer-Moeller pair criteria."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .coeffs import ONE, ZERO
from .orders import Monomial, MonomialOrder, grevlex
from .polynomial import Polynomial, _mono_div, _mono_divides, _mono_lcm, _mono_mul


@dataclass(frozen=True)
class GroebnerBasis:
    """A Groebner basis tagged with its order.

    Reduced bases are monic, inter-reduced and listed in increasing order
    of leading monomial.
    """

    order: MonomialOrder
    elements: Tuple[Polynomial, ...]
    reduced: bool = True
    nvars: int = field(default=0)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant() and not self.elements[0].is_zero()

    def is_zero_ideal(self) -> bool:
        return not self.elements

    def leading_monomials(self) -> List[Monomial]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def to_strs(self, names=None) -> List[str]:
        return [g.to_str(names, self.order) for g in self.elements]


class _Elem:
    __slots__ = ("lm", "terms", "tail", "sugar", "deg")

    def __init__(self, terms: Dict[Monomial, object], lm: Monomial, sugar: int):
        self.terms = terms
        self.lm = lm
        self.tail = [(m, c) for m, c in terms.items() if m != lm]
        self.sugar = sugar
        self.deg = sum(lm)


class _Reducer:
    """Holds the per-run key cache used by the heap-based division."""

    def __init__(self, order: MonomialOrder):
        self.key = order.key
        self._neg: Dict[Monomial, tuple] = {}

    def negkey(self, m: Monomial) -> tuple:
        k = self._neg.get(m)
        if k is None:
            k = tuple(-v for v in self.key(m))
            self._neg[m] = k
        return k

    def lead(self, terms: Dict[Monomial, object]) -> Monomial:
        nk = self.negkey
        return min(terms, key=nk)

    def reduce(self, p: Dict[Monomial, object], basis: Sequence[_Elem], full: bool = True,
               skip: Optional[_Elem] = None) -> Dict[Monomial, object]:
        """Normal form of p (a term dict) with respect to monic elements ``basis``."""
        if not p:
            return {}
        p = dict(p)
        nk = self.negkey
        heap = [(nk(m), m) for m in p]
        heapq.heapify(heap)
        rem: Dict[Monomial, object] = {}
        push = heapq.heappush
        pop = heapq.heappop
        while heap:
            _, m = pop(heap)
            c = p.get(m)
            if c is None:
                continue
            div = None
            for g in basis:
                if g is not skip and _mono_divides(g.lm, m):
                    div = g
                    break
            if div is None:
                if not full:
                    return p
                rem[m] = c
                del p[m]
                continue
            del p[m]
            t = _mono_div(m, div.lm)
            for mg, cg in div.tail:
                mm = _mono_mul(mg, t)
                old = p.get(mm)
                if old is None:
                    p[mm] = -c * cg
                    push(heap, (nk(mm), mm))
                else:
                    v = old - c * cg
                    if v:
                        p[mm] = v
                    else:
                        del p[mm]
        return rem


def _monic(terms: Dict[Monomial, object], lm: Monomial) -> Dict[Monomial, object]:
    lc = terms[lm]
    if lc == ONE:
        return terms
    inv = ONE / lc
    return {m: c * inv for m, c in terms.items()}


def buchberger(polys: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
               tail_reduce: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``polys``.

    Pairs are chosen by the sugar strategy with ties broken by the normal
    strategy (smallest lcm), then by index, so output is deterministic.
    """
    polys = [p for p in polys if not p.is_zero()]
    nvars = polys[0].nvars if polys else (order.nvars if order else 0)
    if order is None:
        order = grevlex(nvars)
    for p in polys:
        if p.nvars != order.nvars:
            raise ValueError(f"arity mismatch: polynomial has {p.nvars} variables, order {order.nvars}")
    if not polys:
        return GroebnerBasis(order, (), True, nvars)
    if any(p.is_constant() for p in polys):
        return GroebnerBasis(order, (Polynomial.constant(1, nvars),), True, nvars)

    red = _Reducer(order)
    key = order.key
    elems: List[_Elem] = []
    active: List[int] = []
    pairs: List[Tuple[int, tuple, int, int, Monomial]] = []  # (sugar, lcmkey, i, j, lcm)

    def update(hidx: int):
        nonlocal pairs
        h = elems[hidx]
        cand = []
        for gi in active:
            g = elems[gi]
            lcm = _mono_lcm(h.lm, g.lm)
            coprime = sum(lcm) == h.deg + g.deg
            cand.append((gi, lcm, coprime))
        # criterion M/F: drop (h,g1) if some other lcm(h,g2) properly divides it
        kept = []
        for a, (gi, lcm, coprime) in enumerate(cand):
            if coprime:
                kept.append((gi, lcm, coprime))
                continue
            dominated = False
            for b, (gj, lcm2, _) in enumerate(cand):
                if b == a:
                    continue
                if _mono_divides(lcm2, lcm) and (lcm2 != lcm or b < a):
                    dominated = True
                    break
            if not dominated:
                kept.append((gi, lcm, coprime))
        # criterion B on old pairs
        hlm = h.lm
        newpairs = []
        for entry in pairs:
            _, _, i, j, lcm = entry
            if _mono_divides(hlm, lcm):
                l1 = _mono_lcm(elems[i].lm, hlm)
                l2 = _mono_lcm(elems[j].lm, hlm)
                if l1 != lcm and l2 != lcm:
                    continue
            newpairs.append(entry)
        for gi, lcm, coprime in kept:
            if coprime:
                continue  # product criterion
            g = elems[gi]
            dl = sum(lcm)
            sugar = max(h.sugar + dl - h.deg, g.sugar + dl - g.deg)
            newpairs.append((sugar, key(lcm), gi, hidx, lcm))
        pairs = newpairs
        active[:] = [gi for gi in active if not _mono_divides(hlm, elems[gi].lm)]
        active.append(hidx)

    def add(terms: Dict[Monomial, object], sugar: int) -> bool:
        lm = red.lead(terms)
        terms = _monic(terms, lm)
        elems.append(_Elem(terms, lm, sugar))
        update(len(elems) - 1)
        return not any(lm)

    basis_view = lambda: [elems[i] for i in active]  # noqa: E731

    for p in polys:
        h = red.reduce(p.terms, basis_view(), full=tail_reduce)
        if h:
            if add(h, p.total_degree()):
                return GroebnerBasis(order, (Polynomial.constant(1, nvars),), True, nvars)

    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pairs[k][0], pairs[k][1], pairs[k][2], pairs[k][3]))
        sugar, _, i, j, lcm = pairs.pop(best)
        gi, gj = elems[i], elems[j]
        ti = _mono_div(lcm, gi.lm)
        tj = _mono_div(lcm, gj.lm)
        s: Dict[Monomial, object] = {}
        for m, c in gi.tail:
            s[_mono_mul(m, ti)] = c
        for m, c in gj.tail:
            mm = _mono_mul(m, tj)
            v = s.get(mm, ZERO) - c
            if v:
                s[mm] = v
            else:
                s.pop(mm, None)
        h = red.reduce(s, basis_view(), full=tail_reduce)
        if h:
            if add(h, sugar):
                return GroebnerBasis(order, (Polynomial.constant(1, nvars),), True, nvars)

    return GroebnerBasis(order, tuple(_interreduce([elems[i] for i in active], red, key, nvars)), True, nvars)


def _interreduce(basis: List[_Elem], red: _Reducer, key, nvars: int) -> List[Polynomial]:
    basis = sorted(basis, key=lambda e: key(e.lm))
    out: List[_Elem] = list(basis)
    for k in range(len(out)):
        e = out[k]
        tail = dict(e.tail)
        r = red.reduce(tail, out, full=True, skip=e)
        terms = dict(r)
        terms[e.lm] = ONE
        out[k] = _Elem(terms, e.lm, e.sugar)
    return [Polynomial._raw(dict(e.terms), nvars) for e in out]


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by G (fully reduced)."""
    if f.nvars != G.order.nvars:
        raise ValueError(f"arity mismatch: {f.nvars} vs {G.order.nvars}")
    red = _Reducer(G.order)
    basis = []
    for g in G.elements:
        lm = g.leading_monomial(G.order)
        basis.append(_Elem(_monic(dict(g.terms), lm), lm, 0))
    return Polynomial._raw(red.reduce(f.terms, basis, full=True), f.nvars)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = _mono_lcm(lf, lg)
    a = f.mul_term(_mono_div(lcm, lf), 1 / f.terms[lf])
    b = g.mul_term(_mono_div(lcm, lg), 1 / g.terms[lg])
    return a - b
