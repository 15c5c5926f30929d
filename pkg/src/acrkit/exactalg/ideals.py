"""Ideals and the operations built on Groebner bases."""

from __future__ import annotations

import threading
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .groebner import GroebnerBasis, buchberger, normal_form
from .orders import MonomialOrder, elimination, grevlex
from .polynomial import Polynomial


class Ideal:
    """An ideal of Q[x_1..x_n] given by generators.

    ``names`` is only used for printing. Groebner bases are memoised per
    order behind a lock, so one Ideal may be shared across threads.
    """

    def __init__(self, generators: Iterable[Polynomial], nvars: Optional[int] = None,
                 names: Optional[Sequence[str]] = None):
        gens = list(generators)
        if nvars is None:
            if not gens:
                raise ValueError("nvars is required for an ideal without generators")
            nvars = gens[0].nvars
        for g in gens:
            if g.nvars != nvars:
                raise ValueError(f"generator arity {g.nvars} differs from {nvars}")
        self.generators: Tuple[Polynomial, ...] = tuple(gens)
        self.nvars = nvars
        self.names: Tuple[str, ...] = tuple(names) if names else tuple(f"x{i + 1}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("names length must equal nvars")
        self._gb: Dict[MonomialOrder, GroebnerBasis] = {}
        self._memo: Dict[object, object] = {}
        self._lock = threading.Lock()

    def memo(self, key, compute):
        """Cache a derived object (saturation, elimination ideal, ...) on this ideal."""
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = compute()
        with self._lock:
            return self._memo.setdefault(key, value)

    def groebner(self, order: Optional[MonomialOrder] = None) -> GroebnerBasis:
        order = order or grevlex(self.nvars)
        with self._lock:
            gb = self._gb.get(order)
        if gb is None:
            gb = buchberger(self.generators, order)
            with self._lock:
                self._gb.setdefault(order, gb)
        return gb

    def with_generators(self, gens: Iterable[Polynomial]) -> "Ideal":
        return Ideal(gens, self.nvars, self.names)

    def __add__(self, other) -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return self.with_generators(self.generators + tuple(extra))

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def contains(self, f: Polynomial) -> bool:
        return ideal_member(f, self)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        """Ideal equality by mutual generator membership."""
        return self.contains_ideal(other) and other.contains_ideal(self)

    def reduced_generators(self) -> "Ideal":
        """The same ideal generated by its reduced grevlex basis."""
        return self.with_generators(self.groebner().elements)

    def to_strs(self) -> List[str]:
        return [g.to_str(self.names) for g in self.generators]

    def __repr__(self):
        return "Ideal<" + ", ".join(self.to_strs()) + ">"


def _as_ideal(I) -> Ideal:
    if isinstance(I, Ideal):
        return I
    gens = list(I)
    return Ideal(gens)


def ideal_member(f: Polynomial, I: Ideal) -> bool:
    """True iff f lies in I (normal form against the grevlex basis is zero)."""
    I = _as_ideal(I)
    if f.nvars != I.nvars:
        raise ValueError(f"arity mismatch: {f.nvars} vs {I.nvars}")
    if f.is_zero():
        return True
    return normal_form(f, I.groebner()).is_zero()


def _lift(I: Ideal, extra: int, front: bool = True) -> Tuple[List[Polynomial], int]:
    """Embed generators into a ring with ``extra`` new variables placed first."""
    n = I.nvars
    N = n + extra
    mapping = [j + extra for j in range(n)] if front else list(range(n))
    return [g.embed(N, mapping) for g in I.generators], N


def eliminate(I: Ideal, keep: Iterable[int]) -> Ideal:
    """Generators of I intersected with Q[x_keep], in the original ring."""
    I = _as_ideal(I)
    keep = sorted(set(keep))
    if not keep:
        raise ValueError("keep must be nonempty")
    if any(not 0 <= k < I.nvars for k in keep):
        raise ValueError("keep index out of range")
    drop = [i for i in range(I.nvars) if i not in keep]
    if not drop:
        return I.with_generators(I.groebner().elements)
    order = elimination(I.nvars, drop)
    gb = I.groebner(order)
    dropset = set(drop)
    gens = [g for g in gb.elements if not (set(g.variables()) & dropset)]
    return I.with_generators(gens)


def _eliminate_front(gens: List[Polynomial], N: int, k: int, names) -> List[Polynomial]:
    """GB-based elimination of the first k variables; returns polys in N-k variables."""
    order = elimination(N, list(range(k)))
    gb = buchberger(gens, order)
    keep = list(range(k, N))
    out = []
    for g in gb.elements:
        if not any(v < k for v in g.variables()):
            out.append(g.restrict(keep))
    return out


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f^inf) via one Rabinowitsch variable t and elimination of t."""
    I = _as_ideal(I)
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    if f.nvars != I.nvars:
        raise ValueError("arity mismatch")
    if f.is_constant():
        return I.with_generators(I.groebner().elements)
    gens, N = _lift(I, 1)
    t = Polynomial.variable(0, N)
    fl = f.embed(N, [j + 1 for j in range(I.nvars)])
    gens.append(t * fl - 1)
    return I.with_generators(_eliminate_front(gens, N, 1, I.names))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I intersected with J via the tag-variable method."""
    I = _as_ideal(I)
    J = _as_ideal(J)
    if I.nvars != J.nvars:
        raise ValueError("arity mismatch")
    n = I.nvars
    N = n + 1
    t = Polynomial.variable(0, N)
    mapping = [j + 1 for j in range(n)]
    gens = [t * g.embed(N, mapping) for g in I.generators if not g.is_zero()]
    gens += [(1 - t) * g.embed(N, mapping) for g in J.generators if not g.is_zero()]
    if not gens:
        return I.with_generators([])
    return I.with_generators(_eliminate_front(gens, N, 1, I.names))


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """(I : f) from the intersection of I with <f>, divided by f."""
    I = _as_ideal(I)
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    if f.nvars != I.nvars:
        raise ValueError("arity mismatch")
    inter = intersect(I, I.with_generators([f]))
    quotients = [g.exact_quotient(f) for g in inter.generators]
    return I.with_generators(quotients)


def is_unit_ideal(I: Ideal) -> bool:
    return _as_ideal(I).groebner().is_unit()


def krull_dimension(I: Ideal) -> int:
    """Dimension of V_C(I) from a maximal independent set of the leading-term ideal.

    Returns -1 for the unit ideal.
    """
    I = _as_ideal(I)
    gb = I.groebner()
    if gb.is_unit():
        return -1
    lms = [tuple(i for i, e in enumerate(m) if e) for m in gb.leading_monomials()]
    n = I.nvars
    best = 0

    # a set S is independent when no leading monomial uses only variables in S
    def independent(S: frozenset) -> bool:
        return not any(set(supp) <= S for supp in lms)

    def search(start: int, S: frozenset):
        nonlocal best
        if len(S) + (n - start) <= best:
            return
        best = max(best, len(S))
        for v in range(start, n):
            T = S | {v}
            if independent(T):
                search(v + 1, T)

    search(0, frozenset())
    return best
