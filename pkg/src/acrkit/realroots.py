"""Real root counting and isolation with Sturm sequences.

All arithmetic is exact. Multiplicities are erased: only distinct real
roots are counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .exactalg.coeffs import QQ, ZERO, to_fraction
from .exactalg.polynomial import Polynomial
from .exactalg.univariate import (
    deriv,
    divmod_coeffs,
    evaluate,
    from_coeffs,
    rational_roots_coeffs,
    squarefree_coeffs,
    trim,
    univariate_data,
)


@dataclass(frozen=True)
class SturmSequence:
    """Sturm chain of the squarefree part of a univariate polynomial."""

    polys: Tuple[Polynomial, ...]
    var: int
    coeffs: Tuple[Tuple, ...]

    def sign_changes(self, x) -> int:
        return _changes([_sign(evaluate(c, QQ(x))) for c in self.coeffs])

    def sign_changes_at_infinity(self) -> int:
        return _changes([_sign(c[-1]) for c in self.coeffs])

    def sign_changes_at_neg_infinity(self) -> int:
        return _changes([_sign(c[-1]) * (-1) ** (len(c) - 1) for c in self.coeffs])


@dataclass(frozen=True)
class IsolatingInterval:
    """Interval (lo, hi] holding exactly one root, or an exact root when lo == hi."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = Fraction(x) if not isinstance(x, float) else x
        if self.exact:
            return x == self.lo
        return self.lo < x <= self.hi

    def to_json(self) -> dict:
        return {"lo": _qstr(self.lo), "hi": _qstr(self.hi), "approx": float(self.midpoint())}

    def __str__(self):
        if self.exact:
            return _qstr(self.lo)
        return f"({_qstr(self.lo)}, {_qstr(self.hi)}]"


def _qstr(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _changes(signs: Sequence[int]) -> int:
    prev = 0
    n = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            n += 1
        prev = s
    return n


def _coeffs_of(f: Polynomial):
    if f.is_zero():
        raise ValueError("zero polynomial")
    return univariate_data(f)


def _deflate(a: List) -> List:
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    return a[k:]


def _chain(a: List) -> List[List]:
    p0 = squarefree_coeffs(a)
    chain = [p0]
    if len(p0) == 1:
        return chain
    p1 = deriv(p0)
    chain.append(p1)
    while len(chain[-1]) > 1:
        _, r = divmod_coeffs(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def sturm_sequence(f: Polynomial) -> SturmSequence:
    """Canonical chain (p0, p0', -rem, ...) of the squarefree part p0 of f.

    p0 is scaled to have the same leading coefficient as f, so x^2 - 1
    yields (x^2 - 1, 2x, 1).
    """
    v, a = _coeffs_of(f)
    sq = squarefree_coeffs(a)
    lead = a[-1]
    sq = [c * lead for c in sq]
    chain = [sq]
    if len(sq) > 1:
        chain.append(deriv(sq))
        while len(chain[-1]) > 1:
            _, r = divmod_coeffs(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-c for c in r])
    polys = tuple(from_coeffs(c, v, f.nvars) for c in chain)
    return SturmSequence(polys, v, tuple(tuple(c) for c in chain))


def count_roots_coeffs(a: List, lo=None, hi=None) -> int:
    """Distinct real roots of a in (lo, hi]; None means infinite."""
    chain = _chain(a)
    if lo is None:
        vlo = _changes([_sign(c[-1]) * (-1) ** (len(c) - 1) for c in chain])
    else:
        vlo = _changes([_sign(evaluate(c, QQ(lo))) for c in chain])
    if hi is None:
        vhi = _changes([_sign(c[-1]) for c in chain])
    else:
        vhi = _changes([_sign(evaluate(c, QQ(hi))) for c in chain])
    return vlo - vhi


def count_positive_roots(f: Polynomial) -> int:
    """Number of distinct roots in (0, inf)."""
    _, a = _coeffs_of(f)
    a = _deflate(a)
    if len(a) <= 1:
        return 0
    chain = _chain(a)
    v0 = _changes([_sign(c[0]) for c in chain])
    vinf = _changes([_sign(c[-1]) for c in chain])
    return v0 - vinf


def count_real_roots(f: Polynomial) -> int:
    _, a = _coeffs_of(f)
    if len(trim(a)) <= 1:
        return 0
    return count_roots_coeffs(a)


def cauchy_bound(a: List):
    a = trim(a)
    lead = abs(a[-1])
    return 1 + max(abs(c) for c in a[:-1]) / lead if len(a) > 1 else QQ(1)


def isolate_positive_roots(f: Polynomial, width=Fraction(1, 2 ** 20)) -> List[IsolatingInterval]:
    """Disjoint isolating intervals of width <= ``width`` for the positive roots.

    Rational roots come back as exact points (lo == hi).
    """
    width = QQ(Fraction(width))
    if width <= 0:
        raise ValueError("width must be positive")
    _, a = _coeffs_of(f)
    a = _deflate(a)
    if len(a) <= 1:
        return []
    sq = squarefree_coeffs(a)
    out: List[IsolatingInterval] = []
    rest = list(sq)
    for r in sorted(set(rational_roots_coeffs(sq))):
        if r > 0:
            out.append(IsolatingInterval(to_fraction(r), to_fraction(r)))
        rest, _ = divmod_coeffs(rest, [-r, QQ(1)])
    if len(rest) > 1:
        chain = _chain(rest)

        def V(x):
            return _changes([_sign(evaluate(c, x)) for c in chain])

        lo0, hi0 = ZERO, cauchy_bound(rest)
        # rest has no rational roots, so no bisection point is ever a root
        stack = [(lo0, hi0, V(lo0), V(hi0))]
        while stack:
            lo, hi, vlo, vhi = stack.pop()
            cnt = vlo - vhi
            if cnt == 0:
                continue
            if cnt == 1 and hi - lo <= width:
                out.append(IsolatingInterval(to_fraction(lo), to_fraction(hi)))
                continue
            mid = (lo + hi) / 2
            vm = V(mid)
            stack.append((mid, hi, vm, vhi))
            stack.append((lo, mid, vlo, vm))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out


def isolate_real_roots(f: Polynomial, width=Fraction(1, 2 ** 20)) -> List[IsolatingInterval]:
    """Isolating intervals for all real roots (negative ones via x -> -x)."""
    v, a = _coeffs_of(f)
    out = []
    k = 0
    while k < len(a) and not a[k]:
        k += 1
    if k:
        out.append(IsolatingInterval(Fraction(0), Fraction(0)))
    pos = isolate_positive_roots(f, width)
    neg_coeffs = [c * (-1) ** i for i, c in enumerate(a)]
    neg = isolate_positive_roots(from_coeffs(neg_coeffs, v, f.nvars), width)
    for iv in neg:
        if iv.exact:
            out.append(IsolatingInterval(-iv.lo, -iv.lo))
        else:
            # (lo, hi] for -x becomes [-hi, -lo); endpoints are not roots
            out.append(IsolatingInterval(-iv.hi, -iv.lo))
    out.extend(pos)
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out
