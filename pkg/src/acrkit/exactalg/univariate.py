"""Univariate helpers on dense coefficient lists (lowest degree first)."""

from __future__ import annotations

from math import gcd
from typing import List, Sequence, Tuple

from .coeffs import ONE, QQ, ZERO
from .polynomial import Polynomial

Coeffs = List  # list of exact rationals, index = degree


def univariate_data(f: Polynomial) -> Tuple[int, Coeffs]:
    """Return (variable index, dense coefficients) of a univariate polynomial.

    Constants report variable 0.
    """
    vs = f.variables()
    if len(vs) > 1:
        raise ValueError(f"polynomial is not univariate (uses variables {vs})")
    v = vs[0] if vs else 0
    deg = f.degree_in(v) if not f.is_zero() else -1
    coeffs = [ZERO] * (deg + 1)
    for m, c in f.terms.items():
        coeffs[m[v] if f.nvars else 0] = c
    return v, coeffs


def from_coeffs(coeffs: Sequence, var: int = 0, nvars: int = 1) -> Polynomial:
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            m = [0] * nvars
            m[var] = k
            terms[tuple(m)] = c
    return Polynomial(terms, nvars)


def trim(a: Coeffs) -> Coeffs:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def deriv(a: Coeffs) -> Coeffs:
    return trim([a[k] * k for k in range(1, len(a))])


def divmod_coeffs(a: Coeffs, b: Coeffs) -> Tuple[Coeffs, Coeffs]:
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if len(a) < len(b):
        return [], a
    r = list(a)
    q = [ZERO] * (len(a) - len(b) + 1)
    lb = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lb
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
    return trim(q), trim(r[: len(b) - 1])


def monic(a: Coeffs) -> Coeffs:
    a = trim(a)
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def gcd_coeffs(a: Coeffs, b: Coeffs) -> Coeffs:
    a, b = trim(a), trim(b)
    while b:
        _, r = divmod_coeffs(a, b)
        a, b = b, r
    return monic(a)


def evaluate(a: Coeffs, x):
    acc = ZERO if hasattr(x, "denominator") or isinstance(x, int) else 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree_coeffs(a: Coeffs) -> Coeffs:
    a = trim(a)
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    if len(a) == 1:
        return [ONE]
    g = gcd_coeffs(a, deriv(a))
    q, _ = divmod_coeffs(a, g)
    return monic(q)


def squarefree_part(f: Polynomial) -> Polynomial:
    """f / gcd(f, f'), made monic."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    v, a = univariate_data(f)
    return from_coeffs(squarefree_coeffs(a), v, f.nvars)


def primitive_integer(a: Coeffs) -> List[int]:
    """Scale to coprime integer coefficients with positive leading term."""
    a = trim(a)
    den = 1
    for c in a:
        d = int(c.denominator)
        den = den * d // gcd(den, d)
    ints = [int(c * den) for c in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots_coeffs(a: Coeffs) -> List:
    """All rational roots with multiplicity, sorted ascending."""
    a = trim(a)
    if not a:
        raise ValueError("rational roots of the zero polynomial")
    roots = []
    while len(a) > 1 and not a[0]:
        roots.append(ZERO)
        a = a[1:]
    if len(a) <= 1:
        return sorted(roots)
    ints = primitive_integer(a)
    cands = set()
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            cands.add(QQ(p, q))
            cands.add(QQ(-p, q))
    cur = list(a)
    for r in sorted(cands):
        while len(cur) > 1 and not evaluate(cur, r):
            roots.append(r)
            cur, _ = divmod_coeffs(cur, [-r, ONE])
    return sorted(roots)


def rational_roots(f: Polynomial) -> List:
    """Rational roots (with multiplicity) of a univariate polynomial."""
    if f.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    _, a = univariate_data(f)
    return rational_roots_coeffs(a)
