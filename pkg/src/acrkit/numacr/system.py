"""Polynomial systems compiled for batched complex evaluation.

A system is a list of equations; each equation is a pair (E, c) of an
integer exponent matrix (terms x vars) and a complex coefficient vector.
Evaluation works on a batch of points X with shape (P, n).
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from ..exactalg.polynomial import Polynomial


class NumPoly:
    """Sparse polynomial with complex coefficients."""

    __slots__ = ("E", "c", "nvars")

    def __init__(self, E, c, nvars: int):
        E = np.asarray(E, dtype=np.int64).reshape(-1, nvars)
        c = np.asarray(c, dtype=np.complex128).reshape(-1)
        if len(E) != len(c):
            raise ValueError("exponent/coefficient length mismatch")
        self.E, self.c, self.nvars = _combine(E, c, nvars)

    @classmethod
    def _from_clean(cls, E, c, nvars: int) -> "NumPoly":
        p = cls.__new__(cls)
        p.E, p.c, p.nvars = E, c, nvars
        return p

    @classmethod
    def from_poly(cls, p: Polynomial) -> "NumPoly":
        items = sorted(p.terms.items())
        E = [m for m, _ in items]
        c = [complex(float(v)) for _, v in items]
        return cls(E, c, p.nvars)

    @classmethod
    def zero(cls, nvars: int) -> "NumPoly":
        return cls(np.zeros((0, nvars), dtype=np.int64), [], nvars)

    @classmethod
    def affine(cls, a: Sequence[complex], b: complex) -> "NumPoly":
        """a . x + b"""
        n = len(a)
        E = np.vstack([np.eye(n, dtype=np.int64), np.zeros((1, n), dtype=np.int64)])
        return cls(E, list(a) + [b], n)

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def degree(self) -> int:
        return int(self.E.sum(axis=1).max()) if len(self.c) else 0

    def __add__(self, other: "NumPoly") -> "NumPoly":
        return NumPoly(np.vstack([self.E, other.E]), np.concatenate([self.c, other.c]), self.nvars)

    def scale(self, s: complex) -> "NumPoly":
        return NumPoly(self.E, self.c * s, self.nvars)

    def diff(self, j: int) -> "NumPoly":
        mask = self.E[:, j] > 0
        E = self.E[mask].copy()
        c = self.c[mask] * E[:, j]
        E[:, j] -= 1
        return NumPoly(E, c, self.nvars)

    def __call__(self, x) -> complex:
        x = np.asarray(x, dtype=np.complex128)
        return complex(np.sum(self.c * np.prod(x[None, :] ** self.E, axis=1)))


def _combine(E, c, nvars):
    if len(c) == 0:
        return np.zeros((0, nvars), dtype=np.int64), np.zeros(0, dtype=np.complex128), nvars
    keys, inv = np.unique(E, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    acc = np.zeros(len(keys), dtype=np.complex128)
    np.add.at(acc, inv, c)
    keep = acc != 0
    return keys[keep], acc[keep], nvars


def random_combination(polys: Sequence[NumPoly], rows: int, rng) -> List[NumPoly]:
    """``rows`` random complex linear combinations of ``polys``."""
    A = random_complex(rng, (rows, len(polys)))
    out = []
    for r in range(rows):
        acc = NumPoly.zero(polys[0].nvars)
        for a, p in zip(A[r], polys):
            acc = acc + p.scale(a)
        out.append(acc)
    return out


def random_complex(rng, shape) -> np.ndarray:
    """Standard complex normal entries (deterministic for a seeded Generator)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unit_complex(rng) -> complex:
    th = rng.uniform(0.0, 2.0 * np.pi)
    return complex(np.cos(th), np.sin(th))


class CompiledSystem:
    """Batched evaluation of a list of NumPolys in n variables.

    All equations share one stacked term table; values and Jacobians are
    computed from a power table of the inputs, so no division by zero
    ever occurs for zero coordinates.
    """

    def __init__(self, polys: Sequence[NumPoly]):
        if not polys:
            raise ValueError("empty system")
        n = polys[0].nvars
        for p in polys:
            if p.nvars != n:
                raise ValueError("arity mismatch inside system")
        self.polys = list(polys)
        self.m = len(polys)
        self.n = n
        E = [p.E for p in polys]
        self.E = np.vstack(E) if any(len(e) for e in E) else np.zeros((0, n), dtype=np.int64)
        self.c = np.concatenate([p.c for p in polys]) if self.E.shape[0] else np.zeros(0, dtype=np.complex128)
        self.maxdeg = int(self.E.max()) if self.E.size else 0
        self.degrees = [p.degree() for p in polys]
        self._T = self.E.shape[0]
        self._Em1 = np.maximum(self.E - 1, 0)
        # terms are stacked equation by equation, so each equation is one contiguous run
        counts = [len(p.c) for p in polys]
        self._nonempty = np.array([k for k, c in enumerate(counts) if c], dtype=np.int64)
        self._starts = np.cumsum([0] + counts)[:-1][self._nonempty]

    def _powers(self, X):
        # P[k] = X**k for k = 0..maxdeg; shape (maxdeg+1, B, n)
        B = X.shape[0]
        P = np.empty((self.maxdeg + 1, B, self.n), dtype=np.complex128)
        P[0] = 1.0
        for k in range(1, self.maxdeg + 1):
            P[k] = P[k - 1] * X
        return P

    def _gather(self, P, E):
        # monomial factors: (B, T, n) with entry X[b, j] ** E[t, j]
        cols = np.arange(self.n)[None, :]
        return np.moveaxis(P[E, :, cols], 2, 0) if E.size else np.ones((P.shape[1], 0, self.n), dtype=np.complex128)

    def _reduce(self, terms):
        # terms: (B, T) -> (B, m), summing terms equation by equation in a fixed order
        out = np.zeros((terms.shape[0], self.m), dtype=np.complex128)
        out[:, self._nonempty] = np.add.reduceat(terms, self._starts, axis=1)
        return out

    def evaluate(self, X, coeffs=None) -> np.ndarray:
        """Values at a batch X (B, n); ``coeffs`` (B, T) overrides the term coefficients."""
        X = np.atleast_2d(np.asarray(X, dtype=np.complex128))
        if self._T == 0:
            return np.zeros((X.shape[0], self.m), dtype=np.complex128)
        c = self.c[None, :] if coeffs is None else coeffs
        F = self._gather(self._powers(X), self.E)
        return self._reduce(c * np.prod(F, axis=2))

    def evaluate_with_jacobian(self, X, coeffs=None) -> Tuple[np.ndarray, np.ndarray]:
        X = np.atleast_2d(np.asarray(X, dtype=np.complex128))
        B = X.shape[0]
        if self._T == 0:
            return np.zeros((B, self.m), dtype=np.complex128), np.zeros((B, self.m, self.n), dtype=np.complex128)
        c = self.c[None, :] if coeffs is None else coeffs
        P = self._powers(X)
        F = self._gather(P, self.E)  # (B, T, n)
        ones = np.ones(F.shape[:2] + (1,), dtype=np.complex128)
        # products of the factors strictly before / after each variable
        pre = np.cumprod(np.concatenate([ones, F[:, :, :-1]], axis=2), axis=2)
        suf = np.cumprod(np.concatenate([ones, F[:, :, :0:-1]], axis=2), axis=2)[:, :, ::-1]
        vals = self._reduce(c * pre[:, :, -1] * F[:, :, -1])
        D = (c[:, :, None] * self.E[None, :, :]) * pre * suf * self._gather(P, self._Em1)
        J = np.zeros((B, self.m, self.n), dtype=np.complex128)
        J[:, self._nonempty, :] = np.add.reduceat(D, self._starts, axis=1)
        return vals, J


class AffineParamSystem:
    """F(x; p) = F0(x) + sum_k p_k * Q_k(x), linear in the parameters p.

    Internally one term table covers F0 and every Q_k; the coefficient of
    each term is c0 + sum_k p_k c_k, computed per point so a batch may sit
    at different parameter values.
    """

    def __init__(self, base: Sequence[NumPoly], param_polys: Sequence[Sequence[NumPoly]]):
        m = len(base)
        if any(len(q) != m for q in param_polys):
            raise ValueError("parameter system shape mismatch")
        n = base[0].nvars
        self.m, self.n, self.K = m, n, len(param_polys)
        skeleton = []
        rows = []
        for i in range(m):
            sources = [base[i]] + [q[i] for q in param_polys]
            monos = sorted({tuple(e) for src in sources for e in src.E.tolist()})
            idx = {mono: t for t, mono in enumerate(monos)}
            C = np.zeros((self.K + 1, len(monos)), dtype=np.complex128)
            for k, src in enumerate(sources):
                for e, c in zip(src.E.tolist(), src.c):
                    C[k, idx[tuple(e)]] += c
            # placeholder coefficients keep every monomial in the table
            skeleton.append(NumPoly._from_clean(np.array(monos, dtype=np.int64).reshape(-1, n),
                                                np.ones(len(monos), dtype=np.complex128), n))
            rows.append(C)
        self.table = CompiledSystem(skeleton)
        self.C = np.concatenate(rows, axis=1)  # (K+1, T)
        self.base = base
        self.param_polys = param_polys
        self.degrees = [p.degree() for p in skeleton]

    def coefficients(self, p) -> np.ndarray:
        """Per-point term coefficients for parameter rows p of shape (B, K)."""
        p = np.atleast_2d(np.asarray(p, dtype=np.complex128))
        return self.C[0][None, :] + np.einsum("bk,kt->bt", p, self.C[1:])

    def evaluate_with_jacobian(self, X, p):
        return self.table.evaluate_with_jacobian(X, self.coefficients(p))

    def evaluate(self, X, p):
        return self.table.evaluate(X, self.coefficients(p))

    def param_derivative(self, X, dp):
        """d/dt of F along a parameter velocity dp (B, K): F with coefficients dp . C[1:]."""
        coeffs = np.einsum("bk,kt->bt", np.atleast_2d(dp), self.C[1:])
        return self.table.evaluate(X, coeffs)

    def specialize(self, p: Sequence[complex]) -> CompiledSystem:
        coeffs = self.coefficients(np.asarray(p)[None, :])[0]
        polys = []
        start = 0
        for sk in self.table.polys:
            T = len(sk.c)
            polys.append(NumPoly(sk.E, coeffs[start:start + T], self.n))
            start += T
        return CompiledSystem(polys)


def compile_polys(polys: Sequence[Polynomial]) -> CompiledSystem:
    return CompiledSystem([NumPoly.from_poly(p) for p in polys])


def linear_span_rank(polys: Sequence[Polynomial]) -> Tuple[int, List[int]]:
    """Rank of the Q-span of ``polys`` and indices of an independent subset (exact)."""
    from fractions import Fraction

    monos = sorted({m for p in polys for m in p.terms})
    col = {m: k for k, m in enumerate(monos)}
    rows: List[List[Fraction]] = []
    chosen: List[int] = []
    basis: List[Tuple[int, List[Fraction]]] = []  # (pivot column, row)
    for idx, p in enumerate(polys):
        v = [Fraction(0)] * len(monos)
        for m, c in p.terms.items():
            v[col[m]] = Fraction(int(c.numerator), int(c.denominator))
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        nz = next((k for k, x in enumerate(v) if x), None)
        if nz is not None:
            basis.append((nz, v))
            chosen.append(idx)
    return len(chosen), chosen
