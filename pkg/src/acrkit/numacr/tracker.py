"""Predictor-corrector path tracking and the total-degree solver.

Paths are tracked in batches: every array carries one row per path and
each path keeps its own t and step size. Linear systems are solved with
a batched Gaussian elimination written in numpy (no BLAS), so a path's
result is independent of how paths are grouped or threaded.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .system import AffineParamSystem, CompiledSystem, NumPoly, random_unit_complex

OK, DIVERGED, MIN_STEP, MAX_STEPS, RESIDUAL = "ok", "diverged", "min_step", "max_steps", "residual"


@dataclass(frozen=True)
class TrackerConfig:
    initial_step: float = 0.02
    min_step: float = 1e-13
    max_step: float = 0.1
    max_newton: int = 3
    corrector_tol: float = 1e-7
    success_tol: float = 1e-8
    divergence: float = 1e8
    max_steps: int = 20000
    polish_iters: int = 12
    endgame_t: float = 1e-9
    trust: float = 0.5
    grow_after: int = 2
    dedup_tol: float = 1e-6
    seed: int = 0
    threads: int = 1
    chunk: int = 64
    gamma: Optional[complex] = None

    def __post_init__(self):
        if not 0 < self.min_step <= self.initial_step <= 1:
            raise ValueError("need 0 < min_step <= initial_step <= 1")
        if self.corrector_tol <= 0 or self.success_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_newton < 1 or self.threads < 1 or self.chunk < 1:
            raise ValueError("max_newton, threads and chunk must be >= 1")

    def rng(self, salt: int = 0):
        return np.random.default_rng([self.seed, salt])


@dataclass
class ComplexPoint:
    coordinates: np.ndarray
    residual: float
    cond: float = float("nan")

    def __post_init__(self):
        self.coordinates = np.asarray(self.coordinates, dtype=np.complex128)
        if not np.all(np.isfinite(self.coordinates)):
            raise ValueError("non-finite coordinates")

    @property
    def max_imag(self) -> float:
        return float(np.max(np.abs(self.coordinates.imag))) if self.coordinates.size else 0.0

    def is_real(self, threshold: float = 1e-6) -> bool:
        re = np.max(np.abs(self.coordinates.real)) if self.coordinates.size else 0.0
        return self.max_imag < threshold * (1.0 + re)

    def real(self) -> np.ndarray:
        return self.coordinates.real.copy()

    def to_json(self) -> dict:
        return {
            "coords": [{"re": float(z.real), "im": float(z.imag)} for z in self.coordinates],
            "residual": float(self.residual),
        }


@dataclass
class PathResult:
    index: int
    x: np.ndarray
    status: str
    t: float
    steps: int
    residual: float


@dataclass
class SolveResult:
    """Deduplicated successful endpoints plus path statistics."""

    points: List[ComplexPoint]
    n_paths: int
    n_failed: int
    paths: List[PathResult] = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __getitem__(self, k):
        return self.points[k]

    def failures(self):
        out = {}
        for p in self.paths:
            if p.status != OK:
                out[p.status] = out.get(p.status, 0) + 1
        return out


# --- linear algebra -----------------------------------------------------------

def batched_solve(A: np.ndarray, b: np.ndarray):
    """Solve A x = b for a stack of square systems by partial pivoting.

    Returns (x, ok) where ok flags systems with a usable pivot sequence.
    """
    A = np.array(A, dtype=np.complex128)
    b = np.array(b, dtype=np.complex128)
    B, n, _ = A.shape
    ok = np.ones(B, dtype=bool)
    rows = np.arange(B)
    scale = np.max(np.abs(A), axis=(1, 2))
    scale[scale == 0] = 1.0
    for k in range(n):
        piv = k + np.argmax(np.abs(A[:, k:, k]), axis=1)
        if np.any(piv != k):
            Ak = A[rows, k].copy()
            A[rows, k] = A[rows, piv]
            A[rows, piv] = Ak
            bk = b[rows, k].copy()
            b[rows, k] = b[rows, piv]
            b[rows, piv] = bk
        d = A[:, k, k]
        bad = np.abs(d) <= 1e-300 + 1e-15 * scale
        ok &= ~bad
        d = np.where(bad, 1.0, d)
        if k + 1 < n:
            f = A[:, k + 1:, k] / d[:, None]
            A[:, k + 1:, k:] -= f[:, :, None] * A[:, k, None, k:]
            b[:, k + 1:] -= f * b[:, k, None]
    x = np.zeros_like(b)
    for k in range(n - 1, -1, -1):
        s = b[:, k] - np.sum(A[:, k, k + 1:] * x[:, k + 1:], axis=1)
        d = A[:, k, k]
        x[:, k] = s / np.where(d == 0, 1.0, d)
    ok &= np.all(np.isfinite(x), axis=1)
    return x, ok


# --- homotopies -----------------------------------------------------------------

class StraightLineHomotopy:
    """H(x, t) = (1 - t) F(x) + t gamma G(x)."""

    def __init__(self, target: CompiledSystem, start: CompiledSystem, gamma: complex):
        if target.m != target.n or start.m != start.n or target.n != start.n:
            raise ValueError("homotopy needs square systems of equal size")
        self.target, self.start, self.gamma = target, start, gamma
        self.n = target.n

    def evaluate(self, X, t):
        F, JF = self.target.evaluate_with_jacobian(X)
        G, JG = self.start.evaluate_with_jacobian(X)
        tt = t[:, None]
        H = (1 - tt) * F + tt * self.gamma * G
        Hx = (1 - tt)[:, :, None] * JF + (tt * self.gamma)[:, :, None] * JG
        Ht = self.gamma * G - F
        return H, Hx, Ht

    def target_system(self):
        return self.target


class ParameterHomotopy:
    """Move the parameters of an AffineParamSystem from p_start (t=1) to p_end (t=0).

    With gamma the path is p(t) = (gamma t p_s + (1-t) p_e) / (gamma t + 1 - t),
    which stays away from the discriminant for generic gamma.
    """

    def __init__(self, system: AffineParamSystem, p_start, p_end, gamma: complex = 1.0):
        if system.m != system.n:
            raise ValueError("parameter homotopy needs a square system")
        self.system = system
        self.ps = np.asarray(p_start, dtype=np.complex128)
        self.pe = np.asarray(p_end, dtype=np.complex128)
        self.gamma = complex(gamma)
        self.n = system.n

    def params(self, t):
        tt = t[:, None]
        g = self.gamma
        D = g * tt + (1 - tt)
        N = g * tt * self.ps[None, :] + (1 - tt) * self.pe[None, :]
        p = N / D
        dN = g * self.ps[None, :] - self.pe[None, :]
        dD = g - 1
        dp = (dN * D - N * dD) / D ** 2
        return p, dp

    def evaluate(self, X, t):
        p, dp = self.params(t)
        H, Hx = self.system.evaluate_with_jacobian(X, p)
        Ht = self.system.param_derivative(X, dp)
        return H, Hx, Ht

    def target_system(self):
        return self.system.specialize(self.pe)


# --- tracking -----------------------------------------------------------------------

def _norm(v):
    return np.max(np.abs(v), axis=-1)


def _track_chunk(hom, X0: np.ndarray, cfg: TrackerConfig):
    B = X0.shape[0]
    x = X0.astype(np.complex128).copy()
    t = np.ones(B)
    h = np.full(B, cfg.initial_step)
    streak = np.zeros(B, dtype=np.int64)
    steps = np.zeros(B, dtype=np.int64)
    status = np.array([""] * B, dtype=object)
    active = np.ones(B, dtype=bool)
    while np.any(active):
        a = np.nonzero(active)[0]
        xa, ta = x[a], t[a]
        dt = np.minimum(h[a], ta)
        t1 = ta - dt
        _, Hx, Ht = hom.evaluate(xa, ta)
        v, ok = batched_solve(Hx, -Ht)
        xp = xa - dt[:, None] * v
        pred = dt * _norm(v)
        conv = np.zeros(len(a), dtype=bool)
        good = ok.copy()
        for it in range(cfg.max_newton):
            H, Hx1, _ = hom.evaluate(xp, t1)
            dx, ok1 = batched_solve(Hx1, -H)
            good &= ok1 & np.all(np.isfinite(dx), axis=1)
            if it == 0:
                # the Euler error is second order in dt: a large first correction signals a jump
                good &= _norm(dx) <= cfg.trust * pred + cfg.corrector_tol * (1 + _norm(xa))
            dx = np.where(good[:, None], dx, 0)
            xp = xp + dx
            conv |= good & (_norm(dx) <= cfg.corrector_tol * (1 + _norm(xp)))
            if np.all(conv | ~good):
                break
        acc = conv & good
        ai, ri = a[acc], a[~acc]
        x[ai] = xp[acc]
        t[ai] = t1[acc]
        steps[a] += 1
        streak[ai] += 1
        grow = ai[streak[ai] >= cfg.grow_after]
        h[grow] = np.minimum(h[grow] * 2, cfg.max_step)
        streak[grow] = 0
        h[ri] *= 0.5
        streak[ri] = 0
        # bookkeeping
        big = a[_norm(x[a]) > cfg.divergence]
        status[big] = DIVERGED
        active[big] = False
        small = ri[h[ri] < cfg.min_step]
        small = small[active[small]]
        # paths stalling right at t=0 are usually singular endpoints: let polishing decide
        status[small] = np.where(t[small] < cfg.endgame_t, OK,
                                 np.where(_norm(x[small]) > np.sqrt(cfg.divergence), DIVERGED, MIN_STEP))
        active[small] = False
        done = ai[t[ai] <= 0]
        done = done[active[done]]
        status[done] = OK
        active[done] = False
        over = a[steps[a] >= cfg.max_steps]
        over = over[active[over]]
        status[over] = MAX_STEPS
        active[over] = False
    return x, t, steps, status


def newton_polish(system: CompiledSystem, X: np.ndarray, iters: int):
    """Newton iterations on a square system; rows whose update fails are left alone."""
    X = X.copy()
    for _ in range(iters):
        F, J = system.evaluate_with_jacobian(X)
        dx, ok = batched_solve(J, -F)
        ok &= np.all(np.isfinite(dx), axis=1)
        if not np.any(ok):
            break
        Xn = X.copy()
        Xn[ok] = X[ok] + dx[ok]
        # keep an update only if it does not increase the residual
        Fn = system.evaluate(Xn)
        better = _norm(Fn) <= _norm(F)
        X[better] = Xn[better]
        if np.all(_norm(dx[ok]) <= 1e-15 * (1 + _norm(X[ok]))):
            break
    return X


def track_paths(hom, start_points, cfg: TrackerConfig = TrackerConfig(), target: Optional[CompiledSystem] = None,
                check_start: bool = True) -> List[PathResult]:
    """Track every start point from t=1 to t=0; failed paths are flagged, not dropped.

    Paths are split into fixed chunks of ``cfg.chunk`` rows and the chunks
    run on ``cfg.threads`` workers; results are merged in start order.
    """
    X0 = np.atleast_2d(np.asarray(start_points, dtype=np.complex128))
    if X0.size == 0:
        return []
    if X0.shape[1] != hom.n:
        raise ValueError("start point dimension mismatch")
    if check_start:
        H0, _, _ = hom.evaluate(X0, np.ones(len(X0)))
        bad = _norm(H0) > 1e-6 * (1 + _norm(X0))
        if np.any(bad):
            raise ValueError(f"start point residual too large at path {int(np.nonzero(bad)[0][0])}")
    target = target or hom.target_system()
    chunks = [X0[k:k + cfg.chunk] for k in range(0, len(X0), cfg.chunk)]

    def work(chunk):
        x, t, steps, status = _track_chunk(hom, chunk, cfg)
        okm = status == OK
        if np.any(okm):
            x[okm] = newton_polish(target, x[okm], cfg.polish_iters)
        res = np.full(len(x), np.inf)
        fin = np.all(np.isfinite(x), axis=1)
        if np.any(fin):
            res[fin] = _norm(target.evaluate(x[fin]))
        return x, t, steps, status, res

    if cfg.threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            outs = list(pool.map(work, chunks))
    else:
        outs = [work(c) for c in chunks]
    results = []
    k = 0
    for x, t, steps, status, res in outs:
        for r in range(len(x)):
            st = status[r]
            if st == OK and not res[r] < cfg.success_tol:
                st = RESIDUAL
            results.append(PathResult(k, x[r], st, float(t[r]), int(steps[r]), float(res[r])))
            k += 1
    return results


def dedup_points(xs: Sequence[np.ndarray], tol: float) -> List[int]:
    """Indices of the first representative of each cluster (inf-norm < tol), in input order."""
    kept: List[int] = []
    for i, x in enumerate(xs):
        if all(np.max(np.abs(x - xs[j])) >= tol for j in kept):
            kept.append(i)
    return kept


def condition_number(system: CompiledSystem, x: np.ndarray) -> float:
    _, J = system.evaluate_with_jacobian(x[None, :])
    s = np.linalg.svd(J[0], compute_uv=False)
    return float(max(s[0], 1.0) / s[-1]) if s[-1] > 0 else float("inf")


def collect(results: Sequence[PathResult], target: CompiledSystem, cfg: TrackerConfig) -> SolveResult:
    good = [r for r in results if r.status == OK]
    keep = dedup_points([r.x for r in good], cfg.dedup_tol)
    pts = []
    for i in keep:
        r = good[i]
        pts.append(ComplexPoint(r.x, r.residual, condition_number(target, r.x)))
    return SolveResult(pts, len(results), sum(r.status != OK for r in results), list(results))


def total_degree_start(degrees: Sequence[int], n: int):
    """Start system x_i^d_i - 1 and its prod(d_i) roots-of-unity solutions in lexicographic order."""
    polys = []
    for i, d in enumerate(degrees):
        E = np.zeros((2, n), dtype=np.int64)
        E[0, i] = d
        polys.append(NumPoly(E, [1.0, -1.0], n))
    roots = [np.exp(2j * np.pi * np.arange(d) / d) for d in degrees]
    pts = np.array([list(c) for c in itertools.product(*roots)], dtype=np.complex128).reshape(-1, n)
    return CompiledSystem(polys), pts


def solve_total_degree(system, cfg: TrackerConfig = TrackerConfig()) -> SolveResult:
    """All isolated solutions of a square system via the total-degree homotopy.

    ``system`` is a CompiledSystem or a list of Polynomials/NumPolys.
    """
    if not isinstance(system, CompiledSystem):
        polys = [p if isinstance(p, NumPoly) else NumPoly.from_poly(p) for p in system]
        if any(p.is_zero() for p in polys):
            raise ValueError("zero polynomial in system")
        system = CompiledSystem(polys)
    if any(p.is_zero() for p in system.polys):
        raise ValueError("zero polynomial in system")
    if system.m != system.n:
        raise ValueError(f"system is not square: {system.m} equations, {system.n} unknowns")
    if any(d == 0 for d in system.degrees):
        return SolveResult([], 0, 0, [])
    start, pts = total_degree_start(system.degrees, system.n)
    gamma = cfg.gamma if cfg.gamma is not None else random_unit_complex(cfg.rng(1))
    hom = StraightLineHomotopy(system, start, gamma)
    results = track_paths(hom, pts, cfg, target=system)
    return collect(results, system, cfg)
