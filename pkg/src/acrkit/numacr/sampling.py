"""Real points via Fritz John critical-point systems, and ACR preclusion."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..exactalg.ideals import Ideal
from ..exactalg.polynomial import Polynomial
from .system import AffineParamSystem, CompiledSystem, NumPoly, linear_span_rank, random_complex, random_unit_complex
from .tracker import OK, ParameterHomotopy, TrackerConfig, dedup_points, solve_total_degree, track_paths

REAL_THRESHOLD = 1e-6


@dataclass
class SamplePoint:
    coordinates: np.ndarray
    residual: float
    max_imag: float = 0.0

    def to_json(self) -> dict:
        return {"coords": [float(v) for v in self.coordinates], "residual": float(self.residual)}


@dataclass
class FritzJohnSystem:
    """Square system in (x, lambda) with parameters p = (w, beta).

    lagrange: f_j + beta_j = 0 for an independent subset f_1..f_k,
              lambda_0 (x - w) + sum_j lambda_j grad f_j = 0,
              a_0 lambda_0 + sum_j a_j lambda_j = 1.
    sos:      g + beta = 0 with g = sum f_j^2,
              lambda_0 (x - w) + lambda_1 grad g = 0, a_0 lambda_0 + a_1 lambda_1 = 1.
    """

    form: str
    n: int
    n_lambda: int
    params: AffineParamSystem
    generators: List[Polynomial]
    chart: Tuple[Fraction, ...]

    @property
    def nvars(self) -> int:
        return self.n + self.n_lambda

    @property
    def n_beta(self) -> int:
        return self.n_lambda - 1

    def parameter(self, w, beta=None) -> np.ndarray:
        beta = np.zeros(self.n_beta) if beta is None else np.asarray(beta)
        return np.concatenate([np.asarray(w, dtype=np.complex128), np.asarray(beta, dtype=np.complex128)])

    def at(self, w, beta=None) -> CompiledSystem:
        return self.params.specialize(self.parameter(w, beta))


def _lift(p: Polynomial, N: int) -> Polynomial:
    return p.embed(N, list(range(p.nvars)))


def fritz_john_system(system: Sequence[Polynomial], w=None, form: str = "lagrange",
                      rng=None) -> FritzJohnSystem:
    """Fritz John critical-point system for the distance from w to V_R(system).

    ``w`` is not baked in: it is a parameter, as is the perturbation beta.
    The homogeneous multipliers are fixed by a random real affine chart.
    """
    gens = [g for g in (system.generators if isinstance(system, Ideal) else system) if not g.is_zero()]
    if not gens:
        raise ValueError("empty system")
    if form not in ("lagrange", "sos"):
        raise ValueError(f"unknown form {form!r}")
    n = gens[0].nvars
    if w is not None and len(w) != n:
        raise ValueError("w has the wrong dimension")
    rng = rng if rng is not None else np.random.default_rng(0)
    if form == "lagrange":
        _, idx = linear_span_rank(gens)
        eqs = [gens[j] for j in idx]
    else:
        g = Polynomial.zero(n)
        for f in gens:
            g = g + f * f
        eqs = [g]
    k = len(eqs)
    L = k + 1
    N = n + L
    lam = [Polynomial.variable(n + j, N) for j in range(L)]
    chart = tuple(Fraction(float(v)).limit_denominator(10 ** 6) for v in rng.uniform(0.5, 1.5, L))
    base: List[Polynomial] = [_lift(f, N) for f in eqs]
    for i in range(n):
        row = lam[0] * Polynomial.variable(i, N)
        for j, f in enumerate(eqs):
            row = row + lam[j + 1] * _lift(f.diff(i), N)
        base.append(row)
    chart_poly = Polynomial.constant(-1, N)
    for a, l in zip(chart, lam):
        chart_poly = chart_poly + l * a
    base.append(chart_poly)
    m = len(base)
    zero = NumPoly.zero(N)
    params: List[List[NumPoly]] = []
    for i in range(n):
        q = [zero] * m
        q[k + i] = NumPoly.from_poly(-lam[0])
        params.append(q)
    one = NumPoly.from_poly(Polynomial.constant(1, N))
    for j in range(k):
        q = [zero] * m
        q[j] = one
        params.append(q)
    aps = AffineParamSystem([NumPoly.from_poly(p) for p in base], params)
    return FritzJohnSystem(form, n, L, aps, gens, chart)


@dataclass
class SamplingResult:
    points: List[SamplePoint]
    rounds: int
    cells: int
    n_paths: int
    stop_reason: str
    elapsed_ms: float = 0.0

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def to_json(self) -> dict:
        return {
            "points": [p.to_json() for p in self.points],
            "rounds": self.rounds,
            "cells": self.cells,
            "n_paths": self.n_paths,
            "stop_reason": self.stop_reason,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _check_box(box, n):
    box = [(float(a), float(b)) for a, b in box]
    if len(box) != n:
        raise ValueError(f"box has {len(box)} intervals, system has {n} variables")
    for a, b in box:
        if not a < b:
            raise ValueError(f"malformed interval [{a}, {b}]")
    return np.array(box)


def sample_real_points(system, box, epsilon: float, delta: float, cfg: TrackerConfig = TrackerConfig(),
                       max_rounds: int = 20, patience: int = 3, form: str = "lagrange",
                       g_tol: float = 1e-6) -> SamplingResult:
    """Sample real points of V_R(system) inside ``box``.

    Each round draws a random w in the box and tracks the Fritz John
    system to beta = 0. The first round solves the perturbed start system
    by a total-degree homotopy; later rounds move those start solutions
    to the new w by a parameter homotopy. Rounds stop once no new grid
    cell of side epsilon/2 has been hit for ``patience`` rounds, or after
    ``max_rounds``. This approximates, without certifying, an
    (epsilon, delta)-sample.
    """
    t0 = time.perf_counter()
    if not 0 <= delta < epsilon:
        raise ValueError("need 0 <= delta < epsilon")
    gens = [g for g in (system.generators if isinstance(system, Ideal) else system) if not g.is_zero()]
    if not gens:
        raise ValueError("empty system")
    n = gens[0].nvars
    B = _check_box(box, n)
    rng = cfg.rng(77)
    fj = fritz_john_system(gens, form=form, rng=rng)
    check = CompiledSystem([NumPoly.from_poly(g) for g in gens])

    w1 = rng.uniform(B[:, 0], B[:, 1])
    beta1 = random_complex(rng, fj.n_beta)
    p1 = fj.parameter(w1, beta1)
    start = solve_total_degree(fj.at(w1, beta1), replace(cfg, seed=int(rng.integers(0, 2 ** 31))))
    starts = np.array([p.coordinates for p in start]) if len(start) else np.zeros((0, fj.nvars), dtype=complex)
    n_paths = start.n_paths

    pts: List[SamplePoint] = []
    cells = set()
    stale = 0
    rounds = 0
    reason = "max_rounds"
    h = epsilon / 2.0
    for r in range(max_rounds):
        rounds += 1
        w = w1 if r == 0 else rng.uniform(B[:, 0], B[:, 1])
        gamma = 1.0 if r == 0 else random_unit_complex(rng)
        new_cells = 0
        if len(starts):
            hom = ParameterHomotopy(fj.params, p1, fj.parameter(w), gamma)
            res = track_paths(hom, starts, cfg)
            n_paths += len(res)
            for pr in res:
                if pr.status != OK:
                    continue
                x = pr.x[:n]
                re = np.max(np.abs(x.real))
                im = np.max(np.abs(x.imag))
                if not im < REAL_THRESHOLD * (1 + re):
                    continue
                xr = x.real
                if np.any(xr < B[:, 0]) or np.any(xr > B[:, 1]):
                    continue
                fx = check.evaluate(xr[None, :].astype(complex))[0]
                g = float(np.sum(np.abs(fx) ** 2))
                if not g < g_tol:
                    continue
                if any(np.max(np.abs(xr - q.coordinates)) < cfg.dedup_tol for q in pts):
                    continue
                pts.append(SamplePoint(xr, g, float(im)))
                cell = tuple(np.floor((xr - B[:, 0]) / h).astype(int))
                if cell not in cells:
                    cells.add(cell)
                    new_cells += 1
        stale = 0 if new_cells else stale + 1
        if stale >= patience:
            reason = f"no new cells for {patience} rounds"
            break
    return SamplingResult(pts, rounds, len(cells), n_paths, reason, (time.perf_counter() - t0) * 1000.0)


@dataclass
class Procedure3Result:
    verdict: str
    sample: SamplingResult
    constant: List[int] = field(default_factory=list)
    names: Optional[Sequence[str]] = None

    @property
    def conclusive(self) -> bool:
        return self.verdict == "No Numerical ACR"

    def to_json(self) -> dict:
        names = self.names
        return {
            "verdict": self.verdict,
            "n_points": len(self.sample.points),
            "constant_coordinates": [names[i] if names else i for i in self.constant],
            "sample": self.sample.to_json(),
        }


def procedure3_preclude(system, box, epsilon: float = 0.1, delta: float = 1e-6,
                        cfg: TrackerConfig = TrackerConfig(), max_rounds: int = 20, patience: int = 3,
                        form: str = "lagrange") -> Procedure3Result:
    """'No Numerical ACR' when sampled points in a positive box disagree in every coordinate."""
    box = [(float(a), float(b)) for a, b in box]
    for a, b in box:
        if not 0 < a < b:
            raise ValueError(f"box interval [{a}, {b}] must satisfy 0 < a < b")
    names = system.names if isinstance(system, Ideal) else None
    s = sample_real_points(system, box, epsilon, delta, cfg, max_rounds, patience, form)
    P = [p.coordinates for p in s.points]
    const: List[int] = []
    if len(P) >= 2:
        A = np.array(P)
        for i in range(A.shape[1]):
            if np.max(A[:, i]) - np.min(A[:, i]) < delta:
                const.append(i)
    verdict = "Inconclusive" if len(P) <= 1 or const else "No Numerical ACR"
    return Procedure3Result(verdict, s, const, names)
