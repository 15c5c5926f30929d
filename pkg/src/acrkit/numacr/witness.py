"""Witness points on generic slices and two-slice numerical ACR detection."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..exactalg.ideals import Ideal
from ..exactalg.polynomial import Polynomial
from .system import CompiledSystem, NumPoly, linear_span_rank, random_combination, random_complex
from .tracker import ComplexPoint, TrackerConfig, solve_total_degree

SINGULAR_COND = 1e8

DEVIATION_NOTE = ("no irreducible decomposition: boundary filtering is pointwise (any |x_i| < delta) and "
                  "coordinates are compared over all surviving points of a dimension at once")


@dataclass
class WitnessSlice:
    dimension: int
    slice: List[NumPoly]
    points: List[ComplexPoint]
    seed: int
    n_paths: int = 0
    n_failed: int = 0
    n_singular: int = 0
    n_spurious: int = 0

    def __post_init__(self):
        if len(self.slice) != self.dimension:
            raise ValueError("number of slice forms must equal the dimension")

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "seed": self.seed,
            "n_paths": self.n_paths,
            "n_failed": self.n_failed,
            "n_singular": self.n_singular,
            "points": [p.to_json() for p in self.points],
        }


def _generators(I) -> List[Polynomial]:
    gens = I.generators if isinstance(I, Ideal) else list(I)
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("system has no nonzero generators")
    return gens


def _nvars(I) -> int:
    return I.nvars if isinstance(I, Ideal) else I[0].nvars


def generator_residual(system: CompiledSystem, scales: np.ndarray, x: np.ndarray) -> float:
    """max_i |f_i(x)| / scale_i with scale_i the largest coefficient of f_i."""
    return float(np.max(np.abs(system.evaluate(x[None, :])[0]) / scales))


def dimension_range(I) -> range:
    """Candidate dimensions n - rank .. n - 1 (rank of the Q-span of the generators)."""
    gens = _generators(I)
    n = _nvars(I)
    k, _ = linear_span_rank(gens)
    return range(max(n - k, 0), n)


def witness_points(I, d: int, cfg: TrackerConfig = TrackerConfig(), residual_tol: float = 1e-8) -> WitnessSlice:
    """Generic-slice witness points of the d-dimensional part of V(I).

    The generators are reduced to a linearly independent subset, squared
    to n - d equations by random complex combinations when needed, and cut
    by d random complex affine forms. Endpoints are kept when they satisfy
    the original generators and the square system is nonsingular there.
    """
    n = _nvars(I)
    if not 0 <= d < n:
        raise ValueError(f"dimension {d} out of range 0..{n - 1}")
    gens = _generators(I)
    rng = cfg.rng(1000 + d)
    k, idx = linear_span_rank(gens)
    indep = [NumPoly.from_poly(gens[j]) for j in idx]
    c = n - d
    slice_forms = [NumPoly.affine(a, b) for a, b in zip(random_complex(rng, (d, n)), random_complex(rng, d))]
    if k < c:
        return WitnessSlice(d, slice_forms, [], cfg.seed)
    square = indep if k == c else random_combination(indep, c, rng)
    system = CompiledSystem(square + slice_forms)
    sub = replace(cfg, seed=int(rng.integers(0, 2 ** 31)))
    sol = solve_total_degree(system, sub)
    full = CompiledSystem([NumPoly.from_poly(g) for g in gens])
    scales = np.array([max(abs(p.c)) for p in full.polys])
    pts, singular, spurious = [], 0, 0
    for p in sol:
        if generator_residual(full, scales, p.coordinates) > residual_tol * (1 + np.max(np.abs(p.coordinates))):
            spurious += 1
        elif not p.cond < SINGULAR_COND:
            singular += 1
        else:
            pts.append(p)
    return WitnessSlice(d, slice_forms, pts, cfg.seed, sol.n_paths, sol.n_failed, singular, spurious)


@dataclass
class Procedure2Result:
    verdict: str
    acr_species: List[int]
    values: Dict[int, complex]
    delta: float
    counts: List[Dict[int, int]]
    counts_agree: bool
    slices: List[List[WitnessSlice]] = field(default_factory=list)
    surviving: List[np.ndarray] = field(default_factory=list)
    names: Optional[Sequence[str]] = None
    elapsed_ms: float = 0.0
    note: str = DEVIATION_NOTE

    @property
    def conclusive(self) -> bool:
        return bool(self.acr_species)

    def to_json(self) -> dict:
        names = self.names or [f"x{i + 1}" for i in range(len(self.surviving[0]) if self.surviving else 0)]
        return {
            "verdict": self.verdict,
            "acr_species": [names[i] for i in self.acr_species] if names else self.acr_species,
            "values": {names[i]: {"re": v.real, "im": v.imag} for i, v in self.values.items()},
            "delta": self.delta,
            "counts": [{str(d): c for d, c in run.items()} for run in self.counts],
            "counts_agree": self.counts_agree,
            "n_surviving": len(self.surviving),
            "slices": [[s.to_json() for s in run] for run in self.slices],
            "note": self.note,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def constant_coordinates(points: Sequence[np.ndarray], delta: float) -> List[int]:
    """Coordinates whose values differ pairwise by less than delta over all points."""
    if not points:
        return []
    P = np.array(points)
    out = []
    for i in range(P.shape[1]):
        v = P[:, i]
        if np.max(np.abs(v[:, None] - v[None, :])) < delta:
            out.append(i)
    return out


def procedure2_numerical_acr(I, delta: float = 1e-8, cfg: TrackerConfig = TrackerConfig(),
                             seeds: Optional[Sequence[int]] = None) -> Procedure2Result:
    """Two-slice numerical ACR detection.

    Witness slices are computed at every candidate dimension for two
    independent seeds; points with a coordinate below delta in modulus are
    dropped as boundary points, and a coordinate is reported when all
    remaining points of both runs agree on it within delta.
    """
    t0 = time.perf_counter()
    names = I.names if isinstance(I, Ideal) else None
    seeds = list(seeds) if seeds is not None else [cfg.seed, cfg.seed + 1]
    runs, counts, surv = [], [], []
    for s in seeds:
        c = replace(cfg, seed=s)
        run = [witness_points(I, d, c) for d in dimension_range(I)]
        runs.append(run)
        cnt = {}
        for sl in run:
            kept = [p.coordinates for p in sl.points if np.min(np.abs(p.coordinates)) >= delta]
            if sl.points:
                cnt[sl.dimension] = len(kept)
            surv.extend(kept)
        counts.append(cnt)
    agree = all(c == counts[0] for c in counts)
    elapsed = (time.perf_counter() - t0) * 1000.0
    if not surv:
        return Procedure2Result("Inconclusive (possibly vacuous)", [], {}, delta, counts, agree, runs, surv, names,
                                elapsed)
    const = constant_coordinates(surv, delta)
    values = {i: complex(np.mean([p[i] for p in surv])) for i in const}
    if const:
        label = ", ".join((names[i] if names else f"x{i + 1}") for i in const)
        verdict = f"Numerical ACR in {label} within {delta:g}"
    else:
        verdict = "Inconclusive"
    return Procedure2Result(verdict, const, values, delta, counts, agree, runs, surv, names, elapsed)
