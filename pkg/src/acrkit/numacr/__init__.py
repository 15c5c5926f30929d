"""Numerical algebraic geometry: path tracking, witness points and real sampling."""

from .sampling import (
    FritzJohnSystem,
    Procedure3Result,
    SamplePoint,
    SamplingResult,
    fritz_john_system,
    procedure3_preclude,
    sample_real_points,
)
from .system import AffineParamSystem, CompiledSystem, NumPoly, compile_polys, linear_span_rank
from .tracker import (
    ComplexPoint,
    ParameterHomotopy,
    PathResult,
    SolveResult,
    StraightLineHomotopy,
    TrackerConfig,
    batched_solve,
    solve_total_degree,
    total_degree_start,
    track_paths,
)
from .witness import Procedure2Result, WitnessSlice, dimension_range, procedure2_numerical_acr, witness_points

__all__ = [
    "FritzJohnSystem",
    "Procedure3Result",
    "SamplePoint",
    "SamplingResult",
    "fritz_john_system",
    "procedure3_preclude",
    "sample_real_points",
    "AffineParamSystem",
    "CompiledSystem",
    "NumPoly",
    "compile_polys",
    "linear_span_rank",
    "ComplexPoint",
    "ParameterHomotopy",
    "PathResult",
    "SolveResult",
    "StraightLineHomotopy",
    "TrackerConfig",
    "batched_solve",
    "solve_total_degree",
    "total_degree_start",
    "track_paths",
    "Procedure2Result",
    "WitnessSlice",
    "dimension_range",
    "procedure2_numerical_acr",
    "witness_points",
]
