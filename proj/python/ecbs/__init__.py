"""Exponential cubic B-spline collocation for Boussinesq systems."""

from ._core import (
    BasisCoefficients,
    ConfigError,
    ExperimentConfig,
    NodalWeights,
    NumericalError,
    SimulationResult,
    SingularSystem,
    Snapshot,
    SnapshotSummary,
    SolitaryWave,
    SplineShape,
    SweepRow,
    SystemCoefficients,
    SystemPreset,
    SystemVariant,
    TravelingWave,
    WaveValues,
    WeightEvaluation,
    __version__,
    admissible_v0,
    basis_coefficients,
    eval_basis,
    format_table,
    load_config,
    nodal_weights,
    parse_config,
    run_sweep,
    run_table,
    simulate,
    solve_tridiagonal,
    summary_json,
    table_config,
    validate,
    write_outputs,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
