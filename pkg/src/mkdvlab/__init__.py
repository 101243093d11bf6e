"""Pseudo-spectral laboratory for the complex modified KdV family on the torus.

Simulates the three renormalization stages of the equation, converts between
them through explicit gauge transformations, measures Fourier-Lebesgue and
windowed space-time norms, decomposes the nonlinearity into resonant and
nonresonant parts, and drives scripted experiments around conservation,
ill-posedness, and momentum divergence.
"""

from ._version import __version__
from .dynamics import (
    VARIANTS,
    EquationSpec,
    NonlinearityParts,
    Trajectory,
    decompose_nonlinearity,
    j1_multiplier_sum,
    lambda_membership,
    linear_propagator,
    nonlinearity,
    phase_schedule,
    phi_resonance,
    residual_check,
    solve,
    stability_dt_limit,
    step,
    to_interaction_frame,
)
from .errors import (
    AliasingError,
    ConfigError,
    GaugeMismatchError,
    SolverAbort,
    StabilityWarning,
)
from .experiments import (
    EXPERIMENTS,
    ExperimentReport,
    Series,
    VerdictRecord,
    parallel_map,
    resolve_config,
    run_experiment,
    thread_workers,
    write_report,
)
from .gauges import GaugeSpec, apply_gauge1, apply_gauge2, invert_gauge, last_gauge
from .norms import (
    MomentumSeries,
    NormSpec,
    fl_norm,
    japanese_bracket,
    mass,
    momentum,
    momentum_limit_diagnostic,
    raised_cosine,
    truncated_momentum,
    xsb_norm,
)
from .presets import PRESET_NAMES, parse_preset, preset_state
from .spectral import (
    FourierState,
    GridFunction,
    analysis,
    conjugate_state,
    dealiased_triple_product,
    derivative,
    padded_grid_size,
    project_band,
    project_high,
    project_low,
    state_from_modes,
    synthesis,
    to_fourier,
    to_physical,
    zero_state,
)

__all__ = [
    "__version__",
    "VARIANTS",
    "EquationSpec",
    "NonlinearityParts",
    "Trajectory",
    "decompose_nonlinearity",
    "j1_multiplier_sum",
    "lambda_membership",
    "linear_propagator",
    "nonlinearity",
    "phase_schedule",
    "phi_resonance",
    "residual_check",
    "solve",
    "stability_dt_limit",
    "step",
    "to_interaction_frame",
    "AliasingError",
    "ConfigError",
    "GaugeMismatchError",
    "SolverAbort",
    "StabilityWarning",
    "EXPERIMENTS",
    "ExperimentReport",
    "Series",
    "VerdictRecord",
    "parallel_map",
    "resolve_config",
    "run_experiment",
    "thread_workers",
    "write_report",
    "GaugeSpec",
    "apply_gauge1",
    "apply_gauge2",
    "invert_gauge",
    "last_gauge",
    "MomentumSeries",
    "NormSpec",
    "fl_norm",
    "japanese_bracket",
    "mass",
    "momentum",
    "momentum_limit_diagnostic",
    "raised_cosine",
    "truncated_momentum",
    "xsb_norm",
    "PRESET_NAMES",
    "parse_preset",
    "preset_state",
    "FourierState",
    "GridFunction",
    "analysis",
    "conjugate_state",
    "dealiased_triple_product",
    "derivative",
    "padded_grid_size",
    "project_band",
    "project_high",
    "project_low",
    "state_from_modes",
    "synthesis",
    "to_fourier",
    "to_physical",
    "zero_state",
]
