"""Discrete NLS standing waves: solvers, linearized spectra and stability checks."""

from ._core import (
    ConfigError,
    SolverError,
    Grid,
    WaveProfile,
    Curve,
    StabilityReport,
    MorseIndices,
    solve_homogeneous,
    solve_normalized,
    newton_refine,
    to_profile,
    profile_residual,
    continue_family,
    stability_verdict,
    linearized_spectrum,
    morse_indices,
    vk_inner,
    heat_kernel,
    apply_heat_semigroup,
    symmetric_decreasing_rearrangement,
    balanced_rearrangement,
    edge_energy,
    run_checks,
    suite_names,
)

__all__ = [name for name in dir() if not name.startswith("_")]
