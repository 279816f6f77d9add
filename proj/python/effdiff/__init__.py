"""Effective diffusivities of layered and randomly oriented anisotropic media.

Thin python surface over the C++ core: analytic layered homogenization,
Haar-uniform rotation sampling, the stationary estimation protocol, periodic
cell problems and Monte Carlo campaigns.
"""

from ._core import (
    McStatistics,
    PgmParseFailure,
    PhaseMask,
    RandomStream,
    SolveFailure,
    __version__,
    cell_effective_from_mask,
    estimate_from_mask,
    geometric_mean_reference,
    harmonic_mean_profile,
    layered_effective_tensor,
    monte_carlo,
    read_pgm,
    rotate_tensor,
    rotation_matrix_2d,
    rotation_matrix_3d,
    sample_rotation_2d,
    sample_rotation_3d,
    synth_layered_mask,
    transform_partition,
    transient_comparison_from_mask,
    trial_seed,
    write_pgm,
)

__all__ = [
    "McStatistics",
    "PgmParseFailure",
    "PhaseMask",
    "RandomStream",
    "SolveFailure",
    "__version__",
    "cell_effective_from_mask",
    "estimate_from_mask",
    "geometric_mean_reference",
    "harmonic_mean_profile",
    "layered_effective_tensor",
    "monte_carlo",
    "read_pgm",
    "rotate_tensor",
    "rotation_matrix_2d",
    "rotation_matrix_3d",
    "sample_rotation_2d",
    "sample_rotation_3d",
    "synth_layered_mask",
    "transform_partition",
    "transient_comparison_from_mask",
    "trial_seed",
    "write_pgm",
]
