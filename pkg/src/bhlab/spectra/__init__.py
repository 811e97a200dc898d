"""Eigendecomposition, unfolding, spacing statistics, RMT and overlaps."""
from .eigen import DENSE_LIMIT, Spectrum, eigh
from .overlaps import (BreitWignerFit, OverlapMatrix, averaged_profile,
                       breit_wigner, breit_wigner_fit, central_window,
                       fit_breit_wigner_profile, overlap_matrix,
                       overlap_profile)
from .rmt import (sample_rmt, sample_rmt_matrix, semicircle_density,
                  spacing_ensemble)
from .unfolding import (DensityModel, EmpiricalCDF, SpacingLaw,
                        UnfoldedSpacings, fit_density,
                        integrated_distribution, ks_distance, pool_spacings,
                        reference_cdf, reference_pdf, unfold)

__all__ = [
    "DENSE_LIMIT", "Spectrum", "eigh",
    "BreitWignerFit", "OverlapMatrix", "averaged_profile", "breit_wigner",
    "breit_wigner_fit", "central_window", "fit_breit_wigner_profile",
    "overlap_matrix", "overlap_profile",
    "sample_rmt", "sample_rmt_matrix", "semicircle_density",
    "spacing_ensemble",
    "DensityModel", "EmpiricalCDF", "SpacingLaw", "UnfoldedSpacings",
    "fit_density", "integrated_distribution", "ks_distance", "pool_spacings",
    "reference_cdf", "reference_pdf", "unfold",
]
