"""Mean-field (DNLSE) dynamics, stability analysis, and Husimi ensembles."""
from .dnlse import (ClassicalField, TrajectoryResult, dnlse_rhs, integrate,
                    lyapunov_max, periodic_solution, plane_wave,
                    uniform_field)
from .husimi import (EnsembleRecord, HusimiEnsemble, aligned_site_deviations,
                     condensate_weight, ensemble_evolve,
                     rejection_sample_weights, sample_husimi_bec,
                     width_scaling_exponent)
from .stability import (MonodromyResult, critical_field, monodromy,
                        pairing_defect)

__all__ = [
    "ClassicalField", "TrajectoryResult", "dnlse_rhs", "integrate",
    "lyapunov_max", "periodic_solution", "plane_wave", "uniform_field",
    "EnsembleRecord", "HusimiEnsemble", "aligned_site_deviations",
    "condensate_weight", "ensemble_evolve", "rejection_sample_weights",
    "sample_husimi_bec", "width_scaling_exponent",
    "MonodromyResult", "critical_field", "monodromy", "pairing_defect",
]
