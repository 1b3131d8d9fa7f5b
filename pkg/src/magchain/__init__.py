"""Spectra of a magnetic chain of rings with delta coupling.

The graph operator is reduced to a zero-diagonal Jacobi operator with
couplings ``2 cos(pi A_j)``; the Jacobi spectrum is pulled back to graph
energies through ``eta``, and a finite-difference model of the graph serves
as an independent check.
"""
from .eta import BranchInterval, branch_intervals, eta, eta_prime, preimage
from .floquet import (BandSet, BracketingError, SpectrumKind, bands_bloch_oracle,
                      bands_nondegenerate, blocks_degenerate, discrete_spectrum,
                      hausdorff_distance, monodromy, profile_spectrum)
from .jacobi import (TruncatedJacobi, apply_sign_gauge, eigenvalues, norm_bound,
                     sign_gauge, truncate)
from .oracle_fd import (assemble_fd, compare_to_prediction, fd_eigenvalues,
                        loop_state_residual, verify)
from .profiles import (CoefficientWindow, Explicit, Linear, PeriodicList, ProfileError,
                       degenerate_flux_check, evaluate_profile, parse_profile)
from .spectrum import (GraphSpectrum, assemble, box_dimension_estimate, butterfly,
                       golden_convergents, measure_sweep, total_measure)

__version__ = "0.1.0"

__all__ = [
    "BandSet", "BracketingError", "BranchInterval", "CoefficientWindow", "Explicit",
    "GraphSpectrum", "Linear", "PeriodicList", "ProfileError", "SpectrumKind",
    "TruncatedJacobi", "apply_sign_gauge", "assemble", "assemble_fd", "bands_bloch_oracle",
    "bands_nondegenerate", "blocks_degenerate", "box_dimension_estimate", "branch_intervals",
    "butterfly", "compare_to_prediction", "degenerate_flux_check", "discrete_spectrum",
    "eigenvalues", "eta", "eta_prime", "evaluate_profile", "fd_eigenvalues",
    "golden_convergents", "hausdorff_distance", "measure_sweep", "monodromy", "norm_bound",
    "parse_profile", "preimage", "profile_spectrum", "loop_state_residual", "sign_gauge",
    "total_measure", "truncate", "verify",
]
