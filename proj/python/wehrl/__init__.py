"""Wehrl entropies, entropic uncertainty relations and Gaussian phase-space tools."""

from ._core import (
    InadmissibleCovarianceError,
    QuadratureSpec,
    State,
    WehrlError,
    conditional_entropy,
    entropy_report,
    eur_bound,
    eur_report,
    eur_sweep,
    fock,
    fock_mixture,
    gaussian,
    gaussian_summary,
    husimi,
    mixture01,
    mixture_crossover,
    mutual_information,
    noon,
    relative_entropy,
    run_cli,
    squeeze_mode,
    state_from_dict,
    symplectic_eigenvalues,
    thermal,
    tmss,
    tmss_covariance,
    von_neumann,
    wehrl_closed_form,
    wehrl_entropy,
    wehrl_fock_closed,
    wehrl_thermal_closed,
)

__all__ = [name for name in dir() if not name.startswith("_")]
