"""Spectral biomarker framework: covariance Hamiltonians, perturbation
certificates, prognostic scores, and transfer gating."""

from ._specbio import (
    BulkModel,
    CertificateError,
    InputError,
    NumericalError,
    SpectralModel,
    bbp_detectable,
    cca_modes,
    composite_score,
    disruption_index,
    eigh,
    estimate_bulk,
    fingerprint,
    fit,
    free_energy,
    gaussian_cohort,
    lda_direction,
    llr_oracle,
    mode_scores,
    mp_support,
    partition_function,
    pca_modes,
    principal_angles,
    regime_covariance,
    spiked_ensemble,
    subspace_distance,
    transfer_bound,
    transfer_verdict,
    two_group_demo,
)

__version__ = "0.1.0"

__all__ = [
    "BulkModel",
    "CertificateError",
    "InputError",
    "NumericalError",
    "SpectralModel",
    "bbp_detectable",
    "cca_modes",
    "composite_score",
    "disruption_index",
    "eigh",
    "estimate_bulk",
    "fingerprint",
    "fit",
    "free_energy",
    "gaussian_cohort",
    "lda_direction",
    "llr_oracle",
    "mode_scores",
    "mp_support",
    "partition_function",
    "pca_modes",
    "principal_angles",
    "regime_covariance",
    "spiked_ensemble",
    "subspace_distance",
    "transfer_bound",
    "transfer_verdict",
    "two_group_demo",
]
