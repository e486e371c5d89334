"""Finite-sample valid inference via composite likelihoods.

Thin Python surface over the C++ core: model construction and sampling,
composite-likelihood evaluation, maximum composite likelihood fits, split /
swap confidence sets and tests, and the Monte Carlo sweep runners.
"""

from ._unicl import (
    CapabilityError,
    DegenerateDataError,
    EstimateResult,
    InvalidWeightSchemeError,
    Model,
    ProvenanceError,
    WeightScheme,
    cl_log_likelihood,
    confidence_set,
    enumerate_divisions,
    enumerate_subsets,
    external_estimate,
    fit,
    icl_log_density,
    make_model,
    run_coverage,
    run_power,
    test_c_zero,
)

__all__ = [
    "CapabilityError",
    "DegenerateDataError",
    "EstimateResult",
    "InvalidWeightSchemeError",
    "Model",
    "ProvenanceError",
    "WeightScheme",
    "cl_log_likelihood",
    "confidence_set",
    "enumerate_divisions",
    "enumerate_subsets",
    "external_estimate",
    "fit",
    "icl_log_density",
    "make_model",
    "run_coverage",
    "run_power",
    "test_c_zero",
]
