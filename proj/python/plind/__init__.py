"""Pseudo-Lindley distribution toolkit.

Evaluation and sampling of the two-parameter Pseudo-Lindley law,
method-of-moments estimation, the asymptotic covariance of the estimator
pair, Wald tests, and a Monte Carlo simulation harness. All numerics live
in the C++ extension; this package only re-exports them.
"""

from ._plind import (
    ConfidenceIntervals,
    ConfigError,
    CovarianceMatrix,
    DegenerateSampleError,
    DomainError,
    ParamEstimate,
    PlindError,
    SampleSummary,
    SimReport,
    SimRow,
    TestResult,
    cdf,
    confidence_intervals,
    covariance,
    covariance_mc_oracle,
    fit,
    lindley_pdf,
    log_pdf,
    mean,
    pdf,
    quantile,
    raw_moment,
    run_experiment,
    sample,
    summarize,
    survival,
    variance,
    wald_test,
)

__all__ = [
    "ConfidenceIntervals",
    "ConfigError",
    "CovarianceMatrix",
    "DegenerateSampleError",
    "DomainError",
    "ParamEstimate",
    "PlindError",
    "SampleSummary",
    "SimReport",
    "SimRow",
    "TestResult",
    "cdf",
    "confidence_intervals",
    "covariance",
    "covariance_mc_oracle",
    "fit",
    "lindley_pdf",
    "log_pdf",
    "mean",
    "pdf",
    "quantile",
    "raw_moment",
    "run_experiment",
    "sample",
    "summarize",
    "survival",
    "variance",
    "wald_test",
]
