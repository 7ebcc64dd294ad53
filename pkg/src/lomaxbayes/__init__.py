"""Objective Bayesian inference for the two-parameter Lomax distribution.

Closed-form distribution functions, Jeffreys/reference priors, a
data-augmented Metropolis-Hastings-within-Gibbs sampler, convergence
diagnostics, and a Monte Carlo bias/rmse study harness.
"""

from .diagnostics import (
    OutlierScores,
    SummaryStats,
    acceptance_rate,
    gelman_rubin,
    outlier_scores,
    summarize,
)
from .distribution import (
    Dataset,
    LomaxParams,
    hazard,
    log_pdf,
    mean,
    median,
    sample,
    sample_hierarchical,
    survival,
    variance,
)
from .priors import (
    FisherMatrix,
    ImproperPosteriorError,
    PriorKind,
    check_propriety,
    fisher_information,
    fisher_inverse,
    log_likelihood,
    log_posterior,
    log_prior,
    min_sample_size,
)
from .sampler import (
    AugmentedState,
    Chain,
    ChainSet,
    DegenerateDataError,
    McmcConfig,
    log_alpha_conditional,
    mh_step_alpha,
    run_chain,
    run_chains,
    sample_beta,
    sample_lambda,
)
from .simulation import (
    CellStats,
    ReplicateFit,
    SimReport,
    StudyConfig,
    bias,
    fit_replicate,
    rmse,
    run_study,
)

__version__ = "0.1.0"

__all__ = [
    "AugmentedState",
    "CellStats",
    "Chain",
    "ChainSet",
    "Dataset",
    "DegenerateDataError",
    "FisherMatrix",
    "ImproperPosteriorError",
    "LomaxParams",
    "McmcConfig",
    "OutlierScores",
    "PriorKind",
    "ReplicateFit",
    "SimReport",
    "StudyConfig",
    "SummaryStats",
    "acceptance_rate",
    "bias",
    "check_propriety",
    "fisher_information",
    "fisher_inverse",
    "fit_replicate",
    "gelman_rubin",
    "hazard",
    "log_alpha_conditional",
    "log_likelihood",
    "log_pdf",
    "log_posterior",
    "log_prior",
    "mean",
    "median",
    "mh_step_alpha",
    "min_sample_size",
    "outlier_scores",
    "rmse",
    "run_chain",
    "run_chains",
    "run_study",
    "sample",
    "sample_beta",
    "sample_hierarchical",
    "sample_lambda",
    "summarize",
    "survival",
    "variance",
]
