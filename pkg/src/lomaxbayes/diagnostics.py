"""Posterior summaries, Gelman-Rubin diagnostic and latent-based outlier scores."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .distribution import Dataset
from .sampler import Chain, ChainSet

__all__ = [
    "SummaryStats",
    "OutlierScores",
    "summarize",
    "gelman_rubin",
    "acceptance_rate",
    "outlier_scores",
]


@dataclass(frozen=True)
class SummaryStats:
    """Mean, SD and equal-tailed 95% credible bounds of a draw vector."""

    mean: float
    sd: float
    ci_low: float
    ci_high: float


def summarize(draws) -> SummaryStats:
    """Sample mean, SD (divisor n-1) and empirical 2.5%/97.5% quantiles."""
    draws = np.asarray(draws, dtype=float).ravel()
    if draws.size < 2:
        raise ValueError("need at least 2 draws to summarize")
    lo, hi = np.quantile(draws, [0.025, 0.975])
    return SummaryStats(
        mean=float(draws.mean()),
        sd=float(draws.std(ddof=1)),
        ci_low=float(lo),
        ci_high=float(hi),
    )


def gelman_rubin(chains, param: str | None = None) -> float:
    """Potential scale reduction factor sqrt((((L-1)/L) W + B/L) / W).

    W is the mean within-chain variance (divisor L-1) and B is L times
    the variance of the chain means (divisor M-1).  ``chains`` is either
    a :class:`ChainSet` (then ``param`` picks "alpha" or "beta") or a
    sequence of equal-length draw vectors.  Values below 1 are possible
    and reported as-is.
    """
    if isinstance(chains, ChainSet):
        if param is None:
            raise ValueError("param is required with a ChainSet")
        mat = chains.parameter_matrix(param)
    else:
        rows = [np.asarray(c, dtype=float).ravel() for c in chains]
        if len({r.size for r in rows}) > 1:
            raise ValueError("chains have unequal lengths")
        mat = np.vstack(rows)
    m, length = mat.shape
    if m < 2:
        raise ValueError("need at least 2 chains")
    if length < 2:
        raise ValueError("need at least 2 draws per chain")
    w = float(mat.var(axis=1, ddof=1).mean())
    b = length * float(mat.mean(axis=1).var(ddof=1))
    return math.sqrt(((length - 1) / length * w + b / length) / w)


def acceptance_rate(chain: Chain) -> float:
    """Accepted fraction of shape proposals over all iterations."""
    if chain.proposed <= 0:
        raise ValueError("chain has no proposals")
    return chain.accepted / chain.proposed


@dataclass(frozen=True)
class OutlierScores:
    """Per-observation latent-mean scores; low score + large x flags an outlier."""

    scores: np.ndarray
    flagged: np.ndarray


def outlier_scores(
    chains: ChainSet,
    d: Dataset,
    *,
    score_percentile: float = 5.0,
    data_percentile: float = 95.0,
) -> OutlierScores:
    """Score observations by the pooled posterior mean of their latent lambda_i.

    A large observation shrinks the Gamma(alpha+1, 1 + x_i/beta) latent
    mean, so candidates sit in the low-score tail.  An observation is
    flagged when its score falls below the ``score_percentile`` of all
    scores and x_i exceeds the ``data_percentile`` of the data.
    """
    scores = chains.lambda_means
    if scores.shape != (d.n,):
        raise ValueError(
            f"latent means have length {scores.shape[0]}, dataset has n={d.n}"
        )
    if d.n < 2:
        flagged = np.zeros(d.n, dtype=bool)
    else:
        score_cut = np.percentile(scores, score_percentile)
        data_cut = np.percentile(d.x, data_percentile)
        flagged = (scores < score_cut) & (d.x > data_cut)
    return OutlierScores(scores=scores, flagged=flagged)
