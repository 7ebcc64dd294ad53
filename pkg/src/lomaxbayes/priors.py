"""Objective priors for the Lomax model and the joint log posterior.

Three unnormalized priors on (beta, alpha):

* dependent Jeffreys:    1 / (beta (alpha+1) alpha^(1/2) (alpha+2)^(1/2))
* independent Jeffreys:  1 / (alpha beta)
* reference (beta of interest, alpha nuisance):  1 / (alpha beta)

The independent-Jeffreys and reference priors share one density but are
kept as distinct labels so reports can name whichever was requested.
All log densities pin their additive constant to 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .distribution import Dataset, LomaxParams

__all__ = [
    "PriorKind",
    "FisherMatrix",
    "ImproperPosteriorError",
    "fisher_information",
    "fisher_inverse",
    "log_prior",
    "log_likelihood",
    "log_posterior",
    "min_sample_size",
    "check_propriety",
]


class ImproperPosteriorError(ValueError):
    """The requested prior yields an improper posterior at this sample size."""


class PriorKind(enum.Enum):
    """Selector among the three objective priors."""

    JEFFREYS_DEPENDENT = "jeffreys"
    JEFFREYS_INDEPENDENT = "jeffreys-indep"
    REFERENCE = "reference"


@dataclass(frozen=True)
class FisherMatrix:
    """Symmetric 2x2 information matrix in (beta, alpha) coordinates.

    Entries already include the sample-size factor ``n`` recorded alongside.
    """

    i11: float
    i12: float
    i22: float
    n: int = 1

    @property
    def i21(self) -> float:
        return self.i12

    @property
    def det(self) -> float:
        return self.i11 * self.i22 - self.i12 * self.i12

    def as_array(self) -> np.ndarray:
        return np.array([[self.i11, self.i12], [self.i12, self.i22]])


def fisher_information(p: LomaxParams, n: int = 1) -> FisherMatrix:
    """Fisher information n * [[a/(b^2(a+2)), -1/(b(a+1))], [., 1/a^2]]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    b, a = p.beta, p.alpha
    return FisherMatrix(
        i11=n * a / (b * b * (a + 2.0)),
        i12=-n / (b * (a + 1.0)),
        i22=n / (a * a),
        n=int(n),
    )


def fisher_inverse(p: LomaxParams, n: int = 1) -> FisherMatrix:
    """Closed-form inverse of :func:`fisher_information`.

    (1/n) * [[b^2(a+2)(a+1)^2/a, b a (a+2)(a+1)], [., a^2(a+1)^2]]; the
    product with the information matrix is the identity exactly.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    b, a = p.beta, p.alpha
    return FisherMatrix(
        i11=b * b * (a + 2.0) * (a + 1.0) ** 2 / (a * n),
        i12=b * a * (a + 2.0) * (a + 1.0) / n,
        i22=a * a * (a + 1.0) ** 2 / n,
        n=int(n),
    )


def log_prior(kind: PriorKind, p: LomaxParams) -> float:
    """Unnormalized log prior density, additive constant fixed at 0."""
    b, a = p.beta, p.alpha
    if kind is PriorKind.JEFFREYS_DEPENDENT:
        return (
            -math.log(b)
            - math.log(a + 1.0)
            - 0.5 * math.log(a)
            - 0.5 * math.log(a + 2.0)
        )
    return -math.log(a) - math.log(b)


def min_sample_size(kind: PriorKind) -> int:
    """Smallest n for which the posterior under ``kind`` is proper.

    The 1/(alpha beta) posterior is improper at n=1 and proper for n>1;
    the dependent Jeffreys posterior is proper from n=1 on.
    """
    return 1 if kind is PriorKind.JEFFREYS_DEPENDENT else 2


def check_propriety(kind: PriorKind, n: int) -> None:
    """Raise :class:`ImproperPosteriorError` unless the posterior is proper."""
    need = min_sample_size(kind)
    if n < need:
        raise ImproperPosteriorError(
            f"improper posterior: prior {kind.value!r} requires n >= {need}, got n={n}"
        )


def log_likelihood(p: LomaxParams, d: Dataset) -> float:
    """Lomax log likelihood n log a - n log b - (a+1) sum log(1 + x_i/b)."""
    t = float(np.log1p(d.x / p.beta).sum())
    return d.n * (math.log(p.alpha) - math.log(p.beta)) - (p.alpha + 1.0) * t


def log_posterior(kind: PriorKind, p: LomaxParams, d: Dataset) -> float:
    """Unnormalized joint log posterior: log likelihood plus log prior.

    Fails fast when (kind, n) yields an improper posterior.
    """
    check_propriety(kind, d.n)
    return log_likelihood(p, d) + log_prior(kind, p)
