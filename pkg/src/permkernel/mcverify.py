"""Monte Carlo validation of the closed-form Laplace transform of squared
Gaussian vectors and of the conditioning identity.

Sampling exists only for symmetric positive-semidefinite kernels at
exponent 1/2 (the squared-Gaussian case); the checks validate formulas on
that corner, nothing more.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._threads import worker_count
from .errors import DimensionMismatch, NonpositiveDeterminant, NotPSD, NotSymmetric
from .matcore import DEFAULT_TOL, Tolerance, as_matrix, scale_of
from .reductions import conditioning_kernel

# Draws are generated in fixed-size shards with sub-seed = seed + shard
# index, so results depend on (G, count, seed) only, never on worker count.
SHARD_SIZE = 65536


@dataclass(frozen=True)
class SampleBatch:
    """Squared-Gaussian draws: `draws` has shape (count, n), all entries >= 0."""

    n: int
    count: int
    draws: np.ndarray


@dataclass(frozen=True)
class LTEstimate:
    """Monte Carlo estimate of a Laplace-transform value in (0, 1]."""

    point_estimate: float
    std_error: float
    count: int


def _shard_plan(count: int, seed: int) -> list[tuple[int, int]]:
    plan = []
    produced = 0
    index = 0
    while produced < count:
        size = min(SHARD_SIZE, count - produced)
        plan.append((seed + index, size))
        produced += size
        index += 1
    return plan


def sample_squared_gaussian(
    g, count: int, seed: int = 0, tol: Tolerance = DEFAULT_TOL
) -> SampleBatch:
    """Draw `count` squared-Gaussian vectors with covariance G, seeded.

    G must be symmetric PSD at tolerance; eigenvalues in (-zero_tol*scale, 0)
    are clamped to zero so rank-deficient covariances (e.g. the all-ones
    matrix) are accepted. Identical (G, count, seed) give identical draws.
    """
    g = as_matrix(g)
    n = g.shape[0]
    if count < 1:
        raise ValueError("count must be at least 1")
    s = scale_of(g)
    if np.abs(g - g.T).max() > tol.rel_tol * s:
        raise NotSymmetric("covariance is not symmetric at tolerance")
    sym = 0.5 * (g + g.T)
    eigenvalues, vectors = np.linalg.eigh(sym)
    if eigenvalues.min() < -tol.zero_tol * s:
        raise NotPSD(f"covariance has eigenvalue {eigenvalues.min()}")
    root = vectors * np.sqrt(np.clip(eigenvalues, 0.0, None))

    def one_shard(spec: tuple[int, int]) -> np.ndarray:
        sub_seed, size = spec
        z = np.random.default_rng(sub_seed).standard_normal((size, n))
        eta = z @ root.T
        return eta * eta

    plan = _shard_plan(count, seed)
    workers = min(worker_count(), len(plan))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(one_shard, plan))
    else:
        parts = [one_shard(spec) for spec in plan]
    return SampleBatch(n=n, count=count, draws=np.concatenate(parts, axis=0))


def empirical_laplace(batch: SampleBatch, alphas) -> LTEstimate:
    """Sample mean and standard error of exp(-1/2 sum_i alpha_i psi_i)."""
    al = np.asarray(alphas, dtype=float).ravel()
    if al.size != batch.n:
        raise DimensionMismatch(f"alphas has length {al.size}, expected {batch.n}")
    if np.any(al < 0.0):
        raise ValueError("alphas must be nonnegative")
    values = np.exp(-0.5 * batch.draws @ al)
    mean = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(batch.count)) if batch.count > 1 else 0.0
    return LTEstimate(point_estimate=mean, std_error=se, count=batch.count)


def closed_form_laplace(g, alphas, b: float = 0.5) -> float:
    """det(I + diag(alphas) G)^{-b}."""
    g = as_matrix(g)
    al = np.asarray(alphas, dtype=float).ravel()
    if al.size != g.shape[0]:
        raise DimensionMismatch(f"alphas has length {al.size}, expected {g.shape[0]}")
    if np.any(al < 0.0):
        raise ValueError("alphas must be nonnegative")
    if b <= 0.0:
        raise ValueError("exponent b must be strictly positive")
    det = float(np.linalg.det(np.eye(g.shape[0]) + al[:, None] * g))
    if det <= 0.0:
        raise NonpositiveDeterminant(f"det(I + alpha G) = {det} is not positive")
    return det**-b


@dataclass(frozen=True)
class ConditioningCheck:
    """Monte Carlo against closed form for the tilted, pivot-conditioned law."""

    lhs: LTEstimate
    rhs: float


def verify_conditioning(
    g,
    sigma: float,
    alphas,
    count: int = 200_000,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> ConditioningCheck:
    """Compare the exponentially tilted empirical transform with the
    conditioning-kernel closed form at exponent 1/2.

    lhs estimates E[exp(-1/2 sum alpha_j psi_j) exp(-sigma/2 psi_n)] divided
    by E[exp(-sigma/2 psi_n)] (standard error by the delta method for a
    ratio of correlated means); rhs evaluates the closed form on the
    conditioning kernel with pivot n.
    """
    g = as_matrix(g)
    n = g.shape[0]
    if n < 2:
        raise ValueError("conditioning needs dimension at least 2")
    if sigma <= 0.0:
        raise ValueError("sigma must be strictly positive")
    al = np.asarray(alphas, dtype=float).ravel()
    if al.size != n - 1:
        raise DimensionMismatch(f"alphas has length {al.size}, expected {n - 1}")
    if np.any(al < 0.0):
        raise ValueError("alphas must be nonnegative")

    batch = sample_squared_gaussian(g, count, seed, tol)
    psi = batch.draws
    numer = np.exp(-0.5 * (psi[:, :-1] @ al + sigma * psi[:, -1]))
    denom = np.exp(-0.5 * sigma * psi[:, -1])
    mean_num = float(numer.mean())
    mean_den = float(denom.mean())
    ratio = mean_num / mean_den
    if count > 1:
        cov = np.cov(numer, denom, ddof=1)
        var = (
            cov[0, 0] - 2.0 * ratio * cov[0, 1] + ratio * ratio * cov[1, 1]
        ) / (mean_den * mean_den * count)
        se = math.sqrt(max(var, 0.0))
    else:
        se = 0.0
    kernel = conditioning_kernel(g, sigma, n, tol)
    rhs = closed_form_laplace(kernel, al, 0.5)
    return ConditioningCheck(
        lhs=LTEstimate(point_estimate=ratio, std_error=se, count=count),
        rhs=float(rhs),
    )
