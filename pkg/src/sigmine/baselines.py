"""Comparison methods: permutation-quantile testing and the
distinct-projection union-bound correction.

The permutation variant estimates the delta-quantile of the supremum
deviation over label permutations (conditional semantics: every permuted
vector keeps the observed number of 1-labels) and thresholds observed
qualities at that quantile.  The union-bound variant replaces the resample
estimate with an analytic correction over the number of distinct covers the
language can realize on the data; it draws no random bits at all.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bounds import (
    BoundReport,
    Mode,
    bound_statistic_ub,
    bound_target,
    variance_bracket,
)
from .data import Dataset, LabelVector
from .discovery import Discovery, RunConfig, significant_patterns
from .errors import ConfigError
from .language import count_distinct_projections, projection_bound_log
from .resample import STREAM_PERMUTE, generator
from .search import SearchContext, sup_quality


@dataclass(frozen=True)
class PermutationPlan:
    p: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise ConfigError("permutation count must be >= 1")


@dataclass
class QuantileEstimate:
    """Supremum deviations over all permutations, sorted descending, and the
    delta-quantile: the ceil(delta * p)-th largest (1-based position)."""

    deviations: np.ndarray
    delta_quantile: float
    position: int


def quantile_position(delta: float, p: int) -> int:
    """1-based position ceil(delta * p), nudged so exact products of decimal
    deltas (0.05 * 1000) do not ceil up from float error."""
    return max(1, math.ceil(round(delta * p, 9)))


def estimate_quantile(deviations, delta: float) -> QuantileEstimate:
    """Delta-quantile of a list of supremum deviations: sort descending and
    take the element at 1-based position ceil(delta * len)."""
    order = np.sort(np.asarray(deviations, dtype=np.float64))[::-1]
    pos = quantile_position(delta, len(order))
    return QuantileEstimate(order, float(order[pos - 1]), pos)


def permuted_labels(labels: LabelVector, seed: int, j: int) -> LabelVector:
    """Uniform permutation of the observed labels, keyed on (seed, j)."""
    rng = generator(seed, STREAM_PERMUTE, j)
    return LabelVector(rng.permutation(labels.bits))


def run_wy(
    dataset: Dataset,
    cfg: RunConfig,
    plan: PermutationPlan | None = None,
    ctx: SearchContext | None = None,
) -> tuple[list[Discovery], QuantileEstimate]:
    """Permutation-quantile discovery.

    Permutations preserve the label mean, so deviations are centered at the
    observed mean; the significance threshold is the delta-quantile of the
    permutation supremum distribution.
    """
    plan = plan if plan is not None else PermutationPlan(seed=cfg.seed)
    ctx = ctx if ctx is not None else SearchContext(dataset, cfg.language)
    mu_d = dataset.mean_target()

    def one(j: int) -> float:
        labels = permuted_labels(dataset.target, plan.seed, j)
        return sup_quality(dataset, labels, mu_d, cfg.language, ctx=ctx).supremum

    if cfg.threads > 1 and plan.p > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            devs = list(pool.map(one, range(plan.p)))
    else:
        devs = [one(j) for j in range(plan.p)]
    quantile = estimate_quantile(devs, cfg.delta)

    report = BoundReport(
        mode=Mode.CONDITIONAL,
        delta=cfg.delta,
        m=dataset.m,
        c=plan.p,
        mu_d=mu_d,
        mu_hat=mu_d,
        mu_check=mu_d,
        eps_t=0.0,
        sup_freq=ctx.sup_frequency(),
        epsilon=quantile.delta_quantile,
    )
    return significant_patterns(dataset, report, cfg, ctx=ctx), quantile


def run_ub(
    dataset: Dataset,
    cfg: RunConfig,
    n_hat_source: str = "closed_form",
    ctx: SearchContext | None = None,
) -> tuple[list[Discovery], BoundReport]:
    """Union-bound discovery over distinct projections (no resampling).

    `n_hat_source` picks the correction count: "empirical_projection_count"
    enumerates the language and hashes covers (exact, only viable on small
    languages), "closed_form" uses the analytic ceiling for conjunctions
    over continuous columns; categorical columns count as continuous there,
    since each equality can be converted into an interval on a real-coded
    copy of the column.
    """
    ctx = ctx if ctx is not None else SearchContext(dataset, cfg.language)
    m = dataset.m
    mu_d = dataset.mean_target()
    eps_t = bound_target(Mode.UNCONDITIONAL, mu_d, m, cfg.delta)
    nu_t, nu = variance_bracket(mu_d, eps_t)
    if n_hat_source == "empirical_projection_count":
        n_hat_log = math.log(count_distinct_projections(dataset, cfg.language))
    elif n_hat_source == "closed_form":
        n_hat_log = projection_bound_log(m, dataset.n_features, cfg.language.z)
    else:
        raise ConfigError(f"unknown n_hat_source {n_hat_source!r}")
    r_hat, d_hat, eps = bound_statistic_ub(n_hat_log, nu_t, nu, m, cfg.delta)
    report = BoundReport(
        mode=Mode.UNCONDITIONAL,
        delta=cfg.delta,
        m=m,
        c=0,
        mu_d=mu_d,
        mu_hat=min(1.0, mu_d + eps_t),
        mu_check=max(0.0, mu_d - eps_t),
        eps_t=eps_t,
        sup_freq=ctx.sup_frequency(),
        epsilon=eps,
        nu_t=nu_t,
        nu=nu,
        r_hat=r_hat,
        d_hat=d_hat,
        n_hat_log=n_hat_log,
        n_hat_source=n_hat_source,
    )
    return significant_patterns(dataset, report, cfg, ctx=ctx), report
