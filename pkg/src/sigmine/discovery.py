"""End-to-end significant-pattern discovery.

One run wires the stages together: bound the target-mean deviation, bracket
the mean, resample labels at the upper bracket, estimate the average maximum
deviation at the lower bracket, turn it into a significance threshold, then
report every pattern whose observed quality clears the frequency-dependent
cutoff

    quality >= eps + eps_t * frequency.

Everything is deterministic given the seed, and the BoundReport is emitted
even when nothing is significant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import (
    BoundReport,
    Mode,
    bound_statistic_conditional,
    bound_statistic_unconditional,
    bound_target,
    variance_bracket,
    variance_factor,
)
from .data import Dataset
from .errors import ConfigError
from .language import LanguageConfig, Pattern
from .resample import ResamplePlan, estimate_deviation, resample_target
from .search import SearchContext, TopKResult, threshold_mine, top_k


@dataclass
class RunConfig:
    mode: Mode = Mode.CONDITIONAL
    delta: float = 0.05
    c: int = 10
    seed: int = 0
    language: LanguageConfig = field(default_factory=LanguageConfig)
    top_k: int | None = None
    threads: int = 1

    def __post_init__(self):
        if isinstance(self.mode, str):
            self.mode = Mode(self.mode)
        if not 0.0 < self.delta < 1.0:
            raise ConfigError("delta must lie in (0, 1)")
        if self.c < 1:
            raise ConfigError("c must be >= 1")


@dataclass(frozen=True)
class Discovery:
    pattern: Pattern
    quality: float
    frequency: float
    threshold_margin: float


def compute_bounds(
    dataset: Dataset, cfg: RunConfig, ctx: SearchContext | None = None
) -> BoundReport:
    """Run the resampling pipeline and return the full bound report."""
    ctx = ctx if ctx is not None else SearchContext(dataset, cfg.language)
    m = dataset.m
    mu_d = dataset.mean_target()
    eps_t = bound_target(cfg.mode, mu_d, m, cfg.delta)
    # the raw upper bracket mu_d + eps_t can exceed 1; Bernoulli resampling
    # needs p <= 1 and clamping only shifts label mass upward (conservative)
    mu_hat = min(1.0, mu_d + eps_t)
    mu_check = max(0.0, mu_d - eps_t)
    resamples = resample_target(dataset, ResamplePlan(cfg.c, mu_hat, cfg.seed))
    dev = estimate_deviation(
        dataset, resamples, mu_check, cfg.language, ctx=ctx, threads=cfg.threads
    )
    sup_freq = ctx.sup_frequency()
    report = BoundReport(
        mode=cfg.mode,
        delta=cfg.delta,
        m=m,
        c=cfg.c,
        mu_d=mu_d,
        mu_hat=mu_hat,
        mu_check=mu_check,
        eps_t=eps_t,
        sup_freq=sup_freq,
        epsilon=float("nan"),
        d_tilde=dev.d_tilde,
    )
    if cfg.mode is Mode.CONDITIONAL:
        report.omega = variance_factor(mu_d, sup_freq)
        report.epsilon = bound_statistic_conditional(
            dev.d_tilde, report.omega, m, cfg.c, cfg.delta
        )
    else:
        nu_t, nu = variance_bracket(mu_d, eps_t)
        r_hat, d_hat, eps = bound_statistic_unconditional(
            dev.d_tilde, nu_t, nu, m, cfg.c, cfg.delta
        )
        report.nu_t, report.nu = nu_t, nu
        report.r_hat, report.d_hat = r_hat, d_hat
        report.epsilon = eps
    return report


def significant_patterns(
    dataset: Dataset, report: BoundReport, cfg: RunConfig, ctx: SearchContext | None = None
) -> list[Discovery]:
    """All patterns clearing the report's threshold, sorted by quality."""
    ctx = ctx if ctx is not None else SearchContext(dataset, cfg.language)
    mu_d = dataset.mean_target()
    hits = threshold_mine(
        dataset, dataset.target, mu_d, report.epsilon, report.eps_t,
        cfg.language, ctx=ctx,
    )
    out = [
        Discovery(
            pattern=p,
            quality=q.value,
            frequency=q.frequency,
            threshold_margin=q.value - (report.epsilon + report.eps_t * q.frequency),
        )
        for p, q in hits
    ]
    out.sort(key=lambda d: -d.quality)
    return out


def run_discovery(dataset: Dataset, cfg: RunConfig) -> tuple[list[Discovery], BoundReport]:
    """The full pipeline: threshold computation plus the final output scan."""
    ctx = SearchContext(dataset, cfg.language)
    report = compute_bounds(dataset, cfg, ctx=ctx)
    return significant_patterns(dataset, report, cfg, ctx=ctx), report


def flag_top_k(
    dataset: Dataset, cfg: RunConfig
) -> tuple[TopKResult, list[bool], BoundReport]:
    """Mine the top-k patterns by observed quality, then flag each one
    against the run's significance threshold.

    A pattern is flagged iff it would appear in the run's output set, so
    flags agree with `run_discovery` membership for the same config/seed.
    """
    if cfg.top_k is None:
        raise ConfigError("cfg.top_k must be set")
    ctx = SearchContext(dataset, cfg.language)
    report = compute_bounds(dataset, cfg, ctx=ctx)
    mu_d = dataset.mean_target()
    result = top_k(dataset, dataset.target, mu_d, cfg.language, cfg.top_k, ctx=ctx)
    flags = [
        q.value >= report.epsilon + report.eps_t * q.frequency
        for _, q in result.entries
    ]
    return result, flags, report
