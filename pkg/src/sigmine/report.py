"""Result serialization and the desk-scale experiment drivers.

TSV and JSON renderings of output records carry identical values; bound
reports append to TSV output as a `# key=value` comment block.  The sweep
driver measures how the threshold reacts to the resample count, the
comparison driver runs all four methods on one dataset with shared search
machinery so timings are comparable.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass

from .baselines import PermutationPlan, run_ub, run_wy
from .bounds import Mode
from .data import Dataset
from .discovery import Discovery, RunConfig, compute_bounds, significant_patterns
from .search import SearchContext


@dataclass(frozen=True)
class OutputRecord:
    rank: int
    pattern: str
    quality: float
    frequency: float
    threshold_margin: float
    significant: bool


TSV_COLUMNS = ("rank", "pattern", "quality", "frequency", "threshold_margin", "significant")


def records_from_discoveries(discoveries: list[Discovery], dataset: Dataset) -> list[OutputRecord]:
    return [
        OutputRecord(
            rank=i + 1,
            pattern=d.pattern.describe(dataset),
            quality=d.quality,
            frequency=d.frequency,
            threshold_margin=d.threshold_margin,
            significant=True,
        )
        for i, d in enumerate(discoveries)
    ]


def records_from_flags(entries, flags, dataset: Dataset, eps: float, eps_t: float) -> list[OutputRecord]:
    out = []
    for i, ((pattern, stat), flag) in enumerate(zip(entries, flags)):
        out.append(
            OutputRecord(
                rank=i + 1,
                pattern=pattern.describe(dataset),
                quality=stat.value,
                frequency=stat.frequency,
                threshold_margin=stat.value - (eps + eps_t * stat.frequency),
                significant=bool(flag),
            )
        )
    return out


def records_tsv(records: list[OutputRecord]) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for r in records:
        lines.append(
            f"{r.rank}\t{r.pattern}\t{r.quality!r}\t{r.frequency!r}"
            f"\t{r.threshold_margin!r}\t{int(r.significant)}"
        )
    return "\n".join(lines)


def records_json(records: list[OutputRecord]) -> list[dict]:
    return [
        {
            "rank": r.rank,
            "pattern": r.pattern,
            "quality": r.quality,
            "frequency": r.frequency,
            "threshold_margin": r.threshold_margin,
            "significant": r.significant,
        }
        for r in records
    ]


def config_hash(cfg: RunConfig) -> str:
    """Stable digest of every semantically meaningful run setting."""
    payload = {
        "mode": cfg.mode.value,
        "delta": cfg.delta,
        "c": cfg.c,
        "seed": cfg.seed,
        "top_k": cfg.top_k,
        "z": cfg.language.z,
        "bins": cfg.language.bins,
        "forms": sorted(f.value for f in cfg.language.forms),
        "language_mode": cfg.language.mode,
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


@dataclass
class SweepResult:
    dataset_id: str
    config_digest: str
    cells: dict[tuple[int, str], tuple[float, float]]  # (c, mode) -> (epsilon, seconds)

    def epsilon(self, c: int, mode: str | Mode = Mode.CONDITIONAL) -> float:
        mode = Mode(mode).value
        return self.cells[(c, mode)][0]


def sweep_c(
    dataset: Dataset,
    cfg: RunConfig,
    c_values: list[int],
    modes: tuple[Mode, ...] = (Mode.CONDITIONAL,),
) -> SweepResult:
    """Threshold and wall time per (c, mode) cell.

    Cells run sequentially over a shared search context; timing covers the
    bound-computation phase only (resampling, the per-resample searches and
    the threshold arithmetic), not ingestion or selector-cover setup.
    Resamples are keyed (seed, j), so growing c extends the same sequence.
    """
    if not c_values:
        raise ValueError("c_values must be non-empty")
    ctx = SearchContext(dataset, cfg.language)
    cells = {}
    for mode in modes:
        for c in c_values:
            cell_cfg = RunConfig(
                mode=mode, delta=cfg.delta, c=c, seed=cfg.seed,
                language=cfg.language, threads=cfg.threads,
            )
            t0 = time.perf_counter()
            report = compute_bounds(dataset, cell_cfg, ctx=ctx)
            cells[(c, mode.value)] = (report.epsilon, time.perf_counter() - t0)
    return SweepResult(dataset.fingerprint(), config_hash(cfg), cells)


@dataclass
class MethodRow:
    method: str
    threshold: float
    outputs: int
    seconds: float


def compare_methods(
    dataset: Dataset,
    cfg: RunConfig,
    permutations: int = 1000,
    n_hat_source: str = "closed_form",
) -> list[MethodRow]:
    """All four methods on one dataset with shared search machinery.

    Per-method timing covers that method's own threshold computation and
    output scan; the shared selector-cover setup is excluded from all rows
    so ratios reflect the methods, not the plumbing.
    """
    ctx = SearchContext(dataset, cfg.language)
    rows = []

    for mode in (Mode.CONDITIONAL, Mode.UNCONDITIONAL):
        run_cfg = RunConfig(
            mode=mode, delta=cfg.delta, c=cfg.c, seed=cfg.seed,
            language=cfg.language, threads=cfg.threads,
        )
        t0 = time.perf_counter()
        report = compute_bounds(dataset, run_cfg, ctx=ctx)
        found = significant_patterns(dataset, report, run_cfg, ctx=ctx)
        rows.append(MethodRow(mode.value, report.epsilon, len(found), time.perf_counter() - t0))

    t0 = time.perf_counter()
    wy_found, quantile = run_wy(
        dataset, cfg, PermutationPlan(p=permutations, seed=cfg.seed), ctx=ctx
    )
    rows.append(MethodRow("wy", quantile.delta_quantile, len(wy_found), time.perf_counter() - t0))

    t0 = time.perf_counter()
    ub_found, ub_report = run_ub(dataset, cfg, n_hat_source=n_hat_source, ctx=ctx)
    rows.append(MethodRow("ub", ub_report.epsilon, len(ub_found), time.perf_counter() - t0))
    return rows


def method_table(rows: list[MethodRow]) -> str:
    header = f"{'method':<14}{'threshold':>12}{'outputs':>9}{'seconds':>10}"
    body = [
        f"{r.method:<14}{r.threshold:>12.6f}{r.outputs:>9}{r.seconds:>10.3f}"
        for r in rows
    ]
    return "\n".join([header, *body])
