"""Pruned depth-first search over the pattern language.

Three entry points share one enumeration: the supremum of the centered
quality under a given label vector (the engine's hot loop, run once per
resample), exact top-k mining, and the final thresholded scan that emits
every pattern whose observed quality clears a frequency-dependent cutoff.

Pruning is lossless: a pattern's refinements keep a subset of its cover, so
(positives * (1 - center)) / m bounds every descendant's quality.  Ties are
broken toward the first pattern in canonical DFS order, which makes results
deterministic and makes merges from disjoint subtrees associative.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from . import bitset
from .data import Dataset, LabelVector
from .errors import ConfigError
from .language import (
    Cover,
    LanguageConfig,
    Pattern,
    Selector,
    base_selectors,
    selector_cover,
)
from .quality import QualityStat, empirical_quality


def optimistic_estimate(cover: Cover, labels: LabelVector, center: float) -> float:
    """Upper bound on the centered quality of every refinement of a pattern.

    A refinement's cover is a subset of `cover`; the best it can do is keep
    all label-1 transactions and drop the rest, scoring positives*(1-center)/m.
    The bound also dominates the pattern's own quality since positives <= |cover|.
    """
    pos = (cover & labels.mask).bit_count()
    return pos * (1.0 - center) / labels.m


class SearchContext:
    """Precomputed per-dataset state shared by every search over one language.

    Selector covers are computed once and intersected incrementally down the
    DFS; the context is immutable and safe to share across worker threads.
    """

    def __init__(self, dataset: Dataset, cfg: LanguageConfig):
        self.dataset = dataset
        self.cfg = cfg
        self.base = base_selectors(dataset, cfg)
        if not self.base:
            raise ConfigError("language has no base selectors")
        self.masks = [selector_cover(s, dataset) for s in self.base]
        self.m = dataset.m
        self.root = bitset.full(dataset.m)
        # first base index on a column strictly greater than base[i]'s
        cols = [s.column for s in self.base]
        nxt = [0] * len(cols)
        for i in range(len(cols) - 1, -1, -1):
            if i + 1 < len(cols) and cols[i + 1] == cols[i]:
                nxt[i] = nxt[i + 1]
            else:
                nxt[i] = i + 1
        self.next_start = nxt

    def sup_frequency(self) -> float:
        """max_P f_P over the whole language (attained at depth 1)."""
        return max(mask.bit_count() for mask in self.masks) / self.m

    def pattern(self, indices) -> Pattern:
        return Pattern(tuple(self.base[i] for i in indices))


@dataclass
class SearchResult:
    supremum: float
    argmax: Pattern | None
    nodes_visited: int
    nodes_pruned: int


@dataclass
class TopKResult:
    """Top patterns by quality, descending; ties resolved in canonical order."""

    entries: list[tuple[Pattern, QualityStat]]
    k: int


def _context(dataset, cfg, ctx: SearchContext | None) -> SearchContext:
    return ctx if ctx is not None else SearchContext(dataset, cfg)


def sup_quality(
    dataset: Dataset,
    labels: LabelVector,
    center: float,
    cfg: LanguageConfig,
    ctx: SearchContext | None = None,
    prune: bool = True,
) -> SearchResult:
    """Exact maximum of the centered quality over the whole language."""
    ctx = _context(dataset, cfg, ctx)
    masks = ctx.masks
    nsel = len(masks)
    m = ctx.m
    z = ctx.cfg.z
    lmask = labels.mask
    one_minus_c = 1.0 - center

    best = float("-inf")
    best_idx: tuple[int, ...] | None = None
    visited = 0
    pruned = 0

    def rec(cover: Cover, chosen: tuple[int, ...], start: int, depth: int) -> None:
        nonlocal best, best_idx, visited, pruned
        for i in range(start, nsel):
            child = cover & masks[i]
            pos = (child & lmask).bit_count()
            val = (pos - child.bit_count() * center) / m
            visited += 1
            here = chosen + (i,)
            if val > best:
                best = val
                best_idx = here
            if depth + 1 < z:
                if not prune or pos * one_minus_c / m > best:
                    rec(child, here, ctx.next_start[i], depth + 1)
                else:
                    pruned += 1

    rec(ctx.root, (), 0, 0)
    argmax = ctx.pattern(best_idx) if best_idx is not None else None
    return SearchResult(best, argmax, visited, pruned)


def top_k(
    dataset: Dataset,
    labels: LabelVector,
    center: float,
    cfg: LanguageConfig,
    k: int,
    ctx: SearchContext | None = None,
    prune: bool = True,
) -> TopKResult:
    """Exact k highest-quality patterns, pruned against the running k-th best.

    A later pattern tying the k-th value never displaces an earlier one, so
    subtrees whose optimistic estimate only reaches the k-th value are safe
    to cut.
    """
    if k < 1:
        raise ConfigError("k must be >= 1")
    ctx = _context(dataset, cfg, ctx)
    masks = ctx.masks
    nsel = len(masks)
    m = ctx.m
    z = ctx.cfg.z
    lmask = labels.mask
    one_minus_c = 1.0 - center

    # heap entries (value, -dfs_rank, chosen): among equal values the latest
    # arrival sorts smallest and is displaced first
    heap: list[tuple[float, int, tuple[int, ...]]] = []
    rank = 0

    def rec(cover: Cover, chosen: tuple[int, ...], start: int, depth: int) -> None:
        nonlocal rank
        for i in range(start, nsel):
            child = cover & masks[i]
            pos = (child & lmask).bit_count()
            val = (pos - child.bit_count() * center) / m
            rank += 1
            here = chosen + (i,)
            if len(heap) < k:
                heapq.heappush(heap, (val, -rank, here))
            elif val > heap[0][0]:
                heapq.heapreplace(heap, (val, -rank, here))
            if depth + 1 < z:
                full = len(heap) == k
                if not prune or not full or pos * one_minus_c / m > heap[0][0]:
                    rec(child, here, ctx.next_start[i], depth + 1)

    rec(ctx.root, (), 0, 0)
    ordered = sorted(heap, key=lambda t: (-t[0], -t[1]))
    entries = [
        (ctx.pattern(idx), empirical_quality(_cover_of(ctx, idx), labels, center))
        for _, _, idx in ordered
    ]
    return TopKResult(entries, k)


def _cover_of(ctx: SearchContext, indices: tuple[int, ...]) -> Cover:
    cover = ctx.root
    for i in indices:
        cover &= ctx.masks[i]
    return cover


def threshold_mine(
    dataset: Dataset,
    labels: LabelVector,
    center: float,
    eps: float,
    eps_t: float,
    cfg: LanguageConfig,
    ctx: SearchContext | None = None,
) -> list[tuple[Pattern, QualityStat]]:
    """All patterns with quality >= eps + eps_t * frequency (exact >=).

    The per-pattern threshold is frequency-dependent but bounded below by
    eps, so a subtree dies as soon as its optimistic estimate drops below
    eps.  Results come back in canonical DFS order.
    """
    ctx = _context(dataset, cfg, ctx)
    masks = ctx.masks
    nsel = len(masks)
    m = ctx.m
    z = ctx.cfg.z
    lmask = labels.mask
    one_minus_c = 1.0 - center
    out: list[tuple[Pattern, QualityStat]] = []

    def rec(cover: Cover, chosen: tuple[int, ...], start: int, depth: int) -> None:
        for i in range(start, nsel):
            child = cover & masks[i]
            pos = (child & lmask).bit_count()
            n = child.bit_count()
            val = (pos - n * center) / m
            here = chosen + (i,)
            if val >= eps + eps_t * (n / m):
                out.append((ctx.pattern(here), QualityStat(val, n / m, pos)))
            if depth + 1 < z and pos * one_minus_c / m >= eps:
                rec(child, here, ctx.next_start[i], depth + 1)

    rec(ctx.root, (), 0, 0)
    return out
