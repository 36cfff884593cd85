"""Run summaries and the two-sample Wilcoxon rank-sum test."""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from itertools import groupby

from . import kernels

EXACT_LIMIT = 12


@dataclass(frozen=True)
class StatsSummary:
    algorithm: str
    function: str
    runs: int
    avg: float
    std: float
    min: float
    max: float
    median: float


def describe(values) -> tuple[float, float, float, float, float]:
    """``(mean, sample std, min, max, median)``; std is 0 for a single value."""
    v = [float(x) for x in values]
    if not v:
        raise ValueError("cannot summarise an empty sample")
    n = len(v)
    mean = math.fsum(v) / n
    std = math.sqrt(math.fsum((x - mean) ** 2 for x in v) / (n - 1)) if n > 1 else 0.0
    s = sorted(v)
    mid = n // 2
    median = s[mid] if n % 2 else (s[mid - 1] + s[mid]) / 2.0
    return mean, std, s[0], s[-1], median


def summarize(records, keys=("algorithm", "function")) -> list[StatsSummary]:
    records = list(records)
    if not records:
        raise ValueError("no records to summarise")
    groups = defaultdict(list)
    for rec in records:
        groups[tuple(getattr(rec, k) for k in keys)].append(rec.best_fitness)
    out = []
    for key in sorted(groups):
        vals = groups[key]
        named = dict(zip(keys, key))
        out.append(StatsSummary(named.get("algorithm", "*"), named.get("function", "*"),
                                len(vals), *describe(vals)))
    return out


@dataclass(frozen=True)
class RankSumResult:
    statistic: float
    p_two_sided: float
    method: str


def midranks(values) -> list[float]:
    """1-based ranks with ties given their average rank."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    pos = 0
    for _, grp in groupby(order, key=lambda i: values[i]):
        grp = list(grp)
        avg = pos + (len(grp) + 1) / 2.0
        for i in grp:
            ranks[i] = avg
        pos += len(grp)
    return ranks


def wilcoxon_rank_sum(a, b, method: str = "auto") -> RankSumResult:
    """Two-sided rank-sum test; the statistic is Mann-Whitney ``U`` for ``a``.

    ``method="auto"`` enumerates the exact null distribution when the pooled
    size is at most 12 and uses the tie- and continuity-corrected normal
    approximation otherwise.
    """
    a = [float(x) for x in a]
    b = [float(x) for x in b]
    na, nb = len(a), len(b)
    if na < 3 or nb < 3:
        raise ValueError("each sample needs at least 3 observations")
    if method not in ("auto", "exact", "normal"):
        raise ValueError(f"unknown method {method!r}")
    ranks = midranks(a + b)
    r_a = math.fsum(ranks[:na])
    u = r_a - na * (na + 1) / 2.0
    if method == "exact" or (method == "auto" and na + nb <= EXACT_LIMIT):
        return RankSumResult(u, _exact_p(ranks, na), "exact")
    return RankSumResult(u, _normal_p(u, na, nb, a + b), "normal")


def _exact_p(ranks, na) -> float:
    doubled = [int(round(2 * r)) for r in ranks]
    counts = kernels.subset_sum_counts(doubled, na)
    n = len(ranks)
    expected = na * (n + 1)  # doubled mean rank sum
    observed = sum(doubled[:na])
    gap = abs(observed - expected)
    extreme = sum(int(c) for s, c in enumerate(counts) if c and abs(s - expected) >= gap)
    return min(1.0, extreme / math.comb(n, na))


def _normal_p(u, na, nb, pooled) -> float:
    n = na + nb
    ties = defaultdict(int)
    for x in pooled:
        ties[x] += 1
    tie_term = sum(t ** 3 - t for t in ties.values()) / (n * (n - 1))
    var = na * nb / 12.0 * ((n + 1) - tie_term)
    if var <= 0:
        return 1.0
    z = max(abs(u - na * nb / 2.0) - 0.5, 0.0) / math.sqrt(var)
    return min(1.0, math.erfc(z / math.sqrt(2.0)))
