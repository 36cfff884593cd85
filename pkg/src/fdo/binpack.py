"""One-dimensional bin packing with a permutation-space FDO (AFDO).

A solution is an item order; First Fit turns it into a packing. The
continuous pace is replaced by a list of position swaps: the difference of two
permutations is the minimal swap sequence between them, and a fitness weight
``fw`` applies the leading ``ceil(fw * m)`` of those swaps.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .stochastic import RngStream


class InstanceError(ValueError):
    pass


@dataclass(frozen=True)
class BppInstance:
    capacity: float
    weights: tuple
    name: str = ""

    def __post_init__(self):
        weights = tuple(float(w) for w in self.weights)
        if not self.capacity > 0:
            raise InstanceError("capacity must be positive")
        if not weights:
            raise InstanceError("instance needs at least one item")
        for k, w in enumerate(weights):
            if not 0 < w <= self.capacity:
                raise InstanceError(f"item {k} has weight {w} outside (0, {self.capacity}]")
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "capacity", float(self.capacity))

    @property
    def n_items(self) -> int:
        return len(self.weights)

    def volume_bound(self) -> int:
        """``ceil(sum(w) / C)``, a lower bound on the number of bins."""
        return math.ceil(sum(self.weights) / self.capacity - 1e-12)


@dataclass
class Packing:
    bins: list
    fills: list

    @property
    def n_bins(self) -> int:
        return len(self.bins)

    def check(self, instance: BppInstance) -> None:
        """Raise ``AssertionError`` unless this is a valid packing of ``instance``."""
        seen = sorted(i for b in self.bins for i in b)
        assert seen == list(range(instance.n_items)), "items missing or duplicated"
        assert all(self.bins), "empty bin"
        for b, fill in zip(self.bins, self.fills):
            assert math.isclose(fill, math.fsum(instance.weights[i] for i in b), abs_tol=1e-9)
            assert fill <= instance.capacity, "bin over capacity"


@dataclass
class PermSolution:
    perm: np.ndarray
    packing: Packing
    fitness: float


def load_instance(path) -> BppInstance:
    """Read ``n``, ``C`` and then ``n`` weights (whitespace separated)."""
    path = Path(path)
    tokens = path.read_text(encoding="utf-8").split()
    if len(tokens) < 2:
        raise InstanceError(f"{path}: expected item count and capacity")
    try:
        n = int(tokens[0])
        capacity = float(tokens[1])
        weights = [float(t) for t in tokens[2:]]
    except ValueError as exc:
        raise InstanceError(f"{path}: {exc}") from None
    if n != len(weights):
        raise InstanceError(f"{path}: header says {n} items, found {len(weights)}")
    return BppInstance(capacity, tuple(weights), path.stem)


def first_fit(instance: BppInstance, perm) -> Packing:
    perm = np.asarray(perm, dtype=np.int64)
    bin_of, fills = kernels.first_fit(np.asarray(instance.weights), perm, instance.capacity)
    bins: list[list[int]] = [[] for _ in range(len(fills))]
    for item in perm:
        bins[bin_of[item]].append(int(item))
    return Packing(bins, [float(f) for f in fills])


def bpp_fitness(packing: Packing, capacity: float, k_exp: float = 2.0,
                literal_exponent: bool = False) -> float:
    """``1 - mean_k (fill_k / C) ** e``; 0 only for a perfect packing.

    ``e`` is ``k_exp``, or the 1-based bin index when ``literal_exponent`` is set.
    """
    if not k_exp > 0:
        raise ValueError("k_exp must be positive")
    n = packing.n_bins
    if literal_exponent:
        total = math.fsum((f / capacity) ** (k + 1) for k, f in enumerate(packing.fills))
    else:
        total = math.fsum((f / capacity) ** k_exp for f in packing.fills)
    return 1.0 - total / n


def perm_diff(a, b) -> list:
    """Minimal swap list turning ``b`` into ``a``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError("permutations differ in length")
    return [tuple(int(v) for v in s) for s in kernels.perm_diff(a, b)]


def apply_moves(perm, moves) -> np.ndarray:
    if not len(moves):
        return np.array(perm, dtype=np.int64)
    return kernels.apply_swaps(perm, np.asarray(moves, dtype=np.int64))


def random_swaps(n: int, count: int, stream: RngStream) -> list:
    if count <= 0:
        return []
    pairs = stream.integers(0, n, size=(count, 2))
    return [(int(i), int(j)) for i, j in pairs]


def fraction_moves(moves, perm, fw: float, r: float, stream: RngStream | None = None) -> list:
    """The swap list ``apply_fraction`` would apply."""
    if 0.0 < fw < 1.0:
        return list(moves[: math.ceil(fw * len(moves))])
    count = math.ceil(r * len(perm))
    if count and stream is None:
        raise TypeError("random swaps need a stream")
    return random_swaps(len(perm), count, stream)


def apply_fraction(moves, perm, fw: float, r: float, stream: RngStream | None = None) -> np.ndarray:
    """Move ``perm`` a fraction ``fw`` of the way along ``moves``.

    For ``fw`` of exactly 0 or 1 (or outside ``(0, 1)``) the step is instead
    ``ceil(r * n)`` uniformly random swaps drawn from ``stream``.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError("r must lie in [0, 1]")
    return apply_moves(perm, fraction_moves(moves, perm, fw, r, stream))


@dataclass
class AfdoParams:
    pop_size: int = 30
    max_iterations: int = 200
    wf: float = 0.0
    k_exp: float = 2.0
    literal_exponent: bool = False
    seed: int = 0
    run_index: int = 0

    def __post_init__(self):
        if self.pop_size < 1 or self.max_iterations < 0:
            raise ValueError("pop_size must be >= 1 and max_iterations >= 0")
        if not 0.0 <= self.wf <= 1.0:
            raise ValueError("wf must lie in [0, 1]")
        if not self.k_exp > 0:
            raise ValueError("k_exp must be positive")


@dataclass
class AfdoResult:
    best: PermSolution
    trace: np.ndarray
    evaluations: int
    wall_time: float
    counts: Counter = field(default_factory=Counter)


class _Scout:
    __slots__ = ("sol", "saved")

    def __init__(self, sol: PermSolution):
        self.sol = sol
        self.saved: list = []


def afdo_run(instance: BppInstance, params: AfdoParams | None = None) -> AfdoResult:
    params = params or AfdoParams()
    t0 = time.perf_counter()
    evaluations = 0
    counts: Counter = Counter()
    streams: dict = {}

    def stream(agent, tag):
        key = (agent, tag)
        if key not in streams:
            streams[key] = RngStream(params.seed, params.run_index, agent, tag)
        return streams[key]

    def decode(perm) -> PermSolution:
        nonlocal evaluations
        evaluations += 1
        packing = first_fit(instance, perm)
        fit = bpp_fitness(packing, instance.capacity, params.k_exp, params.literal_exponent)
        return PermSolution(np.asarray(perm, dtype=np.int64), packing, fit)

    n = instance.n_items
    scouts = [_Scout(decode(stream(i, "init").permutation(n))) for i in range(params.pop_size)]

    def best_scout() -> PermSolution:
        return min((s.sol for s in scouts), key=lambda s: s.fitness)

    best = best_scout()
    trace = [best.fitness]
    for _ in range(params.max_iterations):
        for i, scout in enumerate(scouts):
            cand_best = best_scout()
            if cand_best.fitness <= best.fitness:
                best = cand_best
            cur = scout.sol
            r = stream(i, "r").uniform(0.0, 1.0)
            fw = 0.0 if cur.fitness == 0 else abs(best.fitness / cur.fitness) - params.wf
            if 0.0 < fw < 1.0:
                counts["directed"] += 1
                pace = fraction_moves(perm_diff(best.perm, cur.perm), cur.perm, fw, r)
            else:
                counts["random"] += 1
                pace = fraction_moves([], cur.perm, fw, r, stream(i, "swaps"))
            trial = decode(apply_moves(cur.perm, pace))
            if trial.fitness < cur.fitness:
                scout.sol, scout.saved = trial, pace
                counts["new_pace"] += 1
                continue
            trial = decode(apply_moves(cur.perm, scout.saved))
            if trial.fitness < cur.fitness:
                scout.sol = trial
                counts["saved_pace"] += 1
            else:
                counts["stay"] += 1
        cand_best = best_scout()
        if cand_best.fitness <= best.fitness:
            best = cand_best
        trace.append(best.fitness)
    return AfdoResult(best, np.array(trace), evaluations, time.perf_counter() - t0, counts)
