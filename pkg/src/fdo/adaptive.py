"""Diversity-gated FDO: quasi-random start, dynamic thresholds, Levy exploration and chaotic refinement."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import FDO, RunContext, Swarm
from .stochastic import MAP_KINDS, ChaoticMap, DegenerateSeedError, RngStream, _check_lambda

EXPLORE = "explore"
EXPLOIT = "exploit"
STANDARD = "standard"


@dataclass(frozen=True)
class DiversityState:
    threshold_high: float
    threshold_low: float
    delta_high: float = 0.0
    delta_low: float = 0.0
    current_diversity: float = math.nan
    frozen: bool = False

    def __post_init__(self):
        if self.delta_high < 0 or self.delta_low < 0:
            raise ValueError("threshold deltas must be non-negative")
        if self.threshold_low > self.threshold_high:
            raise ValueError("threshold_low must not exceed threshold_high")


@dataclass
class AdaptiveParams:
    """Settings for :class:`AdaptiveFDO`.

    Thresholds left as ``None`` are set from the initial population: the high
    threshold to its diversity, the low one to ``low_fraction`` of it. ``None``
    deltas are chosen so that over the run the high threshold halves and the
    low one grows tenfold.
    """

    levy_lambda: float = 1.5
    refine_map: str = "singer"
    refine_state: float | None = None
    th_high: float | None = None
    th_low: float | None = None
    delta_high: float | None = None
    delta_low: float | None = None
    low_fraction: float = 1e-3

    def __post_init__(self):
        _check_lambda(self.levy_lambda)
        if self.refine_map not in MAP_KINDS:
            raise ValueError(f"unknown chaotic map {self.refine_map!r}")

    @classmethod
    def gates_disabled(cls, **kw) -> "AdaptiveParams":
        return cls(th_high=math.inf, th_low=0.0, delta_high=0.0, delta_low=0.0, **kw)


def mean_position(swarm_or_positions) -> np.ndarray:
    return np.mean(_positions(swarm_or_positions), axis=0)


def diversity(swarm_or_positions) -> float:
    """Mean squared Euclidean distance of the scouts to their centroid."""
    x = _positions(swarm_or_positions)
    dev = x - x.mean(axis=0)
    return float(np.einsum("ij,ij->", dev, dev) / x.shape[0])


def _positions(obj) -> np.ndarray:
    if isinstance(obj, Swarm):
        return obj.positions()
    x = np.asarray(obj, dtype=float)
    return x.reshape(len(x), -1)


def update_thresholds(state: DiversityState, t: int) -> DiversityState:
    """Move the high threshold down by ``t*delta_high`` and the low one up by ``t*delta_low``.

    If the move would invert the band the thresholds stay where they are and
    freeze; a move that makes them meet exactly is applied and then frozen.
    """
    if t < 0:
        raise ValueError("iteration index must be non-negative")
    if state.frozen:
        return state
    hi = state.threshold_high - t * state.delta_high if state.delta_high else state.threshold_high
    lo = state.threshold_low + t * state.delta_low if state.delta_low else state.threshold_low
    if hi < lo:
        return replace(state, frozen=True)
    return replace(state, threshold_high=hi, threshold_low=lo, frozen=hi == lo)


def select_mode(div: float, state: DiversityState) -> str:
    if div > state.threshold_high:
        return EXPLORE
    if div < state.threshold_low:
        return EXPLOIT
    return STANDARD


def levy_step(position, stream: RngStream, lam: float = 1.5, spec=None, bounds=None) -> np.ndarray:
    """``X + Levy(lam)`` with an independent draw per coordinate."""
    position = np.asarray(position, dtype=float)
    new = position + stream.levy_array(position.shape, lam)
    return _bounded(new, spec, bounds)


def chaotic_refine(position, best_position, chaos, spec=None, bounds=None) -> np.ndarray:
    """``X + c (X* - X)`` with ``c`` the next map iterate (or a given float in [0, 1])."""
    position = np.asarray(position, dtype=float)
    best_position = np.asarray(best_position, dtype=float)
    c = chaos.next() if isinstance(chaos, ChaoticMap) else float(chaos)
    new = np.clip(position + c * (best_position - position),
                  np.minimum(position, best_position), np.maximum(position, best_position))
    return _bounded(new, spec, bounds)


def _bounded(x, spec, bounds):
    if spec is None:
        return x
    if bounds is None:
        return np.clip(x, spec.lower, spec.upper)
    return bounds(x, spec)


class AdaptiveFDO(FDO):
    """Core FDO whose per-iteration operator is chosen from the population diversity.

    High diversity: every scout proposes a Levy jump. Low diversity: every scout
    proposes a chaotic contraction toward the best. Otherwise the standard FDO
    pace. All proposals go through the usual strict-improvement acceptance.
    """

    name = "adaptive"

    def __init__(self, params: AdaptiveParams | None = None, init: str = "quasi_random"):
        super().__init__(init)
        self.params = params or AdaptiveParams()

    def setup(self, ctx: RunContext) -> None:
        super().setup(ctx)
        ctx.state["refine_map"] = self._refine_map(ctx)
        ctx.state["diversity"] = None

    def _refine_map(self, ctx):
        p = self.params
        if p.refine_state is not None:
            return ChaoticMap(p.refine_map, p.refine_state)
        s = ctx.stream(0, "refine-seed")
        while True:
            x0 = s.uniform(0.05, 0.95)
            if p.refine_map == "chebyshev":
                x0 = 2.0 * x0 - 1.0
            try:
                return ChaoticMap(p.refine_map, x0)
            except DegenerateSeedError:
                continue

    def initial_state(self, swarm: Swarm, ctx: RunContext) -> DiversityState:
        p = self.params
        d0 = diversity(swarm)
        hi = d0 if p.th_high is None else p.th_high
        lo = p.low_fraction * d0 if p.th_low is None else p.th_low
        T = max(ctx.params.max_iterations, 1)
        ramp = T * (T + 1)
        dh = hi / ramp if p.delta_high is None else p.delta_high
        dl = 18.0 * lo / ramp if p.delta_low is None else p.delta_low
        if not math.isfinite(dh):
            dh = 0.0
        return DiversityState(hi, lo, dh, dl, d0)

    def begin_iteration(self, swarm: Swarm, ctx: RunContext) -> None:
        state = ctx.state["diversity"]
        if state is None:
            state = self.initial_state(swarm, ctx)
        div = diversity(swarm)
        mode = select_mode(div, state)
        ctx.state["mode"] = mode
        ctx.counts["mode_" + mode] += 1
        ctx.state["diversity"] = update_thresholds(replace(state, current_diversity=div),
                                                   swarm.iteration)

    def step_scout(self, swarm: Swarm, i: int, ctx: RunContext):
        mode = ctx.state["mode"]
        if mode == STANDARD:
            return super().step_scout(swarm, i, ctx)
        scout = swarm.scouts[i]
        if mode == EXPLORE:
            pace = ctx.stream(i, "levy").levy_array(ctx.spec.dimension, self.params.levy_lambda)
        else:
            target = chaotic_refine(scout.position, swarm.best_position, ctx.state["refine_map"])
            pace = target - scout.position
        return self.move(swarm, i, pace, ctx)
