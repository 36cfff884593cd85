"""Published FDO variants built on the core loop: IFDO, MFDO, M-IFDO, CFDO and the enhanced FDO."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FDO, RunContext, Scout, Swarm, compute_pace, pace_label
from .stochastic import DegenerateSeedError, ChaoticMap, MAP_KINDS

COHESION_EPS = 1e-12
MIFDO_LAMBDA = 0.1
MFDO_WF_RANGE = (0.0, 0.2)


@dataclass
class IfdoParams:
    cohesion_epsilon: float = COHESION_EPS
    wf_resample: bool = True

    def __post_init__(self):
        if not self.cohesion_epsilon > 0:
            raise ValueError("cohesion_epsilon must be positive")


@dataclass
class MfdoParams:
    wf_range: tuple = MFDO_WF_RANGE

    def __post_init__(self):
        lo, hi = self.wf_range
        if not 0.0 <= lo <= hi <= 0.2:
            raise ValueError("MFDO wf range must lie inside [0, 0.2]")


@dataclass
class MifdoParams:
    lam: float = MIFDO_LAMBDA

    def __post_init__(self):
        if not math.isfinite(self.lam):
            raise ValueError("lambda must be finite")


@dataclass
class CfdoParams:
    map_kind: str = "singer"
    initial_state: float | None = None

    def __post_init__(self):
        if self.map_kind not in MAP_KINDS:
            raise ValueError(f"unknown chaotic map {self.map_kind!r}")


@dataclass
class EnhancedFdoParams:
    m: float = 0.3

    def __post_init__(self):
        if not 0.0 < self.m < 4.0:
            raise ValueError("m must satisfy 0 < m < 4")


# ---------------------------------------------------------------------------
# update rules


def ifdo_fw(best_fitness: float, current_fitness: float, wf: float) -> float:
    """Fitness ratio, reduced by ``wf`` only when it exceeds ``wf``."""
    if current_fitness == 0:
        return 0.0
    fw = abs(best_fitness / current_fitness)
    return fw if fw <= wf else fw - wf


def alignment(swarm: Swarm, i: int) -> np.ndarray:
    """Mean saved pace of every scout except ``i``."""
    n = swarm.size
    own = swarm.scouts[i].saved_pace
    if n < 2:
        return np.zeros_like(own)
    total = np.sum([s.saved_pace for s in swarm.scouts], axis=0)
    return (total - own) / (n - 1)


def cohesion(swarm: Swarm, i: int) -> np.ndarray:
    """Offset from scout ``i`` to the centre of mass of the others."""
    n = swarm.size
    me = swarm.scouts[i].position
    if n < 2:
        return np.zeros_like(me)
    total = np.sum([s.position for s in swarm.scouts], axis=0)
    return (total - me) / (n - 1) - me


def guarded_ratio(num, den, eps: float = COHESION_EPS) -> np.ndarray:
    """``num / den`` componentwise with ``|den|`` floored at ``eps`` (sign kept)."""
    den = np.asarray(den, dtype=float)
    floor = np.copysign(np.maximum(np.abs(den), eps), den)
    return np.asarray(num, dtype=float) / floor


def ifdo_update(scout: Scout, pace, swarm: Swarm, i: int,
                params: IfdoParams | None = None) -> np.ndarray:
    """Raw (unbounded) position ``X + pace + alignment / cohesion``."""
    eps = (params or IfdoParams()).cohesion_epsilon
    return scout.position + pace + guarded_ratio(alignment(swarm, i), cohesion(swarm, i), eps)


def sinc(x: float) -> float:
    """Unnormalised sine cardinal, ``sin(x)/x`` with ``sinc(0) = 1``."""
    if x == 0:
        return 1.0
    return math.sin(x) / x


def mfdo_fw(best_fitness: float, current_fitness: float, wf: float) -> float:
    if current_fitness == 0:
        return 0.0
    return abs(best_fitness / current_fitness) * sinc(math.pi * wf)


def mfdo_pace(position, best_position, fw: float, wf: float, r) -> np.ndarray:
    position = np.asarray(position, dtype=float)
    if fw == 0.0:
        return position * r * sinc(math.pi * wf)
    if fw == 1.0:
        return (np.asarray(best_position) - position) * r * sinc(math.pi * wf)
    return compute_pace(position, best_position, fw, r)


def mifdo_update(scout: Scout, pace, params: MifdoParams | None = None) -> np.ndarray:
    lam = (params or MifdoParams()).lam
    return scout.position + pace + lam


def enhanced_wf(wf: float, m: float = 0.3) -> float:
    """Sine-map modulated weight factor ``(m/4) sin(pi wf)``."""
    if not 0.0 < m < 4.0:
        raise ValueError("m must satisfy 0 < m < 4")
    return m / 4.0 * math.sin(math.pi * wf)


# ---------------------------------------------------------------------------
# algorithms


class IFDO(FDO):
    """Random per-iteration wf, alignment/cohesion term in the position update."""

    name = "ifdo"

    def __init__(self, params: IfdoParams | None = None, init: str = "uniform_random"):
        super().__init__(init)
        self.params = params or IfdoParams()

    def begin_iteration(self, swarm, ctx):
        if self.params.wf_resample:
            ctx.wf = ctx.stream(0, "wf").uniform(0.0, 1.0)

    def weight(self, best_fitness, current_fitness, ctx):
        return ifdo_fw(best_fitness, current_fitness, ctx.wf)

    def propose(self, swarm, i, scout, pace, ctx):
        return ifdo_update(scout, pace, swarm, i, self.params)


class MFDO(FDO):
    """wf drawn from [0, 0.2] each iteration; sinc-damped weight and pace."""

    name = "mfdo"

    def __init__(self, params: MfdoParams | None = None, init: str = "uniform_random"):
        super().__init__(init)
        self.params = params or MfdoParams()

    def begin_iteration(self, swarm, ctx):
        ctx.wf = ctx.stream(0, "wf").uniform(*self.params.wf_range)

    def weight(self, best_fitness, current_fitness, ctx):
        return mfdo_fw(best_fitness, current_fitness, ctx.wf)

    def pace(self, scout, best_position, fw, r, ctx):
        ctx.counts[pace_label(fw, r)] += 1
        return mfdo_pace(scout.position, best_position, fw, ctx.wf, r)


class MIFDO(IFDO):
    """IFDO weighting with the alignment/cohesion term replaced by a constant Lambda."""

    name = "mifdo"

    def __init__(self, params: MifdoParams | None = None, init: str = "uniform_random"):
        super().__init__(IfdoParams(), init)
        self.mparams = params or MifdoParams()

    def propose(self, swarm, i, scout, pace, ctx):
        return mifdo_update(scout, pace, self.mparams)


class CFDO(FDO):
    """Chaotic initialisation, chaotic ``r`` and chaotic re-entry of stray scouts.

    One map drives all three, in call order. Without an explicit initial state
    the map is seeded from the run's stream, so different runs differ.
    """

    name = "cfdo"
    default_boundary = "chaotic_reinsert"

    def __init__(self, params: CfdoParams | None = None):
        super().__init__("chaotic")
        self.params = params or CfdoParams()

    def setup(self, ctx):
        ctx.chaos = cfdo_map(self.params, ctx)
        super().setup(ctx)

    def draw_r(self, ctx, i):
        c = ctx.chaos
        if ctx.params.r_mode == "per_dimension":
            return np.array([2.0 * c.next() - 1.0 for _ in range(ctx.spec.dimension)])
        return 2.0 * c.next() - 1.0


def cfdo_map(params: CfdoParams, ctx: RunContext | None = None) -> ChaoticMap:
    if params.initial_state is not None:
        return ChaoticMap(params.map_kind, params.initial_state)
    if ctx is None:
        return ChaoticMap(params.map_kind)
    s = ctx.stream(0, "chaos-seed")
    while True:
        x0 = s.uniform(0.05, 0.95)
        if params.map_kind == "chebyshev":
            x0 = 2.0 * x0 - 1.0
        try:
            return ChaoticMap(params.map_kind, x0)
        except DegenerateSeedError:
            continue


class EnhancedFDO(FDO):
    """Sobol initialisation plus a sine-map modulated weight factor."""

    name = "enhanced"

    def __init__(self, params: EnhancedFdoParams | None = None):
        super().__init__("quasi_random")
        self.params = params or EnhancedFdoParams()

    def begin_iteration(self, swarm, ctx):
        ctx.wf = enhanced_wf(ctx.stream(0, "wf").uniform(0.0, 1.0), self.params.m)
