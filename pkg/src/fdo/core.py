"""Base Fitness Dependent Optimizer.

The per-scout loop follows the classic pseudocode literally: the global best is
refreshed before each scout, one random walk value ``r`` is drawn per scout,
the fitness weight selects the pace case, and a move is kept only on strict
improvement, with a single retry using the scout's previously accepted pace.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .objective import (
    MINIMIZE,
    Boundary,
    EvalCounter,
    ObjectiveSpec,
    better,
    evaluate,
)
from .stochastic import ChaoticMap, QuasiSequence, RngStream

INIT_STRATEGIES = ("uniform_random", "quasi_random", "chaotic")
R_MODES = ("scalar_shared", "per_dimension")


class Move(str, Enum):
    NEW_PACE = "new_pace"
    SAVED_PACE = "saved_pace"
    STAY = "stay"

    @property
    def accepted(self) -> bool:
        return self is not Move.STAY


@dataclass
class Scout:
    position: np.ndarray
    fitness: float
    saved_pace: np.ndarray = None

    def __post_init__(self):
        self.position = np.asarray(self.position, dtype=float)
        if self.saved_pace is None:
            self.saved_pace = np.zeros_like(self.position)

    def copy(self) -> "Scout":
        return Scout(self.position.copy(), self.fitness, self.saved_pace.copy())


@dataclass
class Swarm:
    scouts: list
    best_position: np.ndarray
    best_fitness: float
    iteration: int = 0

    @property
    def size(self) -> int:
        return len(self.scouts)

    def positions(self) -> np.ndarray:
        return np.array([s.position for s in self.scouts])

    def fitnesses(self) -> np.ndarray:
        return np.array([s.fitness for s in self.scouts])

    def refresh_best(self, direction: str = MINIMIZE) -> int:
        """Point the global best at the first best scout; returns its index."""
        k = 0
        for i in range(1, len(self.scouts)):
            if better(self.scouts[i].fitness, self.scouts[k].fitness, direction):
                k = i
        f = self.scouts[k].fitness
        if not better(self.best_fitness, f, direction):
            self.best_fitness = f
            self.best_position = self.scouts[k].position.copy()
        return k

    def copy(self) -> "Swarm":
        return Swarm([s.copy() for s in self.scouts], self.best_position.copy(),
                     self.best_fitness, self.iteration)


@dataclass
class FdoParams:
    pop_size: int = 30
    max_iterations: int = 500
    wf: float = 0.0
    boundary: str | None = None
    r_mode: str = "scalar_shared"
    seed: int = 0
    run_index: int = 0

    def __post_init__(self):
        if self.pop_size < 1:
            raise ValueError("pop_size must be >= 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if not 0.0 <= self.wf <= 1.0:
            raise ValueError("wf must lie in [0, 1]")
        if self.r_mode not in R_MODES:
            raise ValueError(f"r_mode must be one of {R_MODES}")


@dataclass
class RunResult:
    best_position: np.ndarray
    best_fitness: float
    trace: np.ndarray
    evaluations: int
    wall_time: float
    algorithm: str = "fdo"
    counts: Counter = field(default_factory=Counter)


class RunContext:
    """Per-run mutable state: objective, counter, streams and algorithm scratch space."""

    def __init__(self, spec: ObjectiveSpec, params: FdoParams):
        self.spec = spec
        self.params = params
        self.counter = EvalCounter()
        self.counts = Counter()
        self.boundary = Boundary("clamp")
        self.wf = params.wf
        self.chaos: ChaoticMap | None = None
        self.state: dict = {}
        self._streams: dict = {}

    def stream(self, agent: int, tag: str) -> RngStream:
        key = (agent, tag)
        s = self._streams.get(key)
        if s is None:
            s = self._streams[key] = RngStream(self.params.seed, self.params.run_index, agent, tag)
        return s

    def evaluate(self, x) -> float:
        return evaluate(self.spec, x, self.counter)


# ---------------------------------------------------------------------------
# update rules


def fitness_weight(best_fitness: float, current_fitness: float, wf: float = 0.0) -> float:
    if current_fitness == 0:
        return 0.0
    return abs(best_fitness / current_fitness) - wf


def compute_pace(position, best_position, fw: float, r) -> np.ndarray:
    """Pace for one scout. ``r`` may be a scalar or a per-dimension vector.

    fw exactly 0 or 1 gives ``X * r``; any other value (including values
    outside [0, 1]) gives ``(X - X*) * fw``, negated where ``r < 0``.
    """
    position = np.asarray(position, dtype=float)
    if fw == 1.0 or fw == 0.0:
        return position * r
    directed = (position - best_position) * fw
    if np.ndim(r) == 0:
        return -directed if r < 0 else directed
    return np.where(np.asarray(r) < 0, -directed, directed)


def _plain_step(scout: Scout, pace) -> np.ndarray:
    return scout.position + pace


def try_move(scout: Scout, pace, spec: ObjectiveSpec, counter: EvalCounter | None = None,
             bounds: Boundary | None = None, propose=None) -> Move:
    """Two-stage acceptance, updating ``scout`` in place.

    ``propose(scout, pace)`` builds the raw candidate (default ``X + pace``); it is
    used for both the fresh pace and the saved-pace retry.
    """
    bounds = bounds or Boundary("clamp")
    propose = propose or _plain_step
    direction = spec.direction

    cand = bounds(propose(scout, pace), spec)
    f = evaluate(spec, cand, counter)
    if better(f, scout.fitness, direction):
        scout.position = cand
        scout.fitness = f
        scout.saved_pace = np.array(pace, dtype=float)
        return Move.NEW_PACE

    cand = bounds(propose(scout, scout.saved_pace), spec)
    f = evaluate(spec, cand, counter)
    if better(f, scout.fitness, direction):
        scout.position = cand
        scout.fitness = f
        return Move.SAVED_PACE
    return Move.STAY


# ---------------------------------------------------------------------------
# initialisation


def initial_positions(spec: ObjectiveSpec, n: int, strategy: str = "uniform_random",
                      source=None) -> np.ndarray:
    """``n`` starting points inside the box.

    ``source`` is a callable ``agent -> RngStream`` for ``uniform_random``, a
    :class:`ChaoticMap` for ``chaotic``; ``quasi_random`` uses Sobol points 1..n
    unless a :class:`QuasiSequence` is supplied.
    """
    if n < 1:
        raise ValueError("population size must be >= 1")
    lo, hi = spec.lower, spec.upper
    d = spec.dimension
    if strategy == "uniform_random":
        if source is None:
            raise TypeError("uniform_random initialisation needs a stream factory")
        unit = np.array([source(i).uniform_array(d) for i in range(n)])
    elif strategy == "quasi_random":
        seq = source if isinstance(source, QuasiSequence) else QuasiSequence("sobol", d)
        unit = seq.take(n)
    elif strategy == "chaotic":
        if not isinstance(source, ChaoticMap):
            raise TypeError("chaotic initialisation needs a ChaoticMap")
        unit = np.array([[source.next() for _ in range(d)] for _ in range(n)])
    else:
        raise ValueError(f"unknown init strategy {strategy!r}")
    return lo + (hi - lo) * unit


def make_swarm(spec: ObjectiveSpec, positions, counter: EvalCounter | None = None) -> Swarm:
    scouts = [Scout(p, evaluate(spec, p, counter)) for p in np.asarray(positions, dtype=float)]
    swarm = Swarm(scouts, scouts[0].position.copy(), scouts[0].fitness)
    swarm.refresh_best(spec.direction)
    return swarm


def init_swarm(spec: ObjectiveSpec, params: FdoParams, strategy: str = "uniform_random",
               source=None, counter: EvalCounter | None = None) -> Swarm:
    if strategy == "uniform_random" and source is None:
        def source(i):
            return RngStream(params.seed, params.run_index, i, "init")
    return make_swarm(spec, initial_positions(spec, params.pop_size, strategy, source), counter)


# ---------------------------------------------------------------------------
# algorithm


class FDO:
    """Base optimizer; variants override the hook methods.

    Hooks, in call order: :meth:`setup` (once per run), :meth:`initial_positions`,
    then per iteration :meth:`begin_iteration` and, per scout, :meth:`step_scout`
    which calls :meth:`draw_r`, :meth:`weight`, :meth:`pace` and :meth:`propose`.
    """

    name = "fdo"
    default_boundary = "clamp"

    def __init__(self, init: str = "uniform_random"):
        if init not in INIT_STRATEGIES:
            raise ValueError(f"unknown init strategy {init!r}")
        self.init = init

    def __repr__(self):
        return f"{type(self).__name__}(init={self.init!r})"

    # -- per run
    def setup(self, ctx: RunContext) -> None:
        policy = ctx.params.boundary or self.default_boundary
        if policy == "chaotic_reinsert":
            if ctx.chaos is None:
                ctx.chaos = ChaoticMap("singer")
            source = ctx.chaos
        elif policy == "random_reinsert":
            source = ctx.stream(0, "bounds")
        else:
            source = None
        ctx.boundary = Boundary(policy, source)

    def initial_positions(self, ctx: RunContext) -> np.ndarray:
        n = ctx.params.pop_size
        if self.init == "uniform_random":
            return initial_positions(ctx.spec, n, "uniform_random",
                                     lambda i: ctx.stream(i, "init"))
        if self.init == "chaotic":
            if ctx.chaos is None:
                ctx.chaos = ChaoticMap("singer")
            return initial_positions(ctx.spec, n, "chaotic", ctx.chaos)
        return initial_positions(ctx.spec, n, self.init)

    # -- per iteration
    def begin_iteration(self, swarm: Swarm, ctx: RunContext) -> None:
        pass

    # -- per scout
    def draw_r(self, ctx: RunContext, i: int):
        s = ctx.stream(i, "r")
        if ctx.params.r_mode == "per_dimension":
            return s.signed_unit_array(ctx.spec.dimension)
        return s.signed_unit()

    def weight(self, best_fitness: float, current_fitness: float, ctx: RunContext) -> float:
        return fitness_weight(best_fitness, current_fitness, ctx.wf)

    def pace(self, scout: Scout, best_position, fw: float, r, ctx: RunContext) -> np.ndarray:
        ctx.counts[pace_label(fw, r)] += 1
        return compute_pace(scout.position, best_position, fw, r)

    def propose(self, swarm: Swarm, i: int, scout: Scout, pace, ctx: RunContext) -> np.ndarray:
        return scout.position + pace

    def step_scout(self, swarm: Swarm, i: int, ctx: RunContext) -> Move:
        scout = swarm.scouts[i]
        r = self.draw_r(ctx, i)
        if scout.fitness == 0:
            fw = 0.0
        else:
            fw = self.weight(swarm.best_fitness, scout.fitness, ctx)
        pace = self.pace(scout, swarm.best_position, fw, r, ctx)
        return self.move(swarm, i, pace, ctx)

    def move(self, swarm: Swarm, i: int, pace, ctx: RunContext) -> Move:
        outcome = try_move(swarm.scouts[i], pace, ctx.spec, ctx.counter, ctx.boundary,
                           lambda s, p: self.propose(swarm, i, s, p, ctx))
        ctx.counts[outcome.value] += 1
        return outcome


def pace_label(fw: float, r) -> str:
    if fw == 1.0 or fw == 0.0:
        return "eq3"
    if np.ndim(r) == 0:
        return "eq4" if r < 0 else "eq5"
    return "eq4/5"


def fdo_step(swarm: Swarm, ctx: RunContext, algorithm: FDO | None = None) -> Swarm:
    """One iteration over all scouts in index order."""
    algorithm = algorithm or FDO()
    direction = ctx.spec.direction
    algorithm.begin_iteration(swarm, ctx)
    for i in range(swarm.size):
        swarm.refresh_best(direction)
        algorithm.step_scout(swarm, i, ctx)
    swarm.refresh_best(direction)
    swarm.iteration += 1
    return swarm


def run(spec: ObjectiveSpec, params: FdoParams | None = None, algorithm: FDO | None = None,
        observer=None) -> RunResult:
    """Run ``params.max_iterations`` iterations and return the best point and trace.

    ``observer(swarm, ctx)``, if given, is called after initialisation and after
    every iteration.
    """
    params = params or FdoParams()
    algorithm = algorithm or FDO()
    t0 = time.perf_counter()
    ctx = RunContext(spec, params)
    algorithm.setup(ctx)
    swarm = make_swarm(spec, algorithm.initial_positions(ctx), ctx.counter)
    ctx.state["swarm"] = swarm
    trace = [swarm.best_fitness]
    if observer is not None:
        observer(swarm, ctx)
    for _ in range(params.max_iterations):
        fdo_step(swarm, ctx, algorithm)
        trace.append(swarm.best_fitness)
        if observer is not None:
            observer(swarm, ctx)
    return RunResult(
        best_position=swarm.best_position.copy(),
        best_fitness=swarm.best_fitness,
        trace=np.array(trace),
        evaluations=ctx.counter.evaluations,
        wall_time=time.perf_counter() - t0,
        algorithm=algorithm.name,
        counts=ctx.counts,
    )
