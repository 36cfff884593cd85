"""Run matrices of (algorithm, function, run) cells, optionally across processes."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import benchmarks
from .adaptive import AdaptiveFDO, AdaptiveParams
from .core import FDO, FdoParams, run
from .stochastic import derive_seed
from .variants import CFDO, IFDO, MFDO, MIFDO, CfdoParams, EnhancedFDO, EnhancedFdoParams, MifdoParams

ALGORITHMS = ("fdo", "ifdo", "mfdo", "mifdo", "cfdo", "enhanced", "adaptive")

# override keys understood by each algorithm (besides the shared ones)
_ALGO_KEYS = {
    "fdo": set(),
    "ifdo": set(),
    "mfdo": set(),
    "mifdo": {"lam"},
    "cfdo": {"map"},
    "enhanced": {"m"},
    "adaptive": {"levy_lambda", "th_high", "th_low", "dh", "dl", "refine_map"},
}
SHARED_KEYS = {"wf", "r_mode", "boundary"}


def make_algorithm(name: str, overrides: dict | None = None) -> FDO:
    o = {k: v for k, v in (overrides or {}).items() if v is not None}
    if name == "fdo":
        return FDO()
    if name == "ifdo":
        return IFDO()
    if name == "mfdo":
        return MFDO()
    if name == "mifdo":
        return MIFDO(MifdoParams(**({"lam": o["lam"]} if "lam" in o else {})))
    if name == "cfdo":
        return CFDO(CfdoParams(**({"map_kind": o["map"]} if "map" in o else {})))
    if name == "enhanced":
        return EnhancedFDO(EnhancedFdoParams(**({"m": o["m"]} if "m" in o else {})))
    if name == "adaptive":
        names = {"levy_lambda": "levy_lambda", "th_high": "th_high", "th_low": "th_low",
                 "dh": "delta_high", "dl": "delta_low", "refine_map": "refine_map"}
        return AdaptiveFDO(AdaptiveParams(**{names[k]: v for k, v in o.items() if k in names}))
    raise KeyError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")


@dataclass
class RunConfig:
    algorithms: list
    functions: list | None = None
    suite: str | None = "classical"
    runs: int = 30
    pop_size: int = 30
    iterations: int = 500
    seed: int = 0
    dimension: int | None = None
    overrides: dict = field(default_factory=dict)
    keep_traces: bool = False
    timing: bool = False

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise KeyError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
        for fid in self.function_ids():
            benchmarks.get_function(fid).dimension_or_default(self.dimension)

    def function_ids(self) -> list[str]:
        if self.functions:
            return [benchmarks.get_function(f).id for f in self.functions]
        return benchmarks.list_suite(self.suite or "classical").ids()

    def cells(self) -> list[tuple]:
        return [(a, f, r) for a in self.algorithms for f in self.function_ids()
                for r in range(self.runs)]


@dataclass
class RunRecord:
    algorithm: str
    function: str
    run: int
    seed: int
    best_fitness: float
    evaluations: int
    wall_ms: float | None = None
    trace: np.ndarray | None = field(default=None, repr=False, compare=False)

    def sort_key(self):
        return (self.algorithm, self.function, self.run)


def cell_seed(master_seed: int, algorithm: str, function: str, run_index: int) -> int:
    return derive_seed(master_seed, algorithm, function, run_index)


def run_cell(config: RunConfig, algorithm: str, function: str, run_index: int) -> RunRecord:
    seed = cell_seed(config.seed, algorithm, function, run_index)
    return replay(config, algorithm, function, run_index, seed)


def replay(config: RunConfig, algorithm: str, function: str, run_index: int, seed: int) -> RunRecord:
    """Re-execute one cell from its derived seed."""
    bench = benchmarks.get_function(function)
    spec = bench.objective(config.dimension)
    shared = {k: v for k, v in config.overrides.items() if k in SHARED_KEYS and v is not None}
    params = FdoParams(pop_size=config.pop_size, max_iterations=config.iterations,
                       seed=seed, run_index=0, **shared)
    res = run(spec, params, make_algorithm(algorithm, config.overrides))
    return RunRecord(algorithm, bench.id, run_index, seed, res.best_fitness, res.evaluations,
                     res.wall_time * 1000.0 if config.timing else None,
                     res.trace if config.keep_traces else None)


def _cell(args):
    return run_cell(*args)


def worker_count(default: int | None = None) -> int:
    raw = os.environ.get("FDO_THREADS")
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError("FDO_THREADS must be a positive integer") from None
        if n < 1:
            raise ValueError("FDO_THREADS must be a positive integer")
        return n
    return default or os.cpu_count() or 1


def run_matrix(config: RunConfig, workers: int | None = None) -> list[RunRecord]:
    """Execute every cell and return records sorted by (algorithm, function, run)."""
    jobs = [(config, a, f, r) for a, f, r in config.cells()]
    workers = min(workers or worker_count(), max(len(jobs), 1))
    if workers <= 1:
        records = [_cell(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_cell, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return sorted(records, key=RunRecord.sort_key)
