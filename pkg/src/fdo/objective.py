"""Problem definition, evaluation counting, direction-aware comparison and box handling."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .stochastic import ChaoticMap, RngStream

MINIMIZE = "minimize"
MAXIMIZE = "maximize"

BOUNDARY_POLICIES = ("clamp", "reflect", "chaotic_reinsert", "random_reinsert")


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class ObjectiveSpec:
    name: str
    lower: np.ndarray
    upper: np.ndarray
    evaluator: Callable[[np.ndarray], float] = field(repr=False)
    direction: str = MINIMIZE

    def __post_init__(self):
        lower = np.array(self.lower, dtype=float).ravel()
        upper = np.array(self.upper, dtype=float).ravel()
        if lower.shape != upper.shape or lower.size == 0:
            raise DimensionError("lower and upper bounds must be non-empty and equally sized")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        if self.direction not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"direction must be {MINIMIZE!r} or {MAXIMIZE!r}")
        lower.flags.writeable = False
        upper.flags.writeable = False
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dimension(self) -> int:
        return self.lower.size

    @classmethod
    def box(cls, name, evaluator, dimension, lo, hi, direction=MINIMIZE):
        return cls(name, np.full(dimension, lo, dtype=float), np.full(dimension, hi, dtype=float),
                   evaluator, direction)


class EvalCounter:
    __slots__ = ("evaluations",)

    def __init__(self):
        self.evaluations = 0

    def __repr__(self):
        return f"EvalCounter({self.evaluations})"


def evaluate(spec: ObjectiveSpec, x, counter: EvalCounter | None = None) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (spec.dimension,):
        raise DimensionError(f"{spec.name}: expected {spec.dimension} coordinates, got shape {x.shape}")
    value = float(spec.evaluator(x))
    if counter is not None:
        counter.evaluations += 1
    return value


def better(a: float, b: float, direction: str = MINIMIZE) -> bool:
    """Strict improvement test: is ``a`` better than ``b``?"""
    return a < b if direction == MINIMIZE else a > b


def best_index(values, direction: str = MINIMIZE) -> int:
    """Index of the first best value."""
    values = np.asarray(values)
    return int(np.argmin(values) if direction == MINIMIZE else np.argmax(values))


def apply_bounds(x, spec: ObjectiveSpec, policy: str = "clamp",
                 source: RngStream | ChaoticMap | None = None) -> np.ndarray:
    """Return a copy of ``x`` with every coordinate inside the box.

    In-range coordinates are left bit-for-bit untouched. ``reflect`` mirrors
    about the violated bound (periodically, for far excursions);
    ``chaotic_reinsert`` and ``random_reinsert`` place each violating coordinate
    at ``lower + (upper - lower) * c`` with ``c`` drawn from ``source``.
    """
    x = np.array(x, dtype=float)
    lo, hi = spec.lower, spec.upper
    out = (x < lo) | (x > hi)
    if not out.any():
        return x
    if policy == "clamp":
        return np.clip(x, lo, hi)
    idx = np.flatnonzero(out)
    if policy == "reflect":
        width = hi[idx] - lo[idx]
        y = np.mod(x[idx] - lo[idx], 2.0 * width)
        y = np.where(y > width, 2.0 * width - y, y)
        x[idx] = np.clip(lo[idx] + y, lo[idx], hi[idx])
        return x
    if policy == "chaotic_reinsert":
        if not isinstance(source, ChaoticMap):
            raise TypeError("chaotic_reinsert needs a ChaoticMap source")
        for k in idx:
            x[k] = min(max(lo[k] + (hi[k] - lo[k]) * source.next(), lo[k]), hi[k])
        return x
    if policy == "random_reinsert":
        if source is None:
            raise TypeError("random_reinsert needs an RngStream source")
        for k in idx:
            x[k] = source.uniform(lo[k], hi[k])
        return x
    raise ValueError(f"unknown boundary policy {policy!r}")


class Boundary:
    """Boundary policy bound to its randomness source, callable on a position."""

    def __init__(self, policy: str = "clamp", source=None):
        if policy not in BOUNDARY_POLICIES:
            raise ValueError(f"unknown boundary policy {policy!r}")
        self.policy = policy
        self.source = source

    def __call__(self, x, spec: ObjectiveSpec) -> np.ndarray:
        return apply_bounds(x, spec, self.policy, self.source)
