"""Benchmark functions: a 19-function classical suite (TF1-TF19) and a CEC2019-like suite (CEC01-CEC10).

TF index mapping used by this package::

    TF1  sphere            TF8  schwefel_2_26     TF15 kowalik
    TF2  schwefel_2_22     TF9  rastrigin         TF16 six_hump_camel
    TF3  schwefel_1_2      TF10 ackley            TF17 branin
    TF4  schwefel_2_21     TF11 griewank          TF18 goldstein_price
    TF5  rosenbrock        TF12 penalized_1       TF19 hartmann_3
    TF6  step              TF13 penalized_2
    TF7  quartic           TF14 shekel_foxholes

The CEC2019 functions follow the 100-Digit Challenge definitions (optimum value
1 everywhere). Shift and rotation default to identity; official data can be
attached with :func:`load_transform`, otherwise results are "CEC2019-like".
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable

import numpy as np

from .objective import DimensionError, ObjectiveSpec
from .stochastic import RngStream

__all__ = [
    "BenchmarkFunction",
    "Suite",
    "TransformError",
    "eval_function",
    "get_function",
    "list_suite",
    "load_transform",
    "all_functions",
    "make_noisy_quartic",
    "known_optimum_value",
]


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class BenchmarkFunction:
    id: str
    name: str
    base: Callable[[np.ndarray], float] = field(repr=False)
    default_dimension: int
    lower: float | tuple
    upper: float | tuple
    scalable: bool = True
    known_optimum_value: float | None = None
    # optimum in transformed coordinates, as a function of dimension
    optimum_z: Callable[[int], np.ndarray] | None = field(default=None, repr=False)
    shift: np.ndarray | None = field(default=None, repr=False)
    rotation: np.ndarray | None = field(default=None, repr=False)
    noisy: bool = False
    category: str = ""

    def dimension_or_default(self, dim: int | None) -> int:
        if dim is None:
            return self.default_dimension
        if not self.scalable and dim != self.default_dimension:
            raise DimensionError(f"{self.id} is fixed at dimension {self.default_dimension}")
        if dim < 1:
            raise DimensionError("dimension must be positive")
        if self.shift is not None and dim != self.shift.size:
            raise DimensionError(f"{self.id} transform is {self.shift.size}-dimensional")
        return dim

    def bounds(self, dim: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        d = self.dimension_or_default(dim)
        lo = np.broadcast_to(np.asarray(self.lower, dtype=float), (d,)).copy()
        hi = np.broadcast_to(np.asarray(self.upper, dtype=float), (d,)).copy()
        return lo, hi

    def transform_point(self, x: np.ndarray) -> np.ndarray:
        z = x if self.shift is None else x - self.shift
        if self.rotation is not None:
            z = self.rotation @ z
        return z

    def __call__(self, x) -> float:
        return float(self.base(self.transform_point(np.asarray(x, dtype=float))))

    def known_optimum_location(self, dim: int | None = None) -> np.ndarray | None:
        if self.optimum_z is None:
            return None
        d = self.dimension_or_default(dim)
        z = np.asarray(self.optimum_z(d), dtype=float)
        x = z if self.rotation is None else self.rotation.T @ z
        return x if self.shift is None else x + self.shift

    def objective(self, dim: int | None = None) -> ObjectiveSpec:
        lo, hi = self.bounds(dim)
        return ObjectiveSpec(self.id, lo, hi, self)

    def with_transform(self, shift=None, rotation=None) -> "BenchmarkFunction":
        return replace(
            self,
            shift=None if shift is None else np.asarray(shift, dtype=float),
            rotation=None if rotation is None else np.asarray(rotation, dtype=float),
        )


def eval_function(f: BenchmarkFunction, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise DimensionError("expected a 1-D point")
    f.dimension_or_default(x.size)
    return f(x)


# ---------------------------------------------------------------------------
# classical formulas


def sphere(x):
    return float(np.dot(x, x))


def schwefel_2_22(x):
    a = np.abs(x)
    return float(a.sum() + a.prod())


def schwefel_1_2(x):
    c = np.cumsum(x)
    return float(np.dot(c, c))


def schwefel_2_21(x):
    return float(np.max(np.abs(x)))


def rosenbrock(x):
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (x[:-1] - 1.0) ** 2))


def step(x):
    s = np.floor(x + 0.5)
    return float(np.dot(s, s))


def quartic(x):
    return float(np.dot(np.arange(1, x.size + 1), x ** 4))


SCHWEFEL_OPT_X = 420.9687462275036
SCHWEFEL_OPT_F = -418.9828872724338


def schwefel_2_26(x):
    return float(-np.dot(x, np.sin(np.sqrt(np.abs(x)))))


def rastrigin(x):
    return float(np.sum(x * x - 10.0 * np.cos(2.0 * math.pi * x) + 10.0))


def ackley(x):
    n = x.size
    return float(-20.0 * math.exp(-0.2 * math.sqrt(np.dot(x, x) / n))
                 - math.exp(np.sum(np.cos(2.0 * math.pi * x)) / n) + 20.0 + math.e)


def griewank(x):
    i = np.arange(1, x.size + 1)
    return float(np.dot(x, x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def _u(x, a, k, m):
    return np.where(x > a, k * (x - a) ** m, np.where(x < -a, k * (-x - a) ** m, 0.0))


def penalized_1(x):
    n = x.size
    y = 1.0 + (x + 1.0) / 4.0
    s = 10.0 * math.sin(math.pi * y[0]) ** 2
    s += np.sum((y[:-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(math.pi * y[1:]) ** 2))
    s += (y[-1] - 1.0) ** 2
    return float(math.pi / n * s + np.sum(_u(x, 10.0, 100.0, 4)))


def penalized_2(x):
    s = math.sin(3.0 * math.pi * x[0]) ** 2
    s += np.sum((x[:-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * math.pi * x[1:]) ** 2))
    s += (x[-1] - 1.0) ** 2 * (1.0 + math.sin(2.0 * math.pi * x[-1]) ** 2)
    return float(0.1 * s + np.sum(_u(x, 5.0, 100.0, 4)))


_FOX_A = np.array([np.tile([-32.0, -16.0, 0.0, 16.0, 32.0], 5),
                   np.repeat([-32.0, -16.0, 0.0, 16.0, 32.0], 5)])
_FOX_J = np.arange(1, 26, dtype=float)


def shekel_foxholes(x):
    t = _FOX_J + (x[0] - _FOX_A[0]) ** 6 + (x[1] - _FOX_A[1]) ** 6
    return float(1.0 / (1.0 / 500.0 + np.sum(1.0 / t)))


_KOW_A = np.array([0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627,
                   0.0456, 0.0342, 0.0323, 0.0235, 0.0246])
_KOW_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])


def kowalik(x):
    b = _KOW_B
    r = _KOW_A - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3])
    return float(np.dot(r, r))


def six_hump_camel(x):
    x1, x2 = x
    return float(4 * x1 ** 2 - 2.1 * x1 ** 4 + x1 ** 6 / 3 + x1 * x2 - 4 * x2 ** 2 + 4 * x2 ** 4)


def branin(x):
    x1, x2 = x
    t = x2 - 5.1 / (4 * math.pi ** 2) * x1 ** 2 + 5 / math.pi * x1 - 6
    return float(t * t + 10 * (1 - 1 / (8 * math.pi)) * math.cos(x1) + 10)


def goldstein_price(x):
    x1, x2 = x
    a = 1 + (x1 + x2 + 1) ** 2 * (19 - 14 * x1 + 3 * x1 ** 2 - 14 * x2 + 6 * x1 * x2 + 3 * x2 ** 2)
    b = 30 + (2 * x1 - 3 * x2) ** 2 * (18 - 32 * x1 + 12 * x1 ** 2 + 48 * x2 - 36 * x1 * x2 + 27 * x2 ** 2)
    return float(a * b)


_H3_A = np.array([[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]])
_H3_C = np.array([1.0, 1.2, 3.0, 3.2])
_H3_P = np.array([[0.3689, 0.1170, 0.2673], [0.4699, 0.4387, 0.7470],
                  [0.1091, 0.8732, 0.5547], [0.03815, 0.5743, 0.8828]])


def hartmann_3(x):
    return float(-np.dot(_H3_C, np.exp(-np.sum(_H3_A * (x - _H3_P) ** 2, axis=1))))


def make_noisy_quartic(seed: int = 0) -> BenchmarkFunction:
    """Quartic with additive U[0,1) noise. Not deterministic; excluded from the suites."""
    stream = RngStream(seed, 0, 0, "quartic-noise")

    def noisy(x):
        return quartic(x) + stream.uniform(0.0, 1.0)

    return BenchmarkFunction("TF7N", "quartic_noise", noisy, 10, -1.28, 1.28,
                             known_optimum_value=None, noisy=True, category="unimodal")


def _const(v):
    return lambda d: np.full(d, float(v))


def _fixed(v):
    v = np.asarray(v, dtype=float)
    return lambda d: v


SCALABLE_DIM = 10

_CLASSICAL = [
    BenchmarkFunction("TF1", "sphere", sphere, SCALABLE_DIM, -100.0, 100.0, True, 0.0,
                      _const(0), category="unimodal"),
    BenchmarkFunction("TF2", "schwefel_2_22", schwefel_2_22, SCALABLE_DIM, -10.0, 10.0, True, 0.0,
                      _const(0), category="unimodal"),
    BenchmarkFunction("TF3", "schwefel_1_2", schwefel_1_2, SCALABLE_DIM, -100.0, 100.0, True, 0.0,
                      _const(0), category="unimodal"),
    BenchmarkFunction("TF4", "schwefel_2_21", schwefel_2_21, SCALABLE_DIM, -100.0, 100.0, True, 0.0,
                      _const(0), category="unimodal"),
    BenchmarkFunction("TF5", "rosenbrock", rosenbrock, SCALABLE_DIM, -30.0, 30.0, True, 0.0,
                      _const(1), category="valley"),
    BenchmarkFunction("TF6", "step", step, SCALABLE_DIM, -100.0, 100.0, True, 0.0,
                      _const(0), category="plate"),
    BenchmarkFunction("TF7", "quartic", quartic, SCALABLE_DIM, -1.28, 1.28, True, 0.0,
                      _const(0), category="unimodal"),
    BenchmarkFunction("TF8", "schwefel_2_26", schwefel_2_26, SCALABLE_DIM, -500.0, 500.0, True,
                      None, _const(SCHWEFEL_OPT_X), category="multimodal"),
    BenchmarkFunction("TF9", "rastrigin", rastrigin, SCALABLE_DIM, -5.12, 5.12, True, 0.0,
                      _const(0), category="multimodal"),
    BenchmarkFunction("TF10", "ackley", ackley, SCALABLE_DIM, -32.0, 32.0, True, 0.0,
                      _const(0), category="multimodal"),
    BenchmarkFunction("TF11", "griewank", griewank, SCALABLE_DIM, -600.0, 600.0, True, 0.0,
                      _const(0), category="multimodal"),
    BenchmarkFunction("TF12", "penalized_1", penalized_1, SCALABLE_DIM, -50.0, 50.0, True, 0.0,
                      _const(-1), category="multimodal"),
    BenchmarkFunction("TF13", "penalized_2", penalized_2, SCALABLE_DIM, -50.0, 50.0, True, 0.0,
                      _const(1), category="multimodal"),
    BenchmarkFunction("TF14", "shekel_foxholes", shekel_foxholes, 2, -65.536, 65.536, False,
                      0.9980038377944496,
                      _fixed([-31.978334214983256, -31.97833392801104]), category="fixed"),
    BenchmarkFunction("TF15", "kowalik", kowalik, 4, -5.0, 5.0, False, 3.0748598780e-4,
                      _fixed([0.19283345304274813, 0.19083624027597035,
                              0.12311729907598006, 0.13576599033984466]), category="fixed"),
    BenchmarkFunction("TF16", "six_hump_camel", six_hump_camel, 2, -5.0, 5.0, False,
                      -1.0316284534898774,
                      _fixed([0.08984200595422402, -0.7126564090221228]), category="fixed"),
    BenchmarkFunction("TF17", "branin", branin, 2, (-5.0, 0.0), (10.0, 15.0), False,
                      0.39788735772973816, _fixed([math.pi, 2.275]), category="fixed"),
    BenchmarkFunction("TF18", "goldstein_price", goldstein_price, 2, -2.0, 2.0, False, 3.0,
                      _fixed([0.0, -1.0]), category="fixed"),
    BenchmarkFunction("TF19", "hartmann_3", hartmann_3, 3, 0.0, 1.0, False, -3.86278214782076,
                      _fixed([0.11461436355027194, 0.5556488440460458, 0.8525469459120257]),
                      category="fixed"),
]


def schwefel_optimum(dim: int) -> float:
    return SCHWEFEL_OPT_F * dim


# ---------------------------------------------------------------------------
# CEC2019 (100-Digit Challenge), optimum value 1


def _chebyshev_T(n: int, t: float) -> float:
    a, b = 1.0, t
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, 2.0 * t * b - a
    return b


def storn_chebyshev(z):
    """Fit a degree D-1 polynomial inside the Chebyshev tube (optimum: T_{D-1} coefficients)."""
    D = z.size
    d = _chebyshev_T(D - 1, 1.2)
    m = 32 * D
    ts = -1.0 + 2.0 * np.arange(m + 1) / m
    vals = np.zeros(m + 1)
    for c in z:
        vals = vals * ts + c
    u = 0.0
    v = 0.0
    for c in z:
        u = u * 1.2 + c
        v = v * -1.2 + c
    p1 = (u - d) ** 2 if u < d else 0.0
    p2 = (v - d) ** 2 if v < d else 0.0
    over = np.where(vals > 1.0, (vals - 1.0) ** 2, 0.0) + np.where(vals < -1.0, (vals + 1.0) ** 2, 0.0)
    return p1 + p2 + float(over.sum()) + 1.0


def _chebyshev_coefficients(n: int) -> np.ndarray:
    # T_n coefficients, highest power first
    prev, cur = np.array([1.0]), np.array([1.0, 0.0])
    if n == 0:
        return prev
    for _ in range(n - 1):
        nxt = 2.0 * np.append(cur, 0.0)
        nxt[2:] -= prev
        prev, cur = cur, nxt
    return cur


def inverse_hilbert(z):
    n = int(round(math.sqrt(z.size)))
    if n * n != z.size:
        raise DimensionError("inverse Hilbert needs a square number of variables")
    i = np.arange(n)
    H = 1.0 / (i[:, None] + i[None, :] + 1.0)
    W = H @ z.reshape(n, n) - np.eye(n)
    return float(np.abs(W).sum()) + 1.0


def _inverse_hilbert_opt(d):
    n = int(round(math.sqrt(d)))
    i = np.arange(n)
    H = 1.0 / (i[:, None] + i[None, :] + 1.0)
    return np.round(np.linalg.inv(H)).ravel()


# minimum of sum_{pairs} (r^-12 - 2 r^-6) for six atoms (regular octahedron)
_LJ6_C12 = 12.0 + 3.0 / 64.0
_LJ6_C6 = 24.0 + 3.0 / 4.0
LJ6_MIN = -_LJ6_C6 ** 2 / (4.0 * _LJ6_C12)


def lennard_jones(z):
    atoms = z.reshape(-1, 3)
    k = atoms.shape[0]
    iu = np.triu_indices(k, 1)
    diff = atoms[:, None, :] - atoms[None, :, :]
    r2 = np.sum(diff * diff, axis=-1)[iu]
    r2 = np.maximum(r2, 1e-300)
    inv6 = 1.0 / (r2 * r2 * r2)
    return float(np.sum(inv6 * inv6 - 2.0 * inv6)) - LJ6_MIN + 1.0


def _lj6_opt(d):
    s = _LJ6_C6 / (2.0 * _LJ6_C12)
    edge = s ** (-1.0 / 6.0)
    h = edge / math.sqrt(2.0)
    return np.array([[h, 0, 0], [-h, 0, 0], [0, h, 0], [0, -h, 0], [0, 0, h], [0, 0, -h]]).ravel()


def cec_rastrigin(z):
    z = z * (5.12 / 100.0)
    return rastrigin(z) + 1.0


def cec_griewank(z):
    z = z * (600.0 / 100.0)
    return griewank(z) + 1.0


def cec_weierstrass(z, a=0.5, b=3.0, kmax=20):
    z = z * (0.5 / 100.0)
    k = np.arange(kmax + 1)
    ak = a ** k
    bk = b ** k
    per = np.sum(ak[None, :] * np.cos(2.0 * math.pi * bk[None, :] * (z[:, None] + 0.5)), axis=1)
    ref = np.sum(ak * np.cos(2.0 * math.pi * bk * 0.5))
    return float(np.sum(per) - z.size * ref) + 1.0


def cec_schwefel(z):
    n = z.size
    z = z * (1000.0 / 100.0) + SCHWEFEL_OPT_X
    total = 0.0
    for zi in z:
        if zi > 500.0:
            m = 500.0 - math.fmod(zi, 500.0)
            total -= m * math.sin(math.sqrt(m))
            total += ((zi - 500.0) / 100.0) ** 2 / n
        elif zi < -500.0:
            m = -500.0 + math.fmod(abs(zi), 500.0)
            total -= m * math.sin(math.sqrt(abs(m)))
            total += ((zi + 500.0) / 100.0) ** 2 / n
        else:
            total -= zi * math.sin(math.sqrt(abs(zi)))
    return total + 4.189828872724338e2 * n + 1.0


def cec_expanded_schaffer_f6(z):
    zn = np.roll(z, -1)
    s = z * z + zn * zn
    return float(np.sum(0.5 + (np.sin(np.sqrt(s)) ** 2 - 0.5) / (1.0 + 0.001 * s) ** 2)) + 1.0


def cec_happy_cat(z, alpha=1.0 / 8.0):
    n = z.size
    z = z * (5.0 / 100.0) - 1.0
    r2 = float(np.dot(z, z))
    return abs(r2 - n) ** (2.0 * alpha) + (0.5 * r2 + float(z.sum())) / n + 0.5 + 1.0


def cec_ackley(z):
    return ackley(z) + 1.0


_CEC = [
    BenchmarkFunction("CEC01", "storn_chebyshev", storn_chebyshev, 9, -8192.0, 8192.0, False, 1.0,
                      lambda d: _chebyshev_coefficients(d - 1), category="cec2019"),
    BenchmarkFunction("CEC02", "inverse_hilbert", inverse_hilbert, 16, -16384.0, 16384.0, False, 1.0,
                      _inverse_hilbert_opt, category="cec2019"),
    BenchmarkFunction("CEC03", "lennard_jones", lennard_jones, 18, -4.0, 4.0, False, 1.0,
                      _lj6_opt, category="cec2019"),
    BenchmarkFunction("CEC04", "rastrigin", cec_rastrigin, 10, -100.0, 100.0, True, 1.0,
                      _const(0), category="cec2019"),
    BenchmarkFunction("CEC05", "griewank", cec_griewank, 10, -100.0, 100.0, True, 1.0,
                      _const(0), category="cec2019"),
    BenchmarkFunction("CEC06", "weierstrass", cec_weierstrass, 10, -100.0, 100.0, True, 1.0,
                      _const(0), category="cec2019"),
    BenchmarkFunction("CEC07", "modified_schwefel", cec_schwefel, 10, -100.0, 100.0, True, 1.0,
                      _const(0), category="cec2019"),
    BenchmarkFunction("CEC08", "expanded_schaffer_f6", cec_expanded_schaffer_f6, 10, -100.0, 100.0,
                      True, 1.0, _const(0), category="cec2019"),
    BenchmarkFunction("CEC09", "happy_cat", cec_happy_cat, 10, -100.0, 100.0, True, 1.0,
                      _const(0), category="cec2019"),
    BenchmarkFunction("CEC10", "ackley", cec_ackley, 10, -100.0, 100.0, True, 1.0,
                      _const(0), category="cec2019"),
]


@dataclass(frozen=True)
class Suite:
    name: str
    functions: tuple

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def ids(self) -> list[str]:
        return [f.id for f in self.functions]


_SUITES = {
    "classical": Suite("classical", tuple(_CLASSICAL)),
    "cec2019": Suite("cec2019", tuple(_CEC)),
}
_BY_ID = {f.id: f for f in _CLASSICAL + _CEC}


def list_suite(name: str) -> Suite:
    try:
        return _SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(_SUITES)}") from None


def all_functions() -> list[BenchmarkFunction]:
    return list(_BY_ID.values())


def get_function(fid: str) -> BenchmarkFunction:
    try:
        return _BY_ID[fid.upper()]
    except KeyError:
        raise KeyError(f"unknown function {fid!r}") from None


def known_optimum_value(f: BenchmarkFunction, dim: int | None = None) -> float | None:
    if f.id == "TF8":
        return schwefel_optimum(f.dimension_or_default(dim))
    return f.known_optimum_value


# ---------------------------------------------------------------------------
# transforms


def read_transform(path) -> tuple[np.ndarray, np.ndarray]:
    """Parse a transform file: ``d``, then d shift values, then d rows of d rotation values."""
    lines = [ln.split() for ln in Path(path).read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or len(lines[0]) != 1:
        raise TransformError("first line must hold the dimension")
    try:
        d = int(lines[0][0])
        rest = [[float(t) for t in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise TransformError(f"malformed transform file: {exc}") from None
    if d < 1:
        raise TransformError("dimension must be positive")
    shift: list[float] = []
    k = 0
    while len(shift) < d and k < len(rest):
        shift.extend(rest[k])
        k += 1
    if len(shift) != d:
        raise TransformError(f"expected {d} shift values, got {len(shift)}")
    rows = rest[k:]
    if len(rows) != d or any(len(r) != d for r in rows):
        raise TransformError(f"rotation must be a {d}x{d} matrix")
    return np.array(shift), np.array(rows)


def load_transform(f: BenchmarkFunction, path, atol: float = 1e-6) -> BenchmarkFunction:
    shift, rot = read_transform(path)
    d = shift.size
    if not f.scalable and d != f.default_dimension:
        raise TransformError(f"{f.id} needs a {f.default_dimension}-dimensional transform")
    if not np.allclose(rot @ rot.T, np.eye(d), rtol=0.0, atol=atol):
        raise TransformError("rotation matrix is not orthonormal")
    return f.with_transform(shift, rot)


def write_transform(path, shift, rotation) -> None:
    shift = np.asarray(shift, dtype=float)
    rotation = np.asarray(rotation, dtype=float)
    lines = [str(shift.size), " ".join(repr(float(v)) for v in shift)]
    lines += [" ".join(repr(float(v)) for v in row) for row in rotation]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
