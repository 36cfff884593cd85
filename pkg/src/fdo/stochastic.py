"""Randomness sources: seeded streams, chaotic maps, quasi-random sequences, Levy steps."""

from __future__ import annotations

import math
import zlib

import numpy as np

__all__ = [
    "RngStream",
    "ChaoticMap",
    "QuasiSequence",
    "DegenerateSeedError",
    "UnsupportedDimensionError",
    "derive_seed",
    "tag_code",
    "mantegna_sigma",
    "levy_quotient",
    "MAP_KINDS",
]

MASK64 = (1 << 64) - 1


def tag_code(tag: str | int) -> int:
    """Stable non-negative integer for a purpose tag (independent of PYTHONHASHSEED)."""
    if isinstance(tag, int):
        if tag < 0:
            raise ValueError("integer tags must be non-negative")
        return tag
    return zlib.crc32(tag.encode("utf-8"))


def derive_seed(master_seed: int, *keys: str | int) -> int:
    """Mix a master seed and an ordered key tuple into a child 64-bit seed."""
    ss = np.random.SeedSequence(int(master_seed) & MASK64,
                                spawn_key=tuple(tag_code(k) for k in keys))
    lo, hi = ss.generate_state(2, dtype=np.uint32)
    return (int(hi) << 32) | int(lo)


class RngStream:
    """Deterministic uniform/Gaussian/Levy source bound to ``(master_seed, stream_key)``.

    The key is ``(run index, agent index, purpose tag)``. Two streams built from
    the same seed and key emit identical sequences; different keys share no state.
    """

    def __init__(self, master_seed: int, run: int = 0, agent: int = 0, tag: str | int = "main"):
        self.master_seed = int(master_seed) & MASK64
        self.stream_key = (int(run), int(agent), tag)
        seq = np.random.SeedSequence(self.master_seed,
                                     spawn_key=(int(run), int(agent), tag_code(tag)))
        self._gen = np.random.Generator(np.random.PCG64(seq))

    def __repr__(self):
        return f"RngStream(seed={self.master_seed}, key={self.stream_key})"

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        if lo > hi:
            raise ValueError(f"uniform: lo ({lo}) > hi ({hi})")
        if lo == hi:
            return float(lo)
        x = lo + (hi - lo) * self._gen.random()
        return x if x < hi else float(lo)

    def uniform_array(self, size, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        return lo + (hi - lo) * self._gen.random(size)

    def signed_unit(self) -> float:
        """Uniform draw on [-1, 1]."""
        return 2.0 * self._gen.random() - 1.0

    def signed_unit_array(self, size) -> np.ndarray:
        return 2.0 * self._gen.random(size) - 1.0

    def gaussian(self, mean: float = 0.0, sd: float = 1.0) -> float:
        if sd < 0:
            raise ValueError("gaussian: sd must be non-negative")
        z = self._gen.standard_normal()
        if sd == 0:
            return float(mean)
        return mean + sd * z

    def integers(self, lo: int, hi: int, size=None):
        """Integers in ``[lo, hi)``."""
        return self._gen.integers(lo, hi, size=size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def levy(self, lam: float = 1.5) -> float:
        """One Mantegna Levy step ``mu / |v|**(1/lam)``."""
        sigma = mantegna_sigma(lam)
        mu = self.gaussian(0.0, sigma)
        v = self._gen.standard_normal()
        while abs(v) < 1e-300:
            v = self._gen.standard_normal()
        return levy_quotient(mu, v, lam)

    def levy_array(self, size, lam: float = 1.5) -> np.ndarray:
        sigma = mantegna_sigma(lam)
        mu = sigma * self._gen.standard_normal(size)
        v = self._gen.standard_normal(size)
        tiny = np.abs(v) < 1e-300
        while np.any(tiny):
            v[tiny] = self._gen.standard_normal(int(tiny.sum()))
            tiny = np.abs(v) < 1e-300
        return mu / np.abs(v) ** (1.0 / lam)


def _check_lambda(lam: float) -> None:
    if not (0.0 < lam <= 2.0):
        raise ValueError(f"Levy exponent must lie in (0, 2], got {lam}")


def mantegna_sigma(lam: float) -> float:
    """Standard deviation of the numerator draw in Mantegna's algorithm (sigma_v = 1)."""
    _check_lambda(lam)
    num = math.gamma(1.0 + lam) * math.sin(math.pi * lam / 2.0)
    den = math.gamma((1.0 + lam) / 2.0) * lam * 2.0 ** ((lam - 1.0) / 2.0)
    return abs(num / den) ** (1.0 / lam)


def levy_quotient(mu: float, v: float, lam: float) -> float:
    _check_lambda(lam)
    return mu / abs(v) ** (1.0 / lam)


# ---------------------------------------------------------------------------
# chaotic maps

MAP_KINDS = ("logistic", "tent", "singer", "sine", "chebyshev")

DEFAULT_CONTROL = {
    "logistic": 4.0,
    "tent": 2.0,
    "singer": 1.07,
    "sine": 0.3,
    "chebyshev": 4.0,
}

# fractional golden-ratio offset used to leave absorbing states
GOLDEN = 0.6180339887498949


class DegenerateSeedError(ValueError):
    pass


def _raw_step(kind: str, c: float, x: float) -> float:
    # state lives in [0, 1], except chebyshev which lives in [-1, 1]
    if kind == "logistic":
        return c * x * (1.0 - x)
    if kind == "tent":
        return c * x if x < 0.5 else c * (1.0 - x)
    if kind == "singer":
        x2 = x * x
        return c * (7.86 * x - 23.31 * x2 + 28.75 * x2 * x - 13.302875 * x2 * x2)
    if kind == "sine":
        return c / 4.0 * math.sin(math.pi * x)
    if kind == "chebyshev":
        return math.cos(c * math.acos(x))
    raise ValueError(f"unknown chaotic map {kind!r}")


def _domain(kind: str) -> tuple[float, float]:
    return (-1.0, 1.0) if kind == "chebyshev" else (0.0, 1.0)


class ChaoticMap:
    """Iterated one-dimensional chaotic recurrence with output on ``[0, 1]``.

    Parameters
    ----------
    kind : {"logistic", "tent", "singer", "sine", "chebyshev"}
    state : float, default 0.7
        Initial state, in ``[0, 1]`` (``[-1, 1]`` for chebyshev).
    control : float, optional
        Map parameter. Defaults: logistic 4, tent 2, singer 1.07, sine 0.3, chebyshev 4.

    Notes
    -----
    Finite-precision orbits of some maps fall into absorbing states (the tent map
    doubles away its mantissa and lands on 0). When an iterate hits a domain edge
    or repeats the previous state, the orbit is shifted by the fractional golden
    ratio so the stream keeps producing values.
    """

    def __init__(self, kind: str = "singer", state: float = 0.7, control: float | None = None):
        if kind not in MAP_KINDS:
            raise ValueError(f"unknown chaotic map {kind!r}; choose from {MAP_KINDS}")
        self.kind = kind
        self.control = DEFAULT_CONTROL[kind] if control is None else float(control)
        if kind == "sine" and not (0.0 < self.control <= 4.0):
            raise ValueError("sine map control must lie in (0, 4]")
        lo, hi = _domain(kind)
        state = float(state)
        if not (lo <= state <= hi) or math.isnan(state):
            raise ValueError(f"initial state {state} outside [{lo}, {hi}]")
        nxt = _raw_step(kind, self.control, state)
        if state in (lo, hi) or nxt == state or nxt in (lo, hi):
            raise DegenerateSeedError(
                f"state {state} is a fixed point or collapses immediately under the {kind} map")
        self.state = state

    def __repr__(self):
        return f"ChaoticMap({self.kind!r}, state={self.state!r}, control={self.control!r})"

    def next(self) -> float:
        """Advance one step and return the iterate normalised to ``[0, 1]``."""
        kind = self.kind
        x = self.state
        y = _raw_step(kind, self.control, x)
        lo, hi = _domain(kind)
        if y < lo:
            y = lo
        elif y > hi:
            y = hi
        if y == lo or y == hi or y == x:
            y = _unstick(kind, y)
        self.state = y
        return (y + 1.0) / 2.0 if kind == "chebyshev" else y

    __next__ = next

    def __iter__(self):
        return self

    def take(self, n: int) -> np.ndarray:
        return np.array([self.next() for _ in range(n)])


def _unstick(kind: str, y: float) -> float:
    if kind == "chebyshev":
        u = ((y + 1.0) / 2.0 + GOLDEN) % 1.0
        if u == 0.0:
            u = GOLDEN
        return 2.0 * u - 1.0
    u = (y + GOLDEN) % 1.0
    return u if u != 0.0 else GOLDEN


# ---------------------------------------------------------------------------
# quasi-random sequences

# Primitive polynomials and initial direction numbers from the standard 21201-dimension table,
# one entry per dimension. Dimension 0 is the van der Corput sequence.
_SOBOL_POLY = (
    1, 3, 7, 11, 13, 19, 25, 37, 41, 47, 55, 59, 61, 67, 91, 97, 103, 109, 115, 131,
    137, 143, 145, 157, 167, 171, 185, 191, 193, 203, 211, 213, 229, 239, 241, 247,
    253, 285, 299, 301, 333, 351, 355, 357, 361, 369, 391, 397, 425, 451, 463, 487,
    501, 529, 539, 545, 557, 563, 601, 607, 617, 623, 631, 637,
)
_SOBOL_VINIT = (
    (1,), (1,), (1, 3), (1, 3, 1), (1, 1, 1), (1, 1, 3, 3), (1, 3, 5, 13),
    (1, 1, 5, 5, 17), (1, 1, 5, 5, 5), (1, 1, 7, 11, 19), (1, 1, 5, 1, 1),
    (1, 1, 1, 3, 11), (1, 3, 5, 5, 31), (1, 3, 3, 9, 7, 49), (1, 1, 1, 15, 21, 21),
    (1, 3, 1, 13, 27, 49), (1, 1, 1, 15, 7, 5), (1, 3, 1, 15, 13, 25),
    (1, 1, 5, 5, 19, 61), (1, 3, 7, 11, 23, 15, 103), (1, 3, 7, 13, 13, 15, 69),
    (1, 1, 3, 13, 7, 35, 63), (1, 3, 5, 9, 1, 25, 53), (1, 3, 1, 13, 9, 35, 107),
    (1, 3, 1, 5, 27, 61, 31), (1, 1, 5, 11, 19, 41, 61), (1, 3, 5, 3, 3, 13, 69),
    (1, 1, 7, 13, 1, 19, 1), (1, 3, 7, 5, 13, 19, 59), (1, 1, 3, 9, 25, 29, 41),
    (1, 3, 5, 13, 23, 1, 55), (1, 3, 7, 3, 13, 59, 17), (1, 3, 1, 3, 5, 53, 69),
    (1, 1, 5, 5, 23, 33, 13), (1, 1, 7, 7, 1, 61, 123), (1, 1, 7, 9, 13, 61, 49),
    (1, 3, 3, 5, 3, 55, 33), (1, 3, 1, 15, 31, 13, 49, 245), (1, 3, 5, 15, 31, 59, 63, 97),
    (1, 3, 1, 11, 11, 11, 77, 249), (1, 3, 1, 11, 27, 43, 71, 9),
    (1, 1, 7, 15, 21, 11, 81, 45), (1, 3, 7, 3, 25, 31, 65, 79),
    (1, 3, 1, 1, 19, 11, 3, 205), (1, 1, 5, 9, 19, 21, 29, 157),
    (1, 3, 7, 11, 1, 33, 89, 185), (1, 3, 3, 3, 15, 9, 79, 71),
    (1, 3, 7, 11, 15, 39, 119, 27), (1, 1, 3, 1, 11, 31, 97, 225),
    (1, 1, 1, 3, 23, 43, 57, 177), (1, 3, 7, 7, 17, 17, 37, 71),
    (1, 3, 1, 5, 27, 63, 123, 213), (1, 1, 3, 5, 11, 43, 53, 133),
    (1, 3, 5, 5, 29, 17, 47, 173, 479), (1, 3, 3, 11, 3, 1, 109, 9, 69),
    (1, 1, 1, 5, 17, 39, 23, 5, 343), (1, 3, 1, 5, 25, 15, 31, 103, 499),
    (1, 1, 1, 11, 11, 17, 63, 105, 183), (1, 1, 5, 11, 9, 29, 97, 231, 363),
    (1, 1, 5, 15, 19, 45, 41, 7, 383), (1, 3, 7, 7, 31, 19, 83, 137, 221),
    (1, 1, 1, 3, 23, 15, 111, 223, 83), (1, 1, 5, 13, 31, 15, 55, 25, 161),
    (1, 1, 3, 13, 25, 47, 39, 87, 257),
)
SOBOL_MAX_DIM = len(_SOBOL_POLY)
SOBOL_BITS = 32

_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
    83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
    173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257,
    263, 269, 271, 277, 281, 283, 293, 307, 311,
)
HALTON_MAX_DIM = len(_PRIMES)


class UnsupportedDimensionError(ValueError):
    pass


def _sobol_directions(dim: int) -> list[list[int]]:
    out = []
    for j in range(dim):
        poly = _SOBOL_POLY[j]
        s = poly.bit_length() - 1
        v = [0] * (SOBOL_BITS + 1)
        if s == 0:
            for k in range(1, SOBOL_BITS + 1):
                v[k] = 1 << (SOBOL_BITS - k)
        else:
            m = _SOBOL_VINIT[j]
            for k in range(1, s + 1):
                v[k] = m[k - 1] << (SOBOL_BITS - k)
            for k in range(s + 1, SOBOL_BITS + 1):
                val = v[k - s] ^ (v[k - s] >> s)
                for i in range(1, s):
                    if (poly >> (s - i)) & 1:
                        val ^= v[k - i]
                v[k] = val
        out.append(v)
    return out


def _radical_inverse(n: int, base: int) -> float:
    inv = 1.0 / base
    f = inv
    result = 0.0
    while n > 0:
        n, digit = divmod(n, base)
        result += digit * f
        f *= inv
    return result


class QuasiSequence:
    """Unscrambled Sobol or Halton points, starting from index 1.

    Sobol points are produced in natural (not Gray-code) order, so the first
    coordinate runs through the van der Corput sequence 1/2, 1/4, 3/4, 1/8, ...
    """

    def __init__(self, kind: str = "sobol", dimension: int = 1, start: int = 1):
        if kind not in ("sobol", "halton"):
            raise ValueError(f"unknown quasi-random sequence {kind!r}")
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        limit = SOBOL_MAX_DIM if kind == "sobol" else HALTON_MAX_DIM
        if dimension > limit:
            raise UnsupportedDimensionError(
                f"{kind} supports at most {limit} dimensions, got {dimension}")
        if start < 0:
            raise ValueError("start index must be non-negative")
        self.kind = kind
        self.dimension = dimension
        self.next_index = start
        self._dirs = _sobol_directions(dimension) if kind == "sobol" else None

    def point(self, index: int) -> np.ndarray:
        if self.kind == "halton":
            return np.array([_radical_inverse(index, _PRIMES[j]) for j in range(self.dimension)])
        if index >= 1 << SOBOL_BITS:
            raise ValueError("Sobol index exceeds 2**32")
        scale = 1.0 / (1 << SOBOL_BITS)
        out = np.empty(self.dimension)
        for j, v in enumerate(self._dirs):
            x = 0
            n = index
            k = 1
            while n:
                if n & 1:
                    x ^= v[k]
                n >>= 1
                k += 1
            out[j] = x * scale
        return out

    def next(self) -> np.ndarray:
        p = self.point(self.next_index)
        self.next_index += 1
        return p

    def take(self, n: int) -> np.ndarray:
        return np.array([self.next() for _ in range(n)]).reshape(n, self.dimension)

