"""Domain types shared by the norm, verification and embedding modules.

Sequences are finitely supported maps from the integers to positive reals.
Only magnitudes are stored: every quantity computed here depends on
``|x_j|`` alone, and zero entries are represented by absence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

INT64_MAX = 2**63 - 1


class ExponentError(ValueError):
    """Raised for an exponent pair outside 1 <= p <= q <= inf, p finite."""


@dataclass(frozen=True)
class Exponents:
    p: float
    q: float

    @property
    def alpha(self) -> float:
        """Exponent of the window weight, 1/q - 1/p (always <= 0)."""
        return (0.0 if math.isinf(self.q) else 1.0 / self.q) - 1.0 / self.p

    @property
    def finite_q(self) -> bool:
        return not math.isinf(self.q)

    def __str__(self) -> str:
        q = "inf" if math.isinf(self.q) else f"{self.q:g}"
        return f"(p={self.p:g}, q={q})"


def validate_exponents(p, q) -> Exponents:
    """Check and normalise an exponent pair.

    ``q`` may be ``math.inf`` or any of the strings ``"inf"``, ``"infinity"``.
    """
    if isinstance(q, str):
        if q.strip().lower() in ("inf", "infinity", "+inf", "oo"):
            q = math.inf
        else:
            try:
                q = float(q)
            except ValueError:
                raise ExponentError(f"unparseable q: {q!r}") from None
    p = float(p)
    q = float(q)
    if math.isnan(p) or math.isnan(q):
        raise ExponentError("exponents must not be NaN")
    if math.isinf(p):
        raise ExponentError("p = inf is not supported")
    if p < 1:
        raise ExponentError(f"p < 1 (p={p})")
    if q < p:
        raise ExponentError(f"q < p (p={p}, q={q})")
    return Exponents(p, math.inf if math.isinf(q) else q)


@dataclass(frozen=True)
class Window:
    """The index block {m-N, ..., m+N}."""

    m: int
    N: int

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"window radius must be >= 0, got {self.N}")

    @property
    def cardinality(self) -> int:
        return 2 * self.N + 1

    @property
    def lo(self) -> int:
        return self.m - self.N

    @property
    def hi(self) -> int:
        return self.m + self.N

    def __contains__(self, j: int) -> bool:
        return self.lo <= j <= self.hi

    def as_dict(self) -> dict:
        return {"m": self.m, "N": self.N}


def window_weight(win: Window, e: Exponents) -> float:
    """(2N+1)^(1/q - 1/p), evaluated as exp(alpha * ln(2N+1))."""
    if win.N == 0 or e.alpha == 0.0:
        return 1.0
    return math.exp(e.alpha * math.log(win.cardinality))


def cover_cardinality(d):
    """Cardinality of the smallest symmetric window spanning ``d + 1`` indices.

    Works elementwise on integer arrays.
    """
    return d + 1 + (d & 1)


def minimal_cover(a: int, b: int) -> Window:
    """Smallest window containing {a, ..., b}.

    Ties in N (only possible when b - a is odd) go to the smallest |m|, then
    the smallest m.
    """
    a, b = int(a), int(b)
    if a > b:
        raise ValueError(f"minimal_cover needs a <= b, got ({a}, {b})")
    d = b - a
    if d % 2 == 0:
        return Window((a + b) // 2, d // 2)
    N = (d + 1) // 2
    lo, hi = (a + b - 1) // 2, (a + b + 1) // 2
    m = min((lo, hi), key=lambda c: (abs(c), c))
    return Window(m, N)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SparseSequence:
    """Sorted, duplicate-free support indices with strictly positive values."""

    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        idx = np.array(self.indices, dtype=np.int64).reshape(-1)
        val = np.array(self.values, dtype=np.float64).reshape(-1)
        if idx.shape != val.shape:
            raise ValueError("indices and values differ in length")
        if idx.size > 1 and not np.all(np.diff(idx) > 0):
            raise ValueError("indices must be strictly increasing")
        if not np.all(np.isfinite(val)):
            raise ValueError("values must be finite")
        if np.any(val <= 0):
            raise ValueError("stored values must be > 0 (omit zero entries)")
        object.__setattr__(self, "indices", _readonly(idx))
        object.__setattr__(self, "values", _readonly(val))

    @classmethod
    def empty(cls) -> "SparseSequence":
        return cls(np.zeros(0, np.int64), np.zeros(0))

    @classmethod
    def from_mapping(cls, entries: Mapping[int, float]) -> "SparseSequence":
        """Build from ``{index: value}``; zero values are dropped."""
        items = sorted((int(j), float(v)) for j, v in entries.items() if v != 0)
        for j, v in items:
            if v < 0:
                raise ValueError(f"negative value at index {j}")
        return cls([j for j, _ in items], [v for _, v in items])

    @classmethod
    def indicator(cls, indices: Iterable[int]) -> "SparseSequence":
        idx = np.unique(np.fromiter((int(j) for j in indices), dtype=np.int64))
        return cls(idx, np.ones(idx.size))

    def __len__(self) -> int:
        return int(self.indices.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseSequence):
            return NotImplemented
        return (np.array_equal(self.indices, other.indices)
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.indices.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        if len(self) <= 6:
            body = ", ".join(f"{j}: {v!r}" for j, v in self.items())
            return f"SparseSequence({{{body}}})"
        return (f"SparseSequence(<{len(self)} points in "
                f"[{self.indices[0]}, {self.indices[-1]}]>)")

    def items(self):
        return zip(self.indices.tolist(), self.values.tolist())

    def get(self, j: int) -> float:
        k = int(np.searchsorted(self.indices, j))
        if k < len(self) and self.indices[k] == j:
            return float(self.values[k])
        return 0.0

    @property
    def span(self) -> int:
        """max index - min index (0 for empty or single-point sequences)."""
        if len(self) == 0:
            return 0
        return int(self.indices[-1] - self.indices[0])

    def scaled(self, c: float) -> "SparseSequence":
        if c <= 0:
            raise ValueError("scale factor must be > 0")
        return SparseSequence(self.indices, self.values * c)

    def truncated(self, radius: int) -> "SparseSequence":
        """Restriction to |j| <= radius."""
        keep = np.abs(self.indices) <= radius
        return SparseSequence(self.indices[keep], self.values[keep])

    def level_set(self, gamma: float) -> "SparseSequence":
        """Indicator of {j : x_j >= gamma}."""
        keep = self.values >= gamma
        return SparseSequence(self.indices[keep], np.ones(int(keep.sum())))

    def is_constant(self) -> bool:
        return len(self) > 0 and bool(np.all(self.values == self.values[0]))


@dataclass(frozen=True)
class NormResult:
    value: float
    method: str
    witness_window: Optional[Window] = None
    witness_threshold: Optional[float] = None
    evaluations: int = field(default=0, compare=False)

    def as_dict(self) -> dict:
        out = {"value": self.value, "method": self.method}
        if self.witness_window is not None:
            out["witness_window"] = self.witness_window.as_dict()
        if self.witness_threshold is not None:
            out["witness_threshold"] = self.witness_threshold
        return out
