"""Step-function embedding of sequences and grid estimates of Morrey norms on R.

A sequence x becomes the function equal to x_j on [j, j+1).  Its Morrey norm
is a supremum over real intervals; here interval endpoints are restricted to
the lattice (1/M)Z, which gives a lower bound that can only grow as M is
refined to a multiple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import Exponents, SparseSequence
from .norms import ORACLE_BUDGET, OracleBudgetError, threshold_sweep


@dataclass(frozen=True)
class StepFunction:
    cells: SparseSequence   # value on [j, j+1) for each stored j
    p: float

    def __len__(self) -> int:
        return len(self.cells)

    def indicator(self, lam: float) -> "StepFunction":
        return StepFunction(self.cells.level_set(lam), self.p)

    def integral(self, u: float, v: float, power: float) -> float:
        """Integral of f**power over [u, v], cell by cell."""
        total = 0.0
        for j, val in self.cells.items():
            overlap = min(v, j + 1) - max(u, j)
            if overlap > 0:
                total += overlap * val ** power
        return total

    def as_dict(self) -> dict:
        return {"p": self.p,
                "cells": [{"lo": j, "hi": j + 1, "value": v} for j, v in self.cells.items()]}


@dataclass(frozen=True)
class GridNormEstimate:
    M: int
    value: float
    # witness endpoints in grid units: the interval is [lo/M, hi/M]
    lo: Optional[int] = None
    hi: Optional[int] = None
    threshold: Optional[float] = None

    @property
    def interval(self) -> Optional[tuple[Fraction, Fraction]]:
        if self.lo is None:
            return None
        return Fraction(self.lo, self.M), Fraction(self.hi, self.M)

    def as_dict(self) -> dict:
        out = {"M": self.M, "value": self.value}
        if self.lo is not None:
            out["witness"] = {"u": self.lo / self.M, "v": self.hi / self.M}
        if self.threshold is not None:
            out["threshold"] = self.threshold
        return out


def embed_step(x: SparseSequence, p: float) -> StepFunction:
    """Cell values are x_j themselves: the p-th root in the embedding and the
    p-th power in the norm cancel on each cell."""
    if p < 1:
        raise ValueError("p must be >= 1")
    return StepFunction(x, float(p))


def _score(length, mass, e: Exponents):
    mass = np.maximum(mass, 0.0)
    if e.alpha == 0.0:
        return mass ** (1.0 / e.p)
    return np.exp(e.alpha * np.log(length)) * mass ** (1.0 / e.p)


def continuous_norm_grid(f: StepFunction, e: Exponents, M: int = 8,
                         odd_integer: bool = False) -> GridNormEstimate:
    """Lower bound of the Morrey norm of ``f`` from intervals with endpoints on (1/M)Z.

    Shrinking an endpoint across a zero cell keeps the integral and shortens
    the interval, so only endpoints inside support cells (left endpoints in
    [j, j+1), right endpoints in (j, j+1]) need scoring.

    With ``odd_integer=True`` only the intervals [m-N, m+N+1] are allowed;
    those reproduce the discrete windows exactly.
    """
    if M < 1:
        raise ValueError("M must be >= 1")
    if odd_integer:
        M = 1
    if not len(f):
        return GridNormEstimate(M, 0.0)
    s = len(f)
    if (s * M) ** 2 > ORACLE_BUDGET:
        raise OracleBudgetError(f"{s} cells at refinement {M} exceed the interval budget")
    idx = f.cells.indices
    pw = f.cells.values ** e.p
    prefix = np.concatenate(([0.0], np.cumsum(pw)))
    if odd_integer:
        return _odd_integer_scan(idx, prefix, e)

    k = np.arange(M)
    U = (M * idx[:, None] + k).ravel()
    FU = (prefix[:-1, None] + pw[:, None] * (k / M)).ravel()
    V = (M * idx[:, None] + k + 1).ravel()
    FV = (prefix[:-1, None] + pw[:, None] * ((k + 1) / M))
    FV[:, -1] = prefix[1:]
    FV = FV.ravel()

    best_val, best = -1.0, (None, None)
    for r in range(U.size):
        start = int(np.searchsorted(V, U[r], side="right"))
        if start == V.size:
            continue
        length = (V[start:] - U[r]) / M
        vals = _score(length, FV[start:] - FU[r], e)
        c = int(np.argmax(vals))
        if vals[c] > best_val:
            best_val, best = float(vals[c]), (int(U[r]), int(V[start + c]))
    return GridNormEstimate(M, best_val, best[0], best[1])


def _odd_integer_scan(idx, prefix, e: Exponents) -> GridNormEstimate:
    best_val, best = -1.0, (None, None)
    for a in range(idx.size):
        u = idx[a]
        span = idx[a:] - u + 1
        length = span + (1 - span % 2)
        v = u + length
        # cells with index < v lie entirely inside [u, v]
        mass = prefix[np.searchsorted(idx, v, side="left")] - prefix[a]
        vals = _score(length.astype(np.float64), mass, e)
        c = int(np.argmax(vals))
        if vals[c] > best_val:
            best_val, best = float(vals[c]), (int(u), int(v[c]))
    return GridNormEstimate(1, best_val, best[0], best[1])


def weak_continuous_norm_grid(f: StepFunction, e: Exponents, M: int = 8,
                              odd_integer: bool = False,
                              exhaustive: bool = False) -> GridNormEstimate:
    """Max over distinct cell values lam of lam * grid norm of the indicator of {f >= lam}."""
    if not len(f):
        return GridNormEstimate(1 if odd_integer else M, 0.0)
    lams = np.unique(f.cells.values)[::-1]
    t, cache = threshold_sweep(
        lams, lambda lam: continuous_norm_grid(f.indicator(lam), e, M, odd_integer),
        exhaustive)
    lam = float(lams[t])
    est = cache[t]
    return GridNormEstimate(est.M, lam * est.value, est.lo, est.hi, threshold=lam)


def brute_grid_norm(f: StepFunction, e: Exponents, M: int) -> float:
    """Every lattice interval inside [hull - 1, hull + 1], scored by direct
    cellwise integration.  Quadratic in the hull length; tests only."""
    if not len(f):
        return 0.0
    lo = int(f.cells.indices[0]) - 1
    hi = int(f.cells.indices[-1]) + 2
    pts = [Fraction(g, M) for g in range(lo * M, hi * M + 1)]
    best = 0.0
    for a, u in enumerate(pts):
        for v in pts[a + 1:]:
            mass = f.integral(float(u), float(v), e.p)
            if mass > 0:
                val = float(v - u) ** e.alpha * mass ** (1.0 / e.p)
                best = max(best, val)
    return best
