"""Witness sequences separating discrete Morrey spaces.

The lacunary construction places a solid block of ones around the origin
and, at each level k, an arithmetic progression of 2^{k(v-2)} + 1 ones with
step 2^{kw} ending at 2^{k(v+w)}.  Counting and feasibility checks run in
exact integer/rational arithmetic; floats appear only in norms and fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import Exponents, SparseSequence
from .norms import discrete_norm, weak_norm

THM1 = "thm1"
THM8 = "thm8"
MAX_W = 10**6
MAX_INDEX_BITS = 62


class InfeasibleParameters(ValueError):
    pass


@dataclass(frozen=True)
class CounterexampleParams:
    p1: float
    p2: float
    q: float
    v: int
    w: int
    k0: int
    n_max: int
    mode: str = THM1

    def as_dict(self) -> dict:
        return {"p1": self.p1, "p2": self.p2, "q": self.q, "v": self.v,
                "w": self.w, "k0": self.k0, "n_max": self.n_max, "mode": self.mode}


@dataclass
class GrowthFit:
    levels: list          # [(level, norm)]
    slope: float
    predicted: float
    residual: float

    def as_dict(self) -> dict:
        return {"levels": [{"n": n, "norm": v} for n, v in self.levels],
                "slope": self.slope, "predicted": self.predicted,
                "residual": self.residual}


def _exponent_roles(p1, p2, mode):
    """Return (p_hi, p_lo): the space that the witness escapes, and the one it lies in."""
    if mode == THM1:
        if not p2 < p1:
            raise InfeasibleParameters("thm1 mode needs p2 < p1")
        return p1, p2
    if mode == THM8:
        if not p1 < p2:
            raise InfeasibleParameters("thm8 mode needs p1 < p2")
        return p2, p1
    raise ValueError(f"unknown mode {mode!r}")


def vw_bounds(p1, p2, q, w: int, mode: str = THM1) -> tuple[Fraction, Fraction]:
    """Open interval (lower, upper) that v must fall in for a given w."""
    p_hi, p_lo = _exponent_roles(p1, p2, mode)
    P_hi, P_lo, Q = Fraction(p_hi), Fraction(p_lo), Fraction(q)
    lower = (Q / P_hi - 1) * w + 2 * Q / P_hi
    upper = (Q / P_lo - 1) * w + 2
    return lower, upper


def check_vw(p1, p2, q, v: int, w: int, mode: str = THM1) -> bool:
    lower, upper = vw_bounds(p1, p2, q, w, mode)
    return lower < v < upper


def solve_vw(p1, p2, q, mode: str = THM1) -> tuple[int, int]:
    """Smallest w, then smallest v, with v strictly inside the admissible interval."""
    p_hi, p_lo = _exponent_roles(p1, p2, mode)
    if not (1 <= p_lo and p_hi <= q) or math.isinf(q):
        raise InfeasibleParameters(f"need 1 <= p < p' <= q < inf, got ({p1}, {p2}, {q})")
    P_hi, P_lo, Q = Fraction(p_hi), Fraction(p_lo), Fraction(q)
    # lower(w) = (a*w + b)/D, upper(w) = (c*w + d)/D over a common denominator
    a_, b_ = Q / P_hi - 1, 2 * Q / P_hi
    c_, d_ = Q / P_lo - 1, Fraction(2)
    D = math.lcm(a_.denominator, b_.denominator, c_.denominator)
    a, b, c, d = (int(f * D) for f in (a_, b_, c_, d_))
    for w in range(1, MAX_W + 1):
        v = (a * w + b) // D + 1          # smallest integer strictly above lower
        if v * D < c * w + d:
            return v, w
    raise InfeasibleParameters(f"no (v, w) with w <= {MAX_W}")


def compute_k0(v: int, w: int) -> int:
    """Smallest k >= 1 with 1 - 2^(-2k) > 2^(-(v+w-1))."""
    if v < 1 or w < 1:
        raise ValueError("v and w must be positive integers")
    k = 1
    # multiply through by 2^(2k + v + w - 1)
    while (2 ** (2 * k) - 1) * 2 ** (v + w - 1) <= 2 ** (2 * k):
        k += 1
    return k


def make_params(p1, p2, q, mode: str = THM1, n_max: int = 3) -> CounterexampleParams:
    v, w = solve_vw(p1, p2, q, mode)
    return CounterexampleParams(float(p1), float(p2), float(q), v, w,
                                compute_k0(v, w), n_max, mode)


def _level_offsets(k: int, v: int, w: int) -> np.ndarray:
    top = 2 ** (k * (v + w))
    step = 2 ** (k * w)
    count = 2 ** (k * (v - 2)) + 1
    return top - step * np.arange(count, dtype=np.int64)


def lacunary_support(v: int, w: int, k0: int, n_max: int) -> np.ndarray:
    """Sorted nonnegative support |j| of the lacunary sequence up to level n_max."""
    if v < 2:
        raise ValueError("v must be >= 2")
    if w < 1 or k0 < 1:
        raise ValueError("w and k0 must be >= 1")
    if n_max * (v + w) > MAX_INDEX_BITS:
        raise OverflowError(f"2^{n_max * (v + w)} exceeds the index range")
    parts = [np.arange(2 ** (v + w) + 1, dtype=np.int64)]
    parts += [_level_offsets(k, v, w) for k in range(k0, n_max + 1)]
    return np.unique(np.concatenate(parts))


def gen_lacunary(params: CounterexampleParams) -> SparseSequence:
    pos = lacunary_support(params.v, params.w, params.k0, params.n_max)
    return SparseSequence.indicator(np.concatenate([-pos[::-1], pos[1:]]))


def lacunary_count(v: int, w: int, k0: int, n: int) -> int:
    """Number of support points with |j| <= 2^{n(v+w)}, without materialising them.

    Level k lies in [2^{k(v+w)} (1 - 2^{-2k}), 2^{k(v+w)}], so distinct levels
    are disjoint and only the ones reaching below 2^{v+w} can meet the block.
    """
    block_top = 2 ** (v + w)
    pos = 2 * block_top + 1
    for k in range(k0, n + 1):
        top = 2 ** (k * (v + w))
        step = 2 ** (k * w)
        count = 2 ** (k * (v - 2)) + 1
        lowest = top - step * (count - 1)
        if lowest > block_top:
            pos += 2 * count
        else:
            outside = sum(1 for t in range(count) if top - step * t > block_top)
            pos += 2 * outside
    return pos


def centered_window_value(v: int, w: int, k0: int, n: int, e: Exponents) -> float:
    """Weighted l^p sum on the centred window of radius 2^{n(v+w)} (a lower bound
    for the truncated norm), computed from the exact support count."""
    card = 2 * 2 ** (n * (v + w)) + 1
    count = lacunary_count(v, w, k0, n)
    return math.exp(e.alpha * math.log(card) + math.log(count) / e.p)


def gen_power_sequence(q2: float, K: int) -> SparseSequence:
    """y_0 = 1, y_j = |j|^(-1/q2) for 1 <= |j| <= K."""
    if q2 < 1:
        raise ValueError("q2 must be >= 1")
    if K < 0:
        raise ValueError("K must be >= 0")
    j = np.arange(-K, K + 1, dtype=np.int64)
    vals = np.ones(j.size)
    nz = j != 0
    vals[nz] = np.abs(j[nz]).astype(np.float64) ** (-1.0 / q2)
    return SparseSequence(j, vals)


def gen_block(K: int) -> SparseSequence:
    if K < 0:
        raise ValueError("K must be >= 0")
    return SparseSequence.indicator(range(-K, K + 1))


def fit_log2_slope(xs: Sequence[float], norms: Sequence[float]) -> tuple[float, float]:
    """Least-squares slope of log2(norm) against xs, with the RMS residual."""
    if len(xs) < 3:
        raise ValueError("need at least 3 levels for a growth fit")
    x = np.asarray(xs, dtype=np.float64)
    y = np.log2(np.asarray(norms, dtype=np.float64))
    slope, icpt = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + icpt)) ** 2)))
    return float(slope), resid


def predicted_lacunary_slope(v: int, w: int, e: Exponents) -> float:
    return (v + w) / e.q - w / e.p - 2 / e.p


def growth_fit(params: CounterexampleParams, e: Exponents, levels: Sequence[int],
               weak: bool = False) -> GrowthFit:
    """Fit the growth of truncated lacunary norms over the given levels."""
    levels = sorted(levels)
    if len(levels) < 3:
        raise ValueError("need at least 3 levels for a growth fit")
    norm = weak_norm if weak else discrete_norm
    full = gen_lacunary(CounterexampleParams(**{**params.as_dict(), "n_max": levels[-1]}))
    values = []
    for n in levels:
        xn = full.truncated(2 ** (n * (params.v + params.w)))
        values.append(norm(xn, e).value)
    slope, resid = fit_log2_slope(levels, values)
    return GrowthFit(list(zip(levels, values)), slope,
                     predicted_lacunary_slope(params.v, params.w, e), resid)


def power_growth(q2: float, Ks: Sequence[int], e: Exponents,
                 weak: bool = False, predicted: float = 0.0) -> GrowthFit:
    """Growth of truncated power-sequence norms, slope taken in log2 K.

    Which slope to expect depends on the pair of spaces being separated, so
    the caller supplies ``predicted``.
    """
    Ks = sorted(Ks)
    norm = weak_norm if weak else discrete_norm
    values = [norm(gen_power_sequence(q2, K), e).value for K in Ks]
    slope, resid = fit_log2_slope(np.log2(Ks), values)
    return GrowthFit(list(zip(Ks, values)), slope, predicted, resid)


def successive_ratios(fit: GrowthFit) -> list[float]:
    vals = [v for _, v in fit.levels]
    return [b / a for a, b in zip(vals, vals[1:])]

