"""Discrete Morrey norms, weak quasi-norms and a brute-force reference.

The optimised scan rests on one observation: the window weight
``(2N+1)**alpha`` has ``alpha <= 0``, so among all windows covering the same
run of consecutive support points the smallest one scores highest.  The
supremum over all (m, N) is therefore a maximum over the O(s^2) runs of the
support, each scored on its minimal symmetric cover.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (Exponents, NormResult, SparseSequence, Window,
                   cover_cardinality, minimal_cover, window_weight)

SPARSE_RUN = "sparse-run"
DENSE_ORACLE = "dense-oracle"
WEAK_THRESHOLD = "weak-threshold"

ORACLE_BUDGET = 10**8


class OracleBudgetError(ValueError):
    pass


def sup_norm(x: SparseSequence) -> float:
    return float(x.values.max()) if len(x) else 0.0


def lp_norm(x: SparseSequence, p: float) -> float:
    if not len(x):
        return 0.0
    return math.fsum((x.values ** p).tolist()) ** (1.0 / p)


def window_value(x: SparseSequence, win: Window, e: Exponents) -> float:
    """Weighted windowed l^p sum for a single window."""
    lo = int(np.searchsorted(x.indices, win.lo, side="left"))
    hi = int(np.searchsorted(x.indices, win.hi, side="right"))
    if hi == lo:
        return 0.0
    vals = x.values[lo:hi]
    if win.N == 0:
        return float(vals[0])
    total = math.fsum((vals ** e.p).tolist())
    return window_weight(win, e) * total ** (1.0 / e.p)


def _weights(card: np.ndarray, alpha: float) -> np.ndarray:
    if alpha == 0.0:
        return np.ones(card.shape)
    return np.exp(alpha * np.log(card.astype(np.float64)))


def _pick(best, value, cands, idx, start):
    """Fold candidate runs (start, j) into the running best.

    ``best`` is a sort key ``(-value, card, |m|, m, start)`` with the window
    attached; smaller keys win.
    """
    for j in cands:
        win = minimal_cover(idx[start], idx[j])
        key = (-value, win.cardinality, abs(win.m), win.m, start)
        if best is None or key < best[0]:
            best = (key, win)
    return best


def _general_scan(x: SparseSequence, e: Exponents):
    idx, val = x.indices, x.values
    p, alpha = e.p, e.alpha
    pw = val ** p
    inv_p = 1.0 / p
    best = None
    for i in range(len(x)):
        sums = np.cumsum(pw[i:])
        card = cover_cardinality(idx[i:] - idx[i])
        score = _weights(card, alpha) * sums ** inv_p
        score[0] = val[i]
        if not e.finite_q:
            # the windowed power mean never exceeds the run maximum
            score = np.minimum(score, np.maximum.accumulate(val[i:]))
        top = float(score.max())
        if best is not None and top < -best[0][0]:
            continue
        cands = np.flatnonzero(score == top)
        # only the smallest cover cardinality can win the tie-break
        cmin = card[cands].min()
        cands = cands[card[cands] == cmin] + i
        best = _pick(best, top, cands.tolist(), idx, i)
    return best


def _constant_scan(x: SparseSequence, e: Exponents):
    """Run scan for sequences whose values are all equal.

    A run's score depends only on its length r and its span, so for each r
    only the tightest run matters.
    """
    idx = x.indices
    c = float(x.values[0])
    s = len(x)
    dmin = np.empty(s, dtype=np.int64)
    for r in range(1, s + 1):
        dmin[r - 1] = (idx[r - 1:] - idx[:s - r + 1]).min()
    card = cover_cardinality(dmin)
    counts = np.arange(1, s + 1, dtype=np.float64)
    score = c * _weights(card, e.alpha) * counts ** (1.0 / e.p)
    score[0] = c
    if not e.finite_q:
        score = np.minimum(score, c)
    top = float(score.max())
    best = None
    rs = np.flatnonzero(score == top)
    cmin = card[rs].min()
    for r0 in rs[card[rs] == cmin].tolist():
        r = r0 + 1
        d = idx[r - 1:] - idx[:s - r + 1]
        for i in np.flatnonzero(cover_cardinality(d) == cmin).tolist():
            best = _pick(best, top, [i + r - 1], idx, i)
    return best


def discrete_norm(x: SparseSequence, e: Exponents) -> NormResult:
    """Discrete Morrey norm of ``x``.

    Returns the value together with the window where it is attained. Ties go
    to the smallest window, then the smallest |m|, then the smallest m.
    """
    if not len(x):
        return NormResult(0.0, SPARSE_RUN)
    best = _constant_scan(x, e) if x.is_constant() else _general_scan(x, e)
    key, win = best
    return NormResult(-key[0], SPARSE_RUN, witness_window=win)


def threshold_sweep(gammas: np.ndarray, evaluate, exhaustive: bool = False):
    """Maximise ``gamma * evaluate(gamma)`` over descending thresholds.

    ``evaluate`` must be non-increasing in gamma (level sets shrink as the
    threshold rises).  Then every threshold strictly between positions a < b
    scores below ``gammas[a] * evaluate(gammas[b])``, which lets whole
    intervals be discarded.  Returns ``(best position, cache)`` where the
    cache maps evaluated positions to whatever ``evaluate`` returned; its
    ``.value`` attribute is the number being maximised.
    """
    cache = {}

    def level(t):
        if t not in cache:
            cache[t] = evaluate(gammas[t])
        return cache[t]

    def score(t):
        return float(gammas[t]) * level(t).value

    last = len(gammas) - 1
    if exhaustive:
        for t in range(last + 1):
            level(t)
    else:
        best = max(score(0), score(last))
        stack = [(0, last)]
        while stack:
            a, b = stack.pop()
            if b - a <= 1 or gammas[a] * level(b).value <= best:
                continue
            mid = (a + b) // 2
            best = max(best, score(mid))
            stack.append((mid, b))
            stack.append((a, mid))
    t_best = min(cache, key=lambda t: (-score(t), t))
    return t_best, cache


def weak_norm(x: SparseSequence, e: Exponents, exhaustive: bool = False) -> NormResult:
    """Weak-type quasi-norm: the max over distinct values gamma of
    ``gamma * ||1{x >= gamma}||``.

    The sweep is pruned with :func:`threshold_sweep`; ``exhaustive=True``
    evaluates every distinct value.
    """
    if not len(x):
        return NormResult(0.0, WEAK_THRESHOLD)
    gammas = np.unique(x.values)[::-1]
    t, cache = threshold_sweep(gammas, lambda g: discrete_norm(x.level_set(g), e),
                               exhaustive)
    gamma = float(gammas[t])
    return NormResult(gamma * cache[t].value, WEAK_THRESHOLD,
                      witness_window=cache[t].witness_window,
                      witness_threshold=gamma, evaluations=len(cache))


def dense_oracle_norm(x: SparseSequence, e: Exponents, margin: int = 2) -> NormResult:
    """Brute-force maximum over every window with centre within ``margin`` of
    the support hull and radius up to ``span + margin``.

    Meant for differential testing only; refuses more than 10**8 windows.
    """
    if margin < 0:
        raise ValueError("margin must be >= 0")
    if not len(x):
        return NormResult(0.0, DENSE_ORACLE)
    span = x.span
    if (span + 2 * margin) ** 2 > ORACLE_BUDGET:
        raise OracleBudgetError(
            f"dense oracle over span {span} with margin {margin} exceeds budget")
    lo, hi = int(x.indices[0]), int(x.indices[-1])
    n_max = span + margin
    base = lo - margin - n_max
    dense = np.zeros(hi + margin + n_max - base + 1)
    dense[x.indices - base] = x.values ** e.p

    centres = np.arange(lo - margin, hi + margin + 1)
    order = np.lexsort((centres, np.abs(centres)))
    centres = centres[order]
    pos = centres - base
    sums = dense[pos].copy()
    best_val, best_win = -1.0, None
    for N in range(n_max + 1):
        if N:
            sums += dense[pos - N] + dense[pos + N]
        vals = (2 * N + 1) ** e.alpha * sums ** (1.0 / e.p)
        k = int(np.argmax(vals))
        if vals[k] > best_val:
            best_val, best_win = float(vals[k]), Window(int(centres[k]), N)
    return NormResult(best_val, DENSE_ORACLE, witness_window=best_win)
