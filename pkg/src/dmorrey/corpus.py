"""Seeded random sequence corpora.

``uniform-v1``: support size uniform on {1, ..., 50}; indices drawn without
replacement from [-200, 200]; values uniform on (0, 10].  Built on
``numpy.random.default_rng(seed)`` (PCG64), so a seed fixes the corpus on
every platform.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Exponents, SparseSequence, validate_exponents

GENERATOR = "uniform-v1"
MAX_SUPPORT = 50
INDEX_RANGE = (-200, 200)
MAX_VALUE = 10.0


def random_sequence(rng: np.random.Generator, max_support: int = MAX_SUPPORT,
                    index_range=INDEX_RANGE, max_value: float = MAX_VALUE) -> SparseSequence:
    lo, hi = index_range
    size = int(rng.integers(1, max_support + 1))
    idx = np.sort(rng.choice(np.arange(lo, hi + 1), size=size, replace=False))
    vals = max_value * (1.0 - rng.random(size))
    return SparseSequence(idx, vals)


def random_corpus(n: int, seed: int, **kwargs) -> list[SparseSequence]:
    rng = np.random.default_rng(seed)
    return [random_sequence(rng, **kwargs) for _ in range(n)]


def random_exponents(rng: np.random.Generator, q_max: float = 4.0,
                     p_inf: float = 0.2) -> Exponents:
    """p uniform on [1, q_max]; q = inf with probability ``p_inf``, else uniform on [p, q_max]."""
    p = float(rng.uniform(1.0, q_max))
    if rng.random() < p_inf:
        return validate_exponents(p, math.inf)
    return validate_exponents(p, float(rng.uniform(p, q_max)))


def integer_corpus(n: int, seed: int) -> list[SparseSequence]:
    """0/1 and small-integer sequences, which exercise exact ties in the scans."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        x = random_sequence(rng)
        vals = np.ceil(x.values / 5.0) if rng.random() < 0.5 else np.ones(len(x))
        out.append(SparseSequence(x.indices, vals))
    return out
