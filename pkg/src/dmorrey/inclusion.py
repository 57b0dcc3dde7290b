"""Inclusion regimes between discrete Morrey spaces and corpus checks of the
corresponding norm inequalities.

An inclusion is always read as ``X(source) ⊆ X(target)`` together with the
bound ``||x||_target <= C ||x||_source``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .core import Exponents, SparseSequence, validate_exponents
from .norms import discrete_norm, sup_norm, weak_norm

FIRST_KIND = "first-kind"
SECOND_KIND = "second-kind"
Q_MONOTONE = "q-monotone"
WEAK_SECOND_KIND = "weak-second-kind"
WEAK_Q_MONOTONE = "weak-q-monotone"
WEAK_TO_STRONG = "weak-to-strong"
# Extra constant-one relations checked by the same machinery.
WEAK_LE_STRONG = "weak-le-strong"
SUP_LE_STRONG = "sup-le-strong"

TAGS = (FIRST_KIND, SECOND_KIND, Q_MONOTONE, WEAK_SECOND_KIND, WEAK_Q_MONOTONE,
        WEAK_TO_STRONG)

SLACK = 1e-9


class RegimeError(ValueError):
    pass


@dataclass(frozen=True)
class Inclusion:
    source: Exponents
    target: Exponents
    source_weak: bool
    target_weak: bool
    proper: bool


@dataclass
class InclusionRegime:
    e1: Exponents
    e2: Exponents
    applicable: dict = field(default_factory=dict)   # tag -> Inclusion
    notes: list = field(default_factory=list)

    def forward(self, tag: str) -> bool:
        """Whether ``tag`` asserts an inclusion with e1 as the source."""
        inc = self.applicable.get(tag)
        return inc is not None and inc.source == self.e1 and inc.target == self.e2

    def as_dict(self) -> dict:
        return {
            "e1": [self.e1.p, self.e1.q], "e2": [self.e2.p, self.e2.q],
            "applicable": {
                t: {"source": [i.source.p, i.source.q],
                    "target": [i.target.p, i.target.q], "proper": i.proper}
                for t, i in sorted(self.applicable.items())
            },
            "notes": list(self.notes),
        }


def _second_kind(s: Exponents, t: Exponents) -> Optional[bool]:
    """None if the hypothesis fails, otherwise whether the gap is proper."""
    # q_s/q_t <= p_s/p_t, cross-multiplied
    if s.p <= t.p and s.q * t.p <= s.p * t.q:
        return s.p < t.p or s.q * t.p < s.p * t.q
    return None


def classify(e1: Exponents, e2: Exponents) -> InclusionRegime:
    """Which of the known inclusion results relate the two exponent pairs."""
    if not (e1.finite_q and e2.finite_q):
        raise RegimeError("classify needs finite q")
    reg = InclusionRegime(e1, e2)
    for s, t in ((e1, e2), (e2, e1)):
        if s.q == t.q and s.p >= t.p:
            reg.applicable.setdefault(FIRST_KIND, Inclusion(s, t, False, False, s.p > t.p))
        proper = _second_kind(s, t)
        if proper is not None:
            reg.applicable.setdefault(SECOND_KIND, Inclusion(s, t, False, False, proper))
            reg.applicable.setdefault(WEAK_SECOND_KIND, Inclusion(s, t, True, True, proper))
        if s.p == t.p and s.q <= t.q:
            reg.applicable.setdefault(Q_MONOTONE, Inclusion(s, t, False, False, s.q < t.q))
            reg.applicable.setdefault(WEAK_Q_MONOTONE, Inclusion(s, t, True, True, s.q < t.q))
        if s.q == t.q and s.p > t.p:
            reg.applicable.setdefault(WEAK_TO_STRONG, Inclusion(s, t, True, False, True))
    if e1.p == e1.q and e2.p == e2.q and e1.p != e2.p:
        reg.notes.append(
            "diagonal pair: l^p ⊆ l^p' for p < p' although q decreases "
            "in the reverse direction; (p1 <= p2, q2 <= q1) is not necessary")
    return reg


@dataclass
class Violation:
    id: int
    lhs: float
    rhs: float


@dataclass
class VerificationReport:
    regime: str
    trials: int
    max_ratio: float
    constant_used: float
    violations: list
    seed: Optional[int] = None
    exponents: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        out = {"regime": self.regime, "trials": self.trials,
               "max_ratio": self.max_ratio, "constant_used": self.constant_used,
               "violations": [{"id": v.id, "lhs": v.lhs, "rhs": v.rhs}
                              for v in self.violations],
               "seed": self.seed}
        if self.exponents is not None:
            out["exponents"] = self.exponents
        return out


def thread_count() -> int:
    """MORREY_THREADS caps internal parallelism; 0 or unset means one per CPU."""
    try:
        n = int(os.environ.get("MORREY_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _run_corpus(corpus: Sequence[SparseSequence], pair: Callable, constant: float,
                regime: str, seed, exponents) -> VerificationReport:
    workers = min(thread_count(), max(1, len(corpus)))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(pair, corpus))
    else:
        results = [pair(x) for x in corpus]
    max_ratio = 0.0
    violations = []
    for k, (lhs, rhs) in enumerate(results):
        rhs_c = constant * rhs
        if rhs_c > 0:
            ratio = lhs / rhs_c
        else:
            ratio = 0.0 if lhs == 0 else math.inf
        max_ratio = max(max_ratio, ratio)
        if ratio > 1 + SLACK:
            violations.append(Violation(k, lhs, rhs_c))
    return VerificationReport(regime, len(corpus), max_ratio, constant, violations,
                              seed, exponents)


def _norm_for(weak: bool):
    return weak_norm if weak else discrete_norm


def verify_constant_one(corpus: Sequence[SparseSequence], e1: Exponents, e2: Exponents,
                        which: str, seed=None) -> VerificationReport:
    """Check ``||x||_{X(e2)} <= ||x||_{X(e1)}`` over the corpus.

    ``which`` must be a tag that ``classify`` assigns with e1 as the source, or
    one of ``weak-le-strong`` (weak <= strong at e1 = e2) and ``sup-le-strong``
    (l^inf <= strong at e1, finite q).
    """
    exps = {"e1": [e1.p, e1.q], "e2": [e2.p, e2.q]}
    if which == WEAK_LE_STRONG:
        if e1 != e2:
            raise RegimeError("weak-le-strong compares one exponent pair with itself")
        pair = lambda x: (weak_norm(x, e1).value, discrete_norm(x, e1).value)
        return _run_corpus(corpus, pair, 1.0, which, seed, exps)
    if which == SUP_LE_STRONG:
        if not e1.finite_q:
            raise RegimeError("sup-le-strong needs finite q")
        pair = lambda x: (sup_norm(x), discrete_norm(x, e1).value)
        return _run_corpus(corpus, pair, 1.0, which, seed, exps)
    if which == WEAK_TO_STRONG:
        raise RegimeError("weak-to-strong carries a constant; use verify_t8")
    reg = classify(e1, e2)
    if not reg.forward(which):
        raise RegimeError(f"{which} does not assert X{e1} ⊆ X{e2}")
    inc = reg.applicable[which]
    src, tgt = _norm_for(inc.source_weak), _norm_for(inc.target_weak)
    pair = lambda x: (tgt(x, e2).value, src(x, e1).value)
    return _run_corpus(corpus, pair, 1.0, which, seed, exps)


def t8_bound_constant(p1: float, p2: float, q: float) -> float:
    """Constant C in ||x||_{l^{p1}_q} <= C ||x||_{wl^{p2}_q}.

    Splitting the layer-cake integral at the level R that balances the two
    halves makes each half equal to A^{p1/p2} (2N+1)^{1-p1/q} ||x||^{p1} with
    A = p1/(p2-p1); the p1-th root of their sum gives C = 2^{1/p1} A^{1/p2}.
    """
    if not p1 < p2:
        raise RegimeError(f"need p1 < p2, got p1={p1}, p2={p2}")
    if not (1 <= p1 and p2 <= q < math.inf):
        raise RegimeError(f"need 1 <= p1 < p2 <= q < inf, got ({p1}, {p2}, {q})")
    return 2.0 ** (1.0 / p1) * (p1 / (p2 - p1)) ** (1.0 / p2)


def verify_t8(corpus: Sequence[SparseSequence], p1: float, p2: float, q: float,
              seed=None) -> VerificationReport:
    C = t8_bound_constant(p1, p2, q)
    e1, e2 = validate_exponents(p1, q), validate_exponents(p2, q)
    pair = lambda x: (discrete_norm(x, e1).value, weak_norm(x, e2).value)
    return _run_corpus(corpus, pair, C, WEAK_TO_STRONG, seed,
                       {"p1": p1, "p2": p2, "q": q})


def verify_sup_collapse(corpus: Sequence[SparseSequence], p: float,
                        seed=None) -> VerificationReport:
    """The (p, inf) norm must equal the sup norm exactly; any difference is a violation."""
    e = validate_exponents(p, math.inf)
    violations, max_ratio = [], 0.0
    for k, x in enumerate(corpus):
        lhs, rhs = discrete_norm(x, e).value, sup_norm(x)
        if rhs > 0:
            max_ratio = max(max_ratio, lhs / rhs)
        if lhs != rhs:
            violations.append(Violation(k, lhs, rhs))
    return VerificationReport("sup-collapse", len(corpus), max_ratio, 1.0, violations,
                              seed, {"p": p, "q": "inf"})
