"""Theorem-verification suites behind ``dmorrey verify``.

Each suite returns ``(ok, report)`` where ``report`` is a JSON-ready dict.
"""

from __future__ import annotations

import math

import numpy as np

from . import counterexamples as cx
from .continuous import (continuous_norm_grid, embed_step,
                         weak_continuous_norm_grid)
from .core import validate_exponents
from .corpus import GENERATOR, integer_corpus, random_corpus, random_exponents
from .inclusion import (FIRST_KIND, Q_MONOTONE, SECOND_KIND, WEAK_Q_MONOTONE,
                        WEAK_SECOND_KIND, verify_constant_one, verify_t8)
from .norms import discrete_norm, weak_norm

# growth bands
T1_SLOPE_BAND = (0.25, 0.42)
T1_BOUNDED_FINAL_RATIO = 1.10
T1C_SLOPE_TOL = 0.25
T1C_BOUNDED_FINAL_RATIO = 1.02
T1C_KS = tuple(2**k for k in range(4, 13))

# continuous bridge
IDENTITY_RTOL = 1e-12
RATIO_BAND = (1.0, 3.0)
GRID_MS = (1, 2, 4, 8)
FP_SLACK = 1e-12

CORPUS_SUITES = (FIRST_KIND, SECOND_KIND, Q_MONOTONE, WEAK_SECOND_KIND, WEAK_Q_MONOTONE)
THEOREMS = CORPUS_SUITES + ("t8", "t1-dichotomy", "t2-dichotomy", "t1c-dichotomy",
                            "es1-identity")


def make_corpus(kind: str, trials: int, seed: int):
    if kind == "random":
        return random_corpus(trials, seed)
    if kind == "integer":
        return integer_corpus(trials, seed)
    raise ValueError(f"unknown corpus {kind!r}")


def constant_one_suite(theorem: str, corpus, e1, e2, seed):
    rep = verify_constant_one(corpus, e1, e2, theorem, seed=seed)
    return rep.ok, {**rep.as_dict(), "theorem": theorem, "generator": GENERATOR}


def t8_suite(corpus, p1, p2, q, seed):
    rep = verify_t8(corpus, p1, p2, q, seed=seed)
    return rep.ok, {**rep.as_dict(), "theorem": "t8", "generator": GENERATOR}


def non_increasing(xs) -> bool:
    return all(b <= a for a, b in zip(xs, xs[1:]))


def t1_dichotomy(p1=2.0, p2=1.0, q=3.0, levels=(1, 2, 3), weak=False):
    """Lacunary witness: growth in the p1 space, boundedness in the p2 space."""
    params = cx.make_params(p1, p2, q, cx.THM1, n_max=max(levels))
    e_div, e_bdd = validate_exponents(p1, q), validate_exponents(p2, q)
    div = cx.growth_fit(params, e_div, levels, weak=weak)
    bdd = cx.growth_fit(params, e_bdd, levels, weak=weak)
    ratios = cx.successive_ratios(bdd)
    checks = {
        "slope_in_band": T1_SLOPE_BAND[0] <= div.slope <= T1_SLOPE_BAND[1],
        "bounded_ratios_non_increasing": non_increasing(ratios),
        "bounded_final_ratio": ratios[-1] <= T1_BOUNDED_FINAL_RATIO,
    }
    report = {"params": params.as_dict(), "diverging": div.as_dict(),
              "bounded": bdd.as_dict(), "bounded_ratios": ratios,
              "slope_band": list(T1_SLOPE_BAND)}
    if weak:
        strong = cx.growth_fit(params, e_div, levels)
        checks["weak_equals_strong"] = all(
            a == b for (_, a), (_, b) in zip(div.levels, strong.levels))
    report["checks"] = checks
    return all(checks.values()), report


def t1c_dichotomy(p1=1.0, q1=2.0, p2=2.0, q2=6.0, Ks=T1C_KS):
    """Power-law witness: strong and weak norms in (p1, q1) grow like K^{1/q1 - 1/q2},
    those in (p2, q2) settle."""
    e1, e2 = validate_exponents(p1, q1), validate_exponents(p2, q2)
    predicted = 1.0 / q1 - 1.0 / q2
    checks, report = {}, {"Ks": list(Ks), "predicted": predicted}
    for label, weak in (("strong", False), ("weak", True)):
        div = cx.power_growth(q2, Ks, e1, weak=weak, predicted=predicted)
        bdd = cx.power_growth(q2, Ks, e2, weak=weak)
        ratios = cx.successive_ratios(bdd)
        checks[f"{label}_slope_in_band"] = abs(div.slope - predicted) <= T1C_SLOPE_TOL * predicted
        checks[f"{label}_bounded_final_ratio"] = ratios[-1] <= T1C_BOUNDED_FINAL_RATIO
        report[label] = {"diverging": div.as_dict(), "bounded": bdd.as_dict(),
                         "bounded_ratios": ratios}
    report["checks"] = checks
    return all(checks.values()), report


def es_identity(corpus, seed, exps=None):
    """Step-embedding checks: odd-integer identity, refinement monotonicity and
    the grid/discrete ratio band, for strong and weak norms."""
    rng = np.random.default_rng(seed)
    failures = []
    lo_ratio, hi_ratio = math.inf, 0.0
    worst_identity = 0.0
    for k, x in enumerate(corpus):
        e = exps or random_exponents(rng, p_inf=0.0)
        f = embed_step(x, e.p)
        for weak in (False, True):
            disc = (weak_norm if weak else discrete_norm)(x, e).value
            grid = weak_continuous_norm_grid if weak else continuous_norm_grid
            ident = grid(f, e, 1, odd_integer=True).value
            err = abs(ident - disc) / disc
            worst_identity = max(worst_identity, err)
            if err > IDENTITY_RTOL:
                failures.append({"id": k, "weak": weak, "check": "identity",
                                 "discrete": disc, "grid": ident})
            vals = [grid(f, e, M).value for M in GRID_MS]
            if any(b < a * (1 - FP_SLACK) for a, b in zip(vals, vals[1:])):
                failures.append({"id": k, "weak": weak, "check": "monotone", "grid": vals})
            for v in vals:
                r = v / disc
                lo_ratio, hi_ratio = min(lo_ratio, r), max(hi_ratio, r)
                if not RATIO_BAND[0] * (1 - FP_SLACK) <= r <= RATIO_BAND[1]:
                    failures.append({"id": k, "weak": weak, "check": "ratio", "ratio": r})
    report = {"theorem": "es1-identity", "trials": len(corpus), "seed": seed,
              "generator": GENERATOR, "Ms": list(GRID_MS),
              "worst_identity_error": worst_identity,
              "ratio_range": [lo_ratio, hi_ratio] if corpus else None, "failures": failures}
    return not failures, report
