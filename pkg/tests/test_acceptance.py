"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line (with wall time) that is printed in
the pytest terminal summary and to stdout.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from dmorrey import counterexamples as cx
from dmorrey import suites
from dmorrey.core import validate_exponents as E
from dmorrey.corpus import random_exponents
from dmorrey.inclusion import (FIRST_KIND, Q_MONOTONE, SECOND_KIND, SUP_LE_STRONG,
                               WEAK_LE_STRONG, WEAK_Q_MONOTONE, WEAK_SECOND_KIND,
                               t8_bound_constant, verify_constant_one, verify_sup_collapse,
                               verify_t8)
from dmorrey.norms import dense_oracle_norm, discrete_norm, window_value


class Criterion:
    def __init__(self, log, number, title, budget):
        self.log, self.number, self.title, self.budget = log, number, title, budget
        self.checks = {}

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def check(self, name, ok, detail=""):
        self.checks[name] = (bool(ok), detail)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        self.check("runtime", elapsed < self.budget, f"{elapsed:.2f}s < {self.budget}s")
        failed = [f"{k} ({d})" if d else k for k, (ok, d) in self.checks.items() if not ok]
        status = "FAIL" if failed or exc_type else "PASS"
        line = f"[{status}] criterion {self.number}: {self.title} ({elapsed:.2f}s)"
        if failed:
            line += " failed: " + "; ".join(failed)
        elif exc_type:
            line += f" raised {exc_type.__name__}: {exc}"
        self.log.append(line)
        print(line)
        if exc_type is None:
            assert not failed, line
        return False


def test_criterion_1_block_norms(acceptance_log):
    with Criterion(acceptance_log, 1, "block norms equal (2K+1)^(1/q)", 1.0) as c:
        worst = 0.0
        for p in (1.0, 1.5, 2.0):
            for q in (p, 2 * p, 5.0):
                e = E(p, q)
                for K in range(51):
                    want = (2 * K + 1) ** (1 / q)
                    got = discrete_norm(cx.gen_block(K), e).value
                    worst = max(worst, abs(got - want) / want)
        c.check("rel error <= 1e-12", worst <= 1e-12, f"worst {worst:.2e}")


def test_criterion_2_oracle_equivalence(acceptance_log, corpus):
    with Criterion(acceptance_log, 2, "sparse run scan agrees with dense oracle", 30.0) as c:
        rng = np.random.default_rng(2)
        worst, bad_witness, n_inf = 0.0, [], 0
        for k, x in enumerate(corpus):
            e = random_exponents(rng)
            n_inf += not e.finite_q
            fast = discrete_norm(x, e)
            slow = dense_oracle_norm(x, e)
            worst = max(worst, abs(fast.value - slow.value) / slow.value)
            wv = window_value(x, fast.witness_window, e)
            if abs(wv - fast.value) > 1e-12 * fast.value:
                bad_witness.append(k)
        c.check("rel error <= 1e-10", worst <= 1e-10, f"worst {worst:.2e}")
        c.check("witnesses reproduce value", not bad_witness, f"ids {bad_witness[:5]}")
        c.check("q = inf exercised", n_inf > 0, f"{n_inf} trials")


def test_criterion_3_constant_one_suites(acceptance_log, corpus):
    cases = [
        (FIRST_KIND, E(2, 3), E(1, 3)), (FIRST_KIND, E(3, 4), E(1.5, 4)),
        (SECOND_KIND, E(1, 2), E(2, 4)), (SECOND_KIND, E(1.5, 2), E(3, 4.5)),
        (Q_MONOTONE, E(2, 2), E(2, 3)), (Q_MONOTONE, E(1, 1.5), E(1, 4)),
        (WEAK_SECOND_KIND, E(1, 2), E(2, 4)), (WEAK_SECOND_KIND, E(1, 3), E(2, 6)),
        (WEAK_Q_MONOTONE, E(2, 2), E(2, 3)), (WEAK_Q_MONOTONE, E(1.5, 2), E(1.5, 4)),
    ]
    with Criterion(acceptance_log, 3, "constant-one inclusions, weak/sup bounds, sup collapse",
                   60.0) as c:
        for tag, e1, e2 in cases:
            rep = verify_constant_one(corpus, e1, e2, tag)
            c.check(f"{tag} {e1.p},{e1.q}->{e2.p},{e2.q}", rep.ok,
                    f"{len(rep.violations)} violations, max ratio {rep.max_ratio:.6g}")
        for e in (E(1, 2), E(2, 3), E(1.5, 4)):
            rep = verify_constant_one(corpus, e, e, WEAK_LE_STRONG)
            c.check(f"weak <= strong at {e.p},{e.q}", rep.ok)
            rep = verify_constant_one(corpus, e, e, SUP_LE_STRONG)
            c.check(f"sup <= strong at {e.p},{e.q}", rep.ok)
        for p in (1.0, 2.0, 3.5):
            rep = verify_sup_collapse(corpus, p)
            c.check(f"(p={p}, inf) norm == sup exactly", rep.ok,
                    f"{len(rep.violations)} mismatches")


def test_criterion_4_lacunary_dichotomy(acceptance_log):
    with Criterion(acceptance_log, 4, "lacunary dichotomy at (2, 1, 3), n = 1..3", 10.0) as c:
        v, w = cx.solve_vw(2, 1, 3, cx.THM1)
        k0 = cx.compute_k0(v, w)
        c.check("solve_vw = (5, 2)", (v, w) == (5, 2), f"got {(v, w)}")
        c.check("k0 = 1", k0 == 1, f"got {k0}")
        ok, rep = suites.t1_dichotomy(2, 1, 3, levels=(1, 2, 3), weak=True)
        checks = rep["checks"]
        slope = rep["diverging"]["slope"]
        c.check("diverging slope in [0.25, 0.42]", checks["slope_in_band"],
                f"slope {slope:.4f}, norms {[round(d['norm'], 6) for d in rep['diverging']['levels']]}")
        c.check("bounded ratios non-increasing", checks["bounded_ratios_non_increasing"],
                f"{rep['bounded_ratios']}")
        c.check("bounded final ratio <= 1.10", checks["bounded_final_ratio"])
        c.check("weak == strong on 0/1 truncations", checks["weak_equals_strong"])


def test_criterion_5_power_dichotomy(acceptance_log):
    with Criterion(acceptance_log, 5, "power-sequence dichotomy (1,2) vs (2,6)", 10.0) as c:
        ok, rep = suites.t1c_dichotomy(1, 2, 2, 6)
        for label in ("strong", "weak"):
            slope = rep[label]["diverging"]["slope"]
            c.check(f"{label} slope within 25% of 1/3", rep["checks"][f"{label}_slope_in_band"],
                    f"slope {slope:.4f}")
            c.check(f"{label} bounded final ratio <= 1.02",
                    rep["checks"][f"{label}_bounded_final_ratio"],
                    f"ratio {rep[label]['bounded_ratios'][-1]:.5f}")


def test_criterion_6_weak_to_strong_bound(acceptance_log, corpus):
    with Criterion(acceptance_log, 6, "strong norm bounded by C times weak norm", 30.0) as c:
        c.check("C(1,2,3) == 2", t8_bound_constant(1, 2, 3) == 2.0,
                f"got {t8_bound_constant(1, 2, 3)!r}")
        for p1, p2, q in [(1, 2, 3), (2, 4, 4), (1, 3, 3)]:
            rep = verify_t8(corpus, p1, p2, q)
            c.check(f"({p1},{p2},{q})", rep.ok,
                    f"{len(rep.violations)} violations, max ratio {rep.max_ratio:.4f}")


def test_criterion_7_step_embedding(acceptance_log, corpus):
    with Criterion(acceptance_log, 7, "step-embedding identities and grid bounds", 60.0) as c:
        ok, rep = suites.es_identity(corpus, seed=7)
        kinds = sorted({f["check"] for f in rep["failures"]})
        c.check("identity, monotone in M, ratio in [1, 3] (strong and weak)", ok,
                f"failing checks {kinds}")
        c.check("identity rel error <= 1e-12", rep["worst_identity_error"] <= 1e-12,
                f"{rep['worst_identity_error']:.1e}")


def _admissible(p_hi, p_lo, q, v, w):
    # re-derived directly: q/p_hi (w + 2) - w < v < q/p_lo * w - w + 2
    P_hi, P_lo, Q = Fraction(p_hi), Fraction(p_lo), Fraction(q)
    return Q / P_hi * (w + 2) - w < v < Q / P_lo * w - w + 2


def test_criterion_8_solver_soundness(acceptance_log):
    with Criterion(acceptance_log, 8, "parameter solver soundness", 5.0) as c:
        rng = np.random.default_rng(8)
        bad = []
        for trial in range(1000):
            while True:
                a, b = sorted(np.round(rng.uniform(1, 6, size=2), 2).tolist())
                if a < b:
                    break
            q = round(float(rng.uniform(b, 8)), 2)
            mode = cx.THM1 if trial % 2 == 0 else cx.THM8
            p1, p2 = (b, a) if mode == cx.THM1 else (a, b)
            v, w = cx.solve_vw(p1, p2, q, mode)
            if not (w >= 1 and _admissible(b, a, q, v, w)):
                bad.append((p1, p2, q, mode, v, w))
        c.check("1000 solutions re-satisfy the constraints", not bad, f"{bad[:3]}")
        rejected = 0
        for p, q in [(1, 2), (2, 3), (1.5, 1.5), (3, 7)]:
            for mode in (cx.THM1, cx.THM8):
                try:
                    cx.solve_vw(p, p, q, mode)
                except cx.InfeasibleParameters:
                    rejected += 1
        c.check("equal exponents rejected", rejected == 8, f"{rejected}/8")
