import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dmorrey.core import SparseSequence, validate_exponents as E
from dmorrey.counterexamples import gen_block
from dmorrey.inclusion import (FIRST_KIND, Q_MONOTONE, SECOND_KIND, WEAK_Q_MONOTONE,
                               WEAK_SECOND_KIND, WEAK_TO_STRONG, RegimeError, classify,
                               t8_bound_constant, verify_constant_one, verify_sup_collapse,
                               verify_t8)

SPIKE = SparseSequence.from_mapping({3: 2.5})


class TestClassify:
    def test_first_kind_backward(self):
        reg = classify(E(1, 3), E(2, 3))
        inc = reg.applicable[FIRST_KIND]
        assert inc.source == E(2, 3) and inc.target == E(1, 3)
        assert not reg.forward(FIRST_KIND)
        assert classify(E(2, 3), E(1, 3)).forward(FIRST_KIND)

    def test_q_monotone_proper(self):
        reg = classify(E(2, 2), E(2, 3))
        assert reg.forward(Q_MONOTONE) and reg.applicable[Q_MONOTONE].proper
        assert reg.forward(WEAK_Q_MONOTONE)

    def test_second_kind_boundary(self):
        reg = classify(E(2, 4), E(3, 6))
        assert reg.forward(SECOND_KIND) and reg.forward(WEAK_SECOND_KIND)
        assert reg.applicable[SECOND_KIND].proper   # p1 < p2

    def test_second_kind_not_proper_on_equal_pair(self):
        reg = classify(E(2, 4), E(2, 4))
        assert not reg.applicable[SECOND_KIND].proper

    def test_weak_to_strong(self):
        inc = classify(E(1, 3), E(2, 3)).applicable[WEAK_TO_STRONG]
        assert inc.source == E(2, 3) and inc.source_weak and not inc.target_weak
        assert WEAK_TO_STRONG not in classify(E(1, 3), E(2, 4)).applicable

    def test_diagonal_note(self):
        assert classify(E(2, 2), E(3, 3)).notes

    def test_rejects_infinite_q(self):
        with pytest.raises(RegimeError):
            classify(E(1, math.inf), E(1, 2))

    @given(st.lists(st.sampled_from([1.0, 1.5, 2.0, 3.0, 4.0, 6.0]), min_size=4, max_size=4))
    def test_hypotheses(self, ps):
        p1, q1, p2, q2 = ps
        if p1 > q1 or p2 > q2:
            return
        e1, e2 = E(p1, q1), E(p2, q2)
        reg = classify(e1, e2)
        fwd = p1 <= p2 and q1 * p2 <= p1 * q2
        bwd = p2 <= p1 and q2 * p1 <= p2 * q1
        assert (SECOND_KIND in reg.applicable) == (fwd or bwd)
        assert (WEAK_TO_STRONG in reg.applicable) == (q1 == q2 and p1 != p2)

    def test_no_two_way_proper_inclusion(self):
        grid = [E(p, q) for p in (1, 1.5, 2, 3) for q in (1, 1.5, 2, 3, 4, 6) if p <= q]
        for a, b in itertools.product(grid, repeat=2):
            claims = set()
            for reg in (classify(a, b), classify(b, a)):
                for inc in reg.applicable.values():
                    if inc.proper:
                        claims.add((inc.source, inc.source_weak, inc.target, inc.target_weak))
            for s, sw, t, tw in claims:
                if sw == tw:
                    assert (t, tw, s, sw) not in claims


class TestConstantOne:
    def test_block_first_kind_equality(self):
        rep = verify_constant_one([gen_block(4)], E(2, 3), E(1, 3), FIRST_KIND)
        assert rep.max_ratio == pytest.approx(1.0, rel=1e-14) and rep.ok

    @pytest.mark.parametrize("e1, e2, tag", [
        (E(2, 3), E(1, 3), FIRST_KIND), (E(1, 2), E(2, 4), SECOND_KIND),
        (E(2, 2), E(2, 3), Q_MONOTONE), (E(1, 2), E(2, 5), WEAK_SECOND_KIND),
        (E(1.5, 2), E(1.5, 4), WEAK_Q_MONOTONE)])
    def test_spike_ratio_one(self, e1, e2, tag):
        rep = verify_constant_one([SPIKE], e1, e2, tag)
        assert rep.max_ratio == 1.0

    def test_wrong_direction_rejected(self):
        with pytest.raises(RegimeError):
            verify_constant_one([SPIKE], E(1, 3), E(2, 3), FIRST_KIND)

    def test_second_kind_corpus(self, corpus):
        rep = verify_constant_one(corpus, E(1, 2), E(2, 4), SECOND_KIND, seed=1)
        assert rep.ok and rep.trials == 200 and rep.max_ratio <= 1 + 1e-9

    def test_violation_detected(self):
        # reversed q-monotonicity is false on blocks; force it through the runner
        from dmorrey.inclusion import _run_corpus
        from dmorrey.norms import discrete_norm
        pair = lambda x: (discrete_norm(x, E(2, 2)).value, discrete_norm(x, E(2, 3)).value)
        rep = _run_corpus([gen_block(4)], pair, 1.0, "reversed", None, None)
        assert not rep.ok and rep.violations[0].id == 0

    def test_sup_collapse(self, small_corpus):
        assert verify_sup_collapse(small_corpus, 1.7).ok


class TestT8:
    def test_constant_examples(self):
        assert t8_bound_constant(1, 2, 3) == 2.0
        assert t8_bound_constant(2, 4, 4) == pytest.approx(math.sqrt(2), rel=1e-15)
        with pytest.raises(RegimeError):
            t8_bound_constant(1, 1, 2)

    def test_constant_from_layer_cake(self):
        # evaluate the two split halves at the balancing level and compare the
        # p1-th root with the closed form
        for p1, p2, q in [(1, 2, 3), (2, 4, 4), (1, 3, 3), (1.5, 2.5, 5)]:
            A = p1 / (p2 - p1)
            W, n = 1.7, 9.0
            R = A ** (1 / p2) * W / n ** (1 / q)
            I1 = n * R ** p1
            I2 = A * n ** (1 - p2 / q) * W ** p2 * R ** (p1 - p2)
            assert I1 == pytest.approx(I2, rel=1e-12)
            lhs = n ** (1 / q - 1 / p1) * (I1 + I2) ** (1 / p1)
            assert lhs == pytest.approx(t8_bound_constant(p1, p2, q) * W, rel=1e-12)

    def test_examples(self):
        assert verify_t8([SPIKE], 1, 2, 3).max_ratio == pytest.approx(0.5, rel=1e-15)
        rep = verify_t8([gen_block(4)], 1, 2, 3)
        assert rep.max_ratio == pytest.approx(0.5, rel=1e-14)
        assert rep.constant_used == 2.0

    def test_report_json(self):
        d = verify_t8([SPIKE], 1, 2, 3, seed=7).as_dict()
        assert set(d) >= {"regime", "trials", "max_ratio", "constant_used", "violations", "seed"}
        assert d["seed"] == 7
