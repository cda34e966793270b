import math
import random
from fractions import Fraction

import pytest

from stabtest.analytics import (
    ClassCounts,
    DomainError,
    conditional_fidelity,
    joint_prob,
    lemma_check,
    oracle,
    pass_prob,
    t_functionals,
    theorem1_bound,
    trace_bound,
    xi,
)

F = Fraction


def test_class_counts_validation():
    ClassCounts(2, 2, 1, 2)
    with pytest.raises(DomainError):
        ClassCounts(-1, 0, 0, 2)
    with pytest.raises(DomainError):
        ClassCounts(3, 3, 0, 1)
    with pytest.raises(DomainError):
        ClassCounts(0, 0, 0, 0)


def test_pass_prob_hand_values():
    assert pass_prob(ClassCounts(0, 0, 0, 2)) == 1
    assert pass_prob(ClassCounts(0, 0, 1, 2)) == F(1, 5)
    assert pass_prob(ClassCounts(1, 1, 0, 2)) == F(2, 5)
    assert pass_prob(ClassCounts(1, 1, 1, 2)) == F(1, 15)
    assert pass_prob(ClassCounts(0, 0, 2, 2)) == 0
    assert pass_prob(ClassCounts(0, 0, 1, 1)) == F(1, 3)


def test_pass_prob_vanishes_out_of_range():
    # a copies of class (1,0) cannot all dodge group 1 once a > k+1
    assert pass_prob(ClassCounts(4, 0, 0, 2)) == 0
    assert pass_prob(ClassCounts(3, 0, 0, 2)) > 0
    # with a (1,1) copy present the cap tightens to k
    assert pass_prob(ClassCounts(3, 0, 1, 2)) == 0


def test_single_bad_copy_rates():
    for k in (1, 2, 5, 10):
        assert pass_prob(ClassCounts(0, 0, 1, k)) == F(1, 2 * k + 1)
        assert pass_prob(ClassCounts(1, 0, 0, k)) == F(k + 1, 2 * k + 1)


def test_joint_prob_hand_values():
    assert joint_prob(1, 1, 2) == F(1, 5)
    assert joint_prob(0, 0, 3) == 1
    assert joint_prob(3, 0, 2) == 0
    assert joint_prob(2, 2, 2) == F(2, 2) * F(2, 1) * F(2, 1) / F(5 * 4 * 3 * 2)


def test_joint_prob_validates_budget():
    with pytest.raises(DomainError):
        joint_prob(3, 3, 1)


def test_conditional_fidelity_values():
    assert conditional_fidelity(1, 1, 2) == F(1, 2)
    assert conditional_fidelity(0, 0, 4) == 1
    assert conditional_fidelity(3, 0, 2) == 0  # a = k+1 forces a bad third copy
    with pytest.raises(DomainError):
        conditional_fidelity(4, 0, 2)


def test_conditional_equals_joint_over_pass():
    for k in (1, 2, 3, 4):
        for a in range(k + 2):
            for b in range(k + 2):
                if a + b > 2 * k + 1:
                    continue
                p = pass_prob(ClassCounts(a, b, 0, k))
                if p == 0:
                    continue
                assert conditional_fidelity(a, b, k) == joint_prob(a, b, k) / p


def test_theorem1_bound_exact_and_float():
    assert theorem1_bound(F(3, 10), 2) == F(1, 3)
    assert isinstance(theorem1_bound(F(1, 2), 2), Fraction)
    val = theorem1_bound(1 / math.sqrt(5), 2)
    assert isinstance(val, float)
    assert abs(val - (1 - 1 / math.sqrt(5))) < 1e-12


def test_theorem1_bound_domain():
    with pytest.raises(DomainError):
        theorem1_bound(F(1, 5), 2)
    with pytest.raises(DomainError):
        theorem1_bound(F(1, 10), 2)
    with pytest.raises(DomainError):
        theorem1_bound(F(1, 2), 0)


def test_trace_bound_values_and_domain():
    assert trace_bound(F(1, 5), 2) == 1.0
    assert abs(trace_bound(F(1, 2), 2) - (1 / math.sqrt(2.5))) < 1e-12
    assert trace_bound(1, 0) == 1.0
    with pytest.raises(DomainError):
        trace_bound(F(1, 6), 2)
    # tighter alpha means a smaller ceiling
    assert trace_bound(F(9, 10), 4) < trace_bound(F(1, 2), 4)


def test_xi_exact_zeros():
    for k in range(1, 30):
        assert xi(1, 0, k) == 0
        assert xi(0, 1, k) == 0
        assert xi(1, 1, k) == 0
        assert xi(2, 0, k) == 0
        assert xi(0, 2, k) == 0


def test_xi_tabulated_expressions():
    for k in range(1, 25):
        assert xi(0, 0, k) == F((k + 1) ** 2, 2 * k + 1)
        if k >= 2:
            assert xi(2, 1, k) == k - 1
            assert xi(2, 2, k) == F(4 * (k - 1) ** 2, k)
            assert xi(3, 0, k) == F((k + 1) ** 2, k - 1)
            assert xi(3, 1, k) == 4 * k - 2
            assert xi(3, 2, k) == F(11 * k * k - 25 * k + 12, k)
        if k >= 3:
            num = 2 * (k - 2) * (13 * k * k - 29 * k + 12)
            assert xi(3, 3, k) == F(num, k * (k - 1))


def test_xi_at_maximal_a():
    # a = k+1 collapses to a Catalan-number expression
    for k in range(1, 12):
        catalan = F(math.comb(2 * k, k), k + 1)
        for b in range(k + 2):
            if k + 1 + b > 2 * k + 1:
                continue
            assert xi(k + 1, b, k) == (k + 1) * (k + 1 - b) * (catalan - 1)


def test_xi_symmetry_and_domain():
    for k in (1, 2, 3, 5):
        for a in range(k + 2):
            for b in range(k + 2):
                if a + b > 2 * k + 1:
                    continue
                assert xi(a, b, k) == xi(b, a, k)
    with pytest.raises(DomainError):
        xi(4, 0, 2)


def test_xi_matches_bound_slack():
    """xi is exactly the scaled gap between the conditional fidelity and the
    acceptance-rate bound, so the two formulations agree row by row."""
    for k in (1, 2, 3, 6):
        for a in range(k + 2):
            for b in range(k + 2):
                if a + b > 2 * k + 1:
                    continue
                p = pass_prob(ClassCounts(a, b, 0, k))
                if p == 0:
                    continue
                lhs = conditional_fidelity(a, b, k) - (1 - F(1, (2 * k + 1) * p))
                assert lhs == xi(a, b, k) / ((k + 1) ** 2 - a * b)


def test_t_functionals_hand_case():
    t1, t2, t3 = t_functionals(F(1, 2), {(1, 1): 1}, {(0, 0): 1}, 2)
    assert t1 == F(2, 5)
    assert t2 == F(1, 5)
    assert t3 == F(1, 5)


def test_t_functionals_mixture_of_atoms():
    q0 = {(0, 0): F(1, 2), (1, 1): F(1, 2)}
    q1 = {(0, 0): F(1, 4), (1, 0): F(3, 4)}
    t1, t2, t3 = t_functionals(F(2, 3), q0, q1, 2)
    assert t1 == F(1, 2) * 1 + F(1, 2) * F(2, 5)
    assert t2 == F(1, 4) * F(1, 5) + F(3, 4) * pass_prob(ClassCounts(1, 0, 1, 2))
    assert t3 == F(1, 2) * 1 + F(1, 2) * F(1, 5)


def test_t_functionals_validation():
    with pytest.raises(DomainError):
        t_functionals(F(3, 2), {(0, 0): 1}, {(0, 0): 1}, 2)
    with pytest.raises(DomainError):
        t_functionals(F(1, 2), {(0, 0): F(1, 2)}, {(0, 0): 1}, 2)
    with pytest.raises(DomainError):
        t_functionals(F(1, 2), {(6, 0): 1}, {(0, 0): 1}, 2)
    with pytest.raises(DomainError):
        t_functionals(F(1, 2), {(0, 0): 1}, {(5, 0): 1}, 2)


def test_lemma_check_equality_case():
    verdict = lemma_check(F(1, 2), {(1, 1): 1}, {(0, 0): 1}, 2, F(3, 10))
    assert verdict.premise
    assert verdict.passing == F(3, 10)
    assert verdict.conditional == F(1, 3)
    assert verdict.bound == F(1, 3)
    assert verdict.holds


def test_lemma_check_vacuous_when_premise_fails():
    # acceptance below alpha: nothing to check
    verdict = lemma_check(F(1, 2), {(2, 2): 1}, {(1, 1): 1}, 2, F(9, 10))
    assert not verdict.premise
    assert verdict.holds
    # alpha at the threshold is excluded by the premise
    verdict = lemma_check(1, {(0, 0): 1}, {(0, 0): 1}, 2, F(1, 5))
    assert not verdict.premise and verdict.holds


def test_lemma_check_rejects_nonpositive_alpha():
    with pytest.raises(DomainError):
        lemma_check(F(1, 2), {(0, 0): 1}, {(0, 0): 1}, 2, 0)


def test_oracle_spot_values():
    res = oracle(ClassCounts(1, 1, 1, 2))
    assert res.passing == F(1, 15)
    assert res.joint == 0
    assert res.conditional == 0
    res = oracle(ClassCounts(0, 0, 1, 2))
    assert res.passing == F(1, 5)
    res = oracle(ClassCounts(1, 1, 0, 2))
    assert res.passing == F(2, 5)
    assert res.joint == F(1, 5)
    assert res.conditional == F(1, 2)


def test_oracle_none_conditional_when_rejected():
    res = oracle(ClassCounts(0, 0, 2, 1))
    assert res.passing == 0 and res.conditional is None


def test_oracle_k_cap():
    with pytest.raises(DomainError):
        oracle(ClassCounts(0, 0, 0, 6))


def test_oracle_matches_closed_forms_on_random_profiles():
    rng = random.Random(31)
    for _ in range(40):
        k = rng.randrange(1, 4)
        while True:
            a, b, c = rng.randrange(0, 5), rng.randrange(0, 5), rng.randrange(0, 3)
            if a + b + c <= 2 * k + 1:
                break
        cc = ClassCounts(a, b, c, k)
        res = oracle(cc)
        assert res.passing == pass_prob(cc)
        if c == 0:
            assert res.joint == joint_prob(a, b, k)
