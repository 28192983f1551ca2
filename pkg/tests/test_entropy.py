import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropic_lg.entropy import (
    alpha_log, as_distribution, binary_entropy, conditional_entropy, joint_entropy,
    quaternary_entropy, tsallis_entropy,
)
from entropic_lg.errors import DomainError, ParameterError, ValidationError

from conftest import random_table

ALPHAS = [0.5, 1.0, 1.5, 2.0, 3.0]


def test_alpha_log_examples():
    assert alpha_log(1.0, 0.7) == 0.0
    assert alpha_log(1.0, 1.0) == 0.0
    assert alpha_log(math.e, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert alpha_log(2.0, 2.0) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("xi", [0.0, -1.0])
def test_alpha_log_domain(xi):
    with pytest.raises(DomainError):
        alpha_log(xi, 2.0)


@pytest.mark.parametrize("alpha", [0.0, -1.0, float("nan"), float("inf")])
def test_order_must_be_positive(alpha):
    with pytest.raises(ParameterError):
        tsallis_entropy([0.5, 0.5], alpha)


def test_alpha_log_continuous_at_one():
    for xi in (0.1, 2.0, 7.5):
        assert alpha_log(xi, 1 + 1e-6) == pytest.approx(math.log(xi), abs=1e-5)
        assert alpha_log(xi, 1 - 1e-6) == pytest.approx(math.log(xi), abs=1e-5)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_point_mass_and_uniform(alpha):
    assert tsallis_entropy([1.0, 0.0, 0.0], alpha) == 0.0
    for d in (2, 3, 7):
        assert tsallis_entropy(np.full(d, 1 / d), alpha) == pytest.approx(alpha_log(d, alpha), abs=1e-13)


def test_tsallis_hand_value():
    assert tsallis_entropy([0.25] * 4, 2.0) == pytest.approx(0.75, abs=1e-15)


def test_validation():
    with pytest.raises(ValidationError):
        tsallis_entropy([0.5, 0.6], 2.0)
    with pytest.raises(ValidationError):
        tsallis_entropy([1.1, -0.1], 2.0)
    with pytest.raises(ValidationError):
        tsallis_entropy([], 2.0)
    # rounding dirt is clipped
    p = as_distribution([1.0 + 5e-13, -5e-13])
    assert p[1] == 0.0


def test_joint_entropy_examples():
    p = np.array([0.2, 0.3, 0.5])
    for a in ALPHAS:
        assert joint_entropy(np.diag(p), a) == pytest.approx(tsallis_entropy(p, a), abs=1e-14)
    assert joint_entropy(np.full((2, 2), 0.25), 2.0) == pytest.approx(0.75, abs=1e-15)
    q = np.array([0.6, 0.4])
    assert joint_entropy(np.outer(p, q), 1.0) == pytest.approx(
        tsallis_entropy(p, 1.0) + tsallis_entropy(q, 1.0), abs=1e-14)


def test_conditional_examples():
    for a in ALPHAS:
        assert conditional_entropy(np.diag([0.3, 0.7]), a) == 0.0
    assert conditional_entropy(np.full((2, 2), 0.25), 2.0) == pytest.approx(0.25, abs=1e-15)
    with pytest.raises(ParameterError):
        conditional_entropy(np.full((2, 2), 0.25), 2.0, given="diagonal")


def test_conditional_skips_empty_outcomes():
    J = np.array([[0.5, 0.0], [0.5, 0.0]])
    assert conditional_entropy(J, 2.0) == pytest.approx(0.5, abs=1e-15)


def test_binary_and_quaternary_examples():
    for a in ALPHAS:
        assert binary_entropy(1.0, a) == 0.0
        assert quaternary_entropy(1.0, a) == 0.0
    assert binary_entropy(0.5, 1.0) == pytest.approx(math.log(2), abs=1e-15)
    assert binary_entropy(0.5, 2.0) == pytest.approx(0.5, abs=1e-15)
    assert quaternary_entropy(0.5, 2.0) == pytest.approx(0.75, abs=1e-15)
    for eta in np.linspace(0, 1, 11):
        assert quaternary_entropy(eta, 1.0) == pytest.approx(2 * binary_entropy(eta, 1.0), abs=1e-14)
    with pytest.raises(DomainError):
        binary_entropy(1.2, 2.0)
    with pytest.raises(DomainError):
        quaternary_entropy(-0.1, 2.0)


def test_binary_matches_formula():
    for eta in (0.1, 0.37, 0.9):
        for a in (0.5, 1.5, 2.0, 3.0):
            ref = (eta**a + (1 - eta) ** a - 1) / (1 - a)
            assert binary_entropy(eta, a) == pytest.approx(ref, abs=1e-14)
            ref_q = (eta ** (2 * a) + 2 * eta**a * (1 - eta) ** a + (1 - eta) ** (2 * a) - 1) / (1 - a)
            assert quaternary_entropy(eta, a) == pytest.approx(ref_q, abs=1e-14)


def test_conditioning_can_increase_below_one():
    # independent uniform bits at alpha = 1/2: H(X|Y,Z) - H(X|Y) = (2 - sqrt 2) H(uniform bit)
    p = np.full((2, 4), 1 / 8)
    h_bit = (2 * math.sqrt(0.5) - 1) / 0.5
    gap = conditional_entropy(p, 0.5) - conditional_entropy(p.reshape(2, 2, 2).sum(axis=2), 0.5)
    assert gap == pytest.approx((2 - math.sqrt(2)) * h_bit, abs=1e-14)
    assert gap > 0


tables = st.tuples(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))


@settings(max_examples=200, deadline=None)
@given(tables, st.sampled_from(ALPHAS + [1.3, 4.0]))
def test_chain_rule_property(shape, alpha):
    da, db, seed = shape
    J = random_table(np.random.default_rng(seed), da, db, sparsity=0.2)
    hxy = joint_entropy(J, alpha)
    hx = tsallis_entropy(J.sum(axis=1), alpha)
    hy = tsallis_entropy(J.sum(axis=0), alpha)
    assert hxy == pytest.approx(hy + conditional_entropy(J, alpha, given="columns"), abs=1e-12)
    assert hxy == pytest.approx(hx + conditional_entropy(J, alpha, given="rows"), abs=1e-12)
