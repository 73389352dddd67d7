import sys
import os
import itertools

run_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, run_dir)

import numpy as np
import pytest

from rankDrift.metrics import RankedList, RboParams, agreement, rbo, rbo_curves
from rankDrift.utils import (
    InsufficientLengthError,
    ParameterDomainError,
    ShapeMismatchError,
)


def _brute_force_rbo(s, t):
    depth = len(s)
    return sum(len(set(s[:d]) & set(t[:d])) / d for d in range(1, depth + 1)) / depth


def test_agreement():
    assert agreement(["a", "b", "c"], ["b", "a", "c"], 1) == 0.0
    assert agreement(["a", "b", "c"], ["b", "a", "c"], 2) == 1.0
    assert agreement(["a", "b", "c"], ["a", "c", "b"], 2) == 0.5
    with pytest.raises(ParameterDomainError):
        agreement(["a"], ["a"], 2)


def test_rbo_identical_lists():
    s = ["w1", "w2", "w3", "w4"]
    assert rbo(s, s) == 1.0
    assert rbo(s, s, RboParams(p=0.9)) == pytest.approx(1 - 0.9**4)


def test_rbo_two_element_swap():
    assert rbo(["a", "b"], ["b", "a"]) == pytest.approx(0.5)


def test_rbo_p_zero_compares_heads_only():
    assert rbo(["a", "b", "c"], ["a", "c", "b"], RboParams(p=0.0)) == 1.0
    assert rbo(["a", "b", "c"], ["b", "a", "c"], RboParams(p=0.0)) == 0.0


def test_rbo_table2_columns():
    # RL_0 = [w1,w2,w3,w4], RL_1 = [w1,w2,w4,w3]: A = 1, 1, 2/3, 1
    assert rbo(["w1", "w2", "w3", "w4"], ["w1", "w2", "w4", "w3"]) == pytest.approx((1 + 1 + 2 / 3 + 1) / 4)


def test_rbo_symmetric():
    s = ["a", "b", "c", "d", "e"]
    t = ["c", "a", "e", "b", "d"]
    assert rbo(s, t) == pytest.approx(rbo(t, s))
    assert rbo(s, t, RboParams(p=0.7)) == pytest.approx(rbo(t, s, RboParams(p=0.7)))


def test_rbo_matches_brute_force():
    rng = np.random.default_rng(12)
    for c in range(1, 9):
        words = list(range(c))
        for _ in range(120):
            s = list(rng.permutation(words))
            t = list(rng.permutation(words))
            assert rbo(s, t) == pytest.approx(_brute_force_rbo(s, t), abs=1e-12)


def test_rbo_all_permutations_of_four():
    s = ["a", "b", "c", "d"]
    for t in itertools.permutations(s):
        value = rbo(s, list(t))
        assert 0.0 <= value <= 1.0
        assert value == pytest.approx(_brute_force_rbo(s, list(t)))


def test_rbo_errors():
    with pytest.raises(ShapeMismatchError):
        rbo(["a", "b"], ["a"])
    with pytest.raises(ParameterDomainError):
        rbo(["a", "b"], ["a", "c"])
    with pytest.raises(ParameterDomainError):
        rbo(["a", "a"], ["a", "b"])
    with pytest.raises(ParameterDomainError):
        rbo([], [])
    with pytest.raises(ParameterDomainError):
        RboParams(p=1.5)


def _ranked(columns, words):
    order = np.array([[words.index(w) for w in col] for col in columns]).T
    return RankedList(order=order, words=tuple(words))


def test_rbo_curves_constant_list():
    words = ["a", "b", "c"]
    rl = _ranked([words] * 12, words)
    for mode in ("lag-1", "lag-10", "from-initial"):
        curve = rbo_curves(rl, mode)
        np.testing.assert_allclose(curve.to_numpy(), 1.0)
    assert len(rbo_curves(rl, "lag-1")) == 11
    assert len(rbo_curves(rl, "lag-10")) == 2
    assert len(rbo_curves(rl, "from-initial")) == 12


def test_rbo_curves_values_and_index():
    words = ["a", "b"]
    rl = _ranked([["a", "b"], ["b", "a"], ["b", "a"]], words)
    lag1 = rbo_curves(rl, "lag-1")
    assert lag1.index.tolist() == [0, 1]
    np.testing.assert_allclose(lag1.to_numpy(), [0.5, 1.0])
    initial = rbo_curves(rl, "from-initial")
    assert initial.iloc[0] == 1.0
    np.testing.assert_allclose(initial.to_numpy(), [1.0, 0.5, 0.5])


def test_rbo_curves_errors():
    words = ["a", "b"]
    rl = _ranked([words] * 5, words)
    with pytest.raises(InsufficientLengthError):
        rbo_curves(rl, "lag-10")
    with pytest.raises(ParameterDomainError):
        rbo_curves(rl, "lag-0")
    with pytest.raises(ParameterDomainError):
        rbo_curves(rl, "window")
