import sys
import os

run_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, run_dir)

import numpy as np
import pytest

from rankDrift.metrics import (
    NEUTRAL_TURNOVER_B,
    RankedList,
    classify_turnover,
    default_y_grid,
    fit_turnover,
    pooled_turnover,
    turnover,
    turnover_curve,
)
from rankDrift.utils import (
    FitUndefinedError,
    InsufficientDataError,
    InsufficientLengthError,
    ParameterDomainError,
)


def _alternating(c, T):
    """偶数列为恒等排列，奇数列为逆序排列"""
    identity = np.arange(c)
    columns = [identity if t % 2 == 0 else identity[::-1] for t in range(T)]
    return RankedList(order=np.array(columns).T.copy(), words=tuple(range(c)))


def test_default_y_grid():
    np.testing.assert_array_equal(default_y_grid(10), np.arange(1, 11))
    np.testing.assert_array_equal(default_y_grid(500, y_max=20), np.arange(1, 21))
    grid = default_y_grid(5000)
    assert grid[0] == 1 and grid[-1] == 1000
    np.testing.assert_array_equal(grid[:100], np.arange(1, 101))
    assert np.all(np.diff(grid) > 0)
    with pytest.raises(ParameterDomainError):
        default_y_grid(10, y_max=0)


def test_constant_list_has_zero_turnover():
    rl = RankedList(order=np.tile(np.arange(6)[:, None], (1, 4)), words=tuple(range(6)))
    np.testing.assert_array_equal(turnover_curve(rl, np.arange(1, 7)), np.zeros(6))
    with pytest.raises(FitUndefinedError):
        turnover(rl)


def test_full_replacement_gives_exact_power_law():
    rl = _alternating(40, 6)
    result = turnover(rl, y_max=20)
    np.testing.assert_allclose(result.z, np.arange(1, 21))
    assert result.b.estimate == pytest.approx(1.0)
    assert result.a.estimate == pytest.approx(1.0)
    assert result.n_skipped == 0
    assert result.classification == "neutral"


def test_turnover_skips_zero_points():
    rl = _alternating(10, 3)
    result = turnover(rl)
    # y > c/2 时前 y 名的重叠增加，y = c 时 z = 0
    assert result.z[-1] == 0
    assert result.n_skipped == 1
    assert result.b.n_points == 9


def test_turnover_needs_two_steps():
    rl = RankedList(order=np.arange(4)[:, None], words=tuple(range(4)))
    with pytest.raises(InsufficientLengthError):
        turnover(rl)


def test_fit_turnover_insufficient_points():
    with pytest.raises(InsufficientDataError):
        fit_turnover([1, 2, 3], [1.0, 0.0, 0.0])
    # 数据不足也属于拟合无定义
    with pytest.raises(FitUndefinedError):
        fit_turnover([1, 2, 3], [1.0, 2.0, 0.0])


def test_pooled_turnover_averages_curves():
    rl = _alternating(40, 6)
    constant = RankedList(order=np.tile(np.arange(40)[:, None], (1, 6)), words=tuple(range(40)))
    result = pooled_turnover([rl, constant], y_max=20)
    np.testing.assert_allclose(result.z, np.arange(1, 21) / 2)
    assert result.b.estimate == pytest.approx(1.0)
    assert result.a.estimate == pytest.approx(0.5)
    with pytest.raises(ParameterDomainError):
        pooled_turnover([])


def test_classify_turnover():
    assert classify_turnover(1.2) == "conformity"
    assert classify_turnover(NEUTRAL_TURNOVER_B) == "anti-conformity"
    assert classify_turnover(1.0) == "neutral"
    with pytest.raises(ParameterDomainError):
        classify_turnover(float("nan"))


def test_turnover_result_row():
    result = turnover(_alternating(40, 6), y_max=20)
    row = result.to_row()
    assert row["b_reference"] == NEUTRAL_TURNOVER_B
    assert row["classification"] == "neutral"
    assert list(result.to_frame().columns) == ["y", "z"]
