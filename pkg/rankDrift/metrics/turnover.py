"""
前 y 名列表的更替 (turnover): 每一步新进入前 y 名的词数 z(y)，并拟合 z = a·y^b
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
import pandas as pd

from ..calibration.curve_fit import FitResult, fit_loglinear
from ..utils import setup_logger
from ..utils.exceptions import (
    FitUndefinedError,
    InsufficientLengthError,
    ParameterDomainError,
    ShapeMismatchError,
)
from .rank_metrics import RankedList

logger = setup_logger("rankDrift.metrics.turnover", logging.INFO)

# 无偏复制的参考形状参数
NEUTRAL_TURNOVER_B = 0.86
# |b − 1| 在此范围内视为 b == 1（浮点拟合误差）
NEUTRAL_TOLERANCE = 1e-9
# y ≤ 100 逐个取值，之上按对数间隔取值
DENSE_Y_LIMIT = 100
MAX_Y = 1000
LOG_GRID_POINTS = 50


@dataclass(frozen=True)
class TurnoverResult:
    y: np.ndarray
    z: np.ndarray
    a: FitResult
    b: FitResult
    n_skipped: int = 0

    @property
    def classification(self) -> str:
        return classify_turnover(self.b.estimate)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"y": self.y, "z": self.z})

    def to_row(self) -> dict:
        return {
            "a": self.a.estimate,
            "a_ci_low": self.a.ci_low,
            "a_ci_high": self.a.ci_high,
            "b": self.b.estimate,
            "b_ci_low": self.b.ci_low,
            "b_ci_high": self.b.ci_high,
            "b_reference": NEUTRAL_TURNOVER_B,
            "classification": self.classification,
            "n_points": self.b.n_points,
        }


def classify_turnover(b: float) -> str:
    """b > 1 为从众 (conformity)，b < 1 为反从众 (anti-conformity)，b == 1 为中性"""
    if not math.isfinite(b):
        raise ParameterDomainError(f"b 必须是有限值, 当前: {b}")
    if math.isclose(b, 1.0, abs_tol=NEUTRAL_TOLERANCE):
        return "neutral"
    if b > 1.0:
        return "conformity"
    if b < 1.0:
        return "anti-conformity"
    return "neutral"


def default_y_grid(c: int, y_max: Optional[int] = None) -> np.ndarray:
    """
    拟合所用的 y 网格

    Args:
        c: 词表规模
        y_max: 上限，默认 min(c, 1000)

    Returns:
        升序、去重的整数数组
    """
    upper = min(c, MAX_Y) if y_max is None else min(c, int(y_max))
    if upper < 1:
        raise ParameterDomainError(f"y 上限必须 ≥ 1, 当前: {upper}")
    dense = np.arange(1, min(upper, DENSE_Y_LIMIT) + 1)
    if upper <= DENSE_Y_LIMIT:
        return dense
    sparse = np.rint(
        np.logspace(np.log10(DENSE_Y_LIMIT), np.log10(upper), LOG_GRID_POINTS)
    ).astype(np.int64)
    return np.unique(np.concatenate([dense, sparse, [upper]]))


def turnover_curve(rl: RankedList, y_grid: np.ndarray) -> np.ndarray:
    """
    对所有时间步平均的 z(y)

    z_t(y) = y − |top_y(t) ∩ top_y(t+1)|；一个词同时在两个前 y 名中当且仅当
    其在两列中的位置都小于 y。
    """
    if rl.T < 2:
        raise InsufficientLengthError(f"计算更替至少需要2个时间步, 当前 T={rl.T}")
    y_grid = np.asarray(y_grid, dtype=np.int64)
    if y_grid.size == 0 or y_grid.min() < 1 or y_grid.max() > rl.c:
        raise ParameterDomainError(f"y 必须位于 [1, {rl.c}]")
    positions = rl.positions()
    both = np.maximum(positions[:, :-1], positions[:, 1:])
    total = np.zeros(rl.c, dtype=np.float64)
    for t in range(both.shape[1]):
        total += np.cumsum(np.bincount(both[:, t], minlength=rl.c))
    overlap = total / both.shape[1]
    return y_grid - overlap[y_grid - 1]


def fit_turnover(y_grid, z) -> TurnoverResult:
    """对 ln z 与 ln y 做线性拟合，z(y)=0 的点不参与拟合"""
    y_grid = np.asarray(y_grid, dtype=np.int64)
    z = np.asarray(z, dtype=np.float64)
    if y_grid.shape != z.shape:
        raise ShapeMismatchError(f"y 与 z 长度不一致: {y_grid.size} vs {z.size}")
    positive = z > 0
    if not positive.any():
        raise FitUndefinedError("更替序列全为0，无法拟合 z = a·y^b")
    n_skipped = int((~positive).sum())
    if n_skipped:
        logger.warning(f"更替拟合跳过 {n_skipped} 个 z(y)=0 的点")
    b_fit, log_a = fit_loglinear(np.log(y_grid[positive]), np.log(z[positive]))
    a_fit = FitResult(
        estimate=math.exp(log_a.estimate),
        ci_low=math.exp(log_a.ci_low),
        ci_high=math.exp(log_a.ci_high),
        confidence=log_a.confidence,
        n_points=log_a.n_points,
        residual_variance=log_a.residual_variance,
    )
    return TurnoverResult(y=y_grid, z=z, a=a_fit, b=b_fit, n_skipped=n_skipped)


def turnover(rl: RankedList, y_max: Optional[int] = None) -> TurnoverResult:
    """
    计算单个排名列表的更替曲线并拟合 z = a·y^b

    Raises:
        InsufficientLengthError: T < 2
        FitUndefinedError: 更替全为0，或有效点少于3个
    """
    y_grid = default_y_grid(rl.c, y_max)
    return fit_turnover(y_grid, turnover_curve(rl, y_grid))


def pooled_turnover(
    ranked_lists: Iterable[RankedList], y_max: Optional[int] = None
) -> TurnoverResult:
    """多个重复实验的更替曲线取平均后再拟合"""
    curves = []
    y_grid = None
    for rl in ranked_lists:
        if y_grid is None:
            y_grid = default_y_grid(rl.c, y_max)
        curves.append(turnover_curve(rl, y_grid))
    if not curves:
        raise ParameterDomainError("至少需要一个排名列表")
    return fit_turnover(y_grid, np.mean(curves, axis=0))
