#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Date: 2026/10/13
Desc: 对数变换后的最小二乘拟合，99% student-t 置信区间
"""

import math
from dataclasses import asdict, dataclass
from typing import Tuple

import numpy as np
from scipy import stats

from ..utils.exceptions import (
    InsufficientDataError,
    ParameterDomainError,
    ShapeMismatchError,
    SingularDesignError,
)

CONFIDENCE = 0.99


@dataclass(frozen=True)
class FitResult:
    """参数估计值及其置信区间"""

    estimate: float
    ci_low: float
    ci_high: float
    confidence: float = CONFIDENCE
    n_points: int = 0
    residual_variance: float = 0.0

    def negated(self) -> "FitResult":
        """取相反数（区间上下界互换）"""
        return FitResult(
            estimate=-self.estimate,
            ci_low=-self.ci_high,
            ci_high=-self.ci_low,
            confidence=self.confidence,
            n_points=self.n_points,
            residual_variance=self.residual_variance,
        )

    def to_row(self, parameter: str) -> dict:
        row = {"parameter": parameter}
        row.update(asdict(self))
        return row


def fit_loglinear(x, y_log) -> Tuple[FitResult, FitResult]:
    """
    普通最小二乘拟合 y_log = slope·x + intercept

    Args:
        x: 自变量
        y_log: 已取对数的因变量

    Returns:
        (slope, intercept) 两个 FitResult，置信区间使用 n−2 自由度的 t 分布

    Raises:
        InsufficientDataError: 点数少于3
        SingularDesignError: x 全部相同
    """
    x = np.asarray(x, dtype=np.float64)
    y_log = np.asarray(y_log, dtype=np.float64)
    if x.shape != y_log.shape or x.ndim != 1:
        raise ShapeMismatchError(f"x 与 y 形状不一致: {x.shape} vs {y_log.shape}")
    if x.size < 3:
        raise InsufficientDataError(f"拟合至少需要3个点, 当前: {x.size}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y_log))):
        raise ParameterDomainError("拟合数据包含非有限值")
    if np.all(x == x[0]):
        raise SingularDesignError("自变量全部相同，无法拟合斜率")

    n = x.size
    result = stats.linregress(x, y_log)
    residuals = y_log - (result.slope * x + result.intercept)
    residual_variance = float(np.dot(residuals, residuals) / (n - 2))
    # 标准误由残差方差直接计算，精确直线时区间宽度为0
    x_mean = float(x.mean())
    sxx = float(np.dot(x - x_mean, x - x_mean))
    slope_stderr = math.sqrt(residual_variance / sxx)
    intercept_stderr = math.sqrt(residual_variance * (1.0 / n + x_mean**2 / sxx))
    t_crit = stats.t.ppf(0.5 + CONFIDENCE / 2.0, n - 2)

    def _with_ci(estimate, stderr):
        half = float(t_crit * stderr)
        return FitResult(
            estimate=float(estimate),
            ci_low=float(estimate) - half,
            ci_high=float(estimate) + half,
            n_points=n,
            residual_variance=residual_variance,
        )

    return _with_ci(result.slope, slope_stderr), _with_ci(result.intercept, intercept_stderr)


# 语料增长拟合: ln N(t) = αt + ln β
def fit_corpus_growth(yearly_totals) -> Tuple[FitResult, FitResult]:
    totals = np.asarray(yearly_totals, dtype=np.float64)
    if totals.ndim != 1:
        raise ShapeMismatchError("年度总量必须是一维序列")
    if np.any(totals < 1):
        raise ParameterDomainError("年度总量必须 ≥ 1")
    t = np.arange(totals.size, dtype=np.float64)
    return fit_loglinear(t, np.log(totals))


def fit_zipf_shape(initial_freqs, return_intercept: bool = False):
    """
    拟合Zipf形状参数 a

    按频数降序分配排名，截取从排名1到 ⌈样本平均排名⌉ 的词，
    对 ln(比例) 与 ln(排名) 做线性拟合，â = −斜率。

    Args:
        initial_freqs: 初始年份的频数（可以是实数比例）
        return_intercept: 同时返回截距的拟合结果

    Returns:
        a 的 FitResult；return_intercept 为真时返回 (a, intercept)
    """
    from ..model.distributions import sample_mean_rank

    freqs = np.asarray(initial_freqs, dtype=np.float64)
    if freqs.ndim != 1 or freqs.size < 3:
        raise InsufficientDataError(f"Zipf拟合至少需要3个词, 当前: {freqs.size}")
    if np.any(freqs <= 0):
        raise ParameterDomainError("频数必须为正")
    cutoff = math.ceil(sample_mean_rank(freqs))
    if cutoff < 3:
        raise InsufficientDataError(
            f"截断到样本平均排名后只剩 {cutoff} 个点，无法拟合"
        )
    ordered = np.sort(freqs)[::-1]
    proportions = ordered / ordered.sum()
    ranks = np.arange(1, cutoff + 1, dtype=np.float64)
    slope, intercept = fit_loglinear(np.log(ranks), np.log(proportions[:cutoff]))
    a_fit = slope.negated()
    if return_intercept:
        return a_fit, intercept
    return a_fit
