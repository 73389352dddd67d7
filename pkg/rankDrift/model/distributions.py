#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Date: 2026/10/12
Desc: Zipf分布、语料规模增长函数，以及模型底层的二项/多项分布工具
"""

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.special import gammaln, xlog1py, xlogy

from ..utils.exceptions import (
    CorpusOverflowError,
    InfeasibleGuaranteeError,
    ParameterDomainError,
    ShapeMismatchError,
)

UINT64_MAX = 2**64 - 1
# 多项抽样时概率向量之和允许的误差
PMF_SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ZipfParams:
    """Zipf分布参数: a 为形状指数, c 为词表规模"""

    a: float
    c: int

    def __post_init__(self):
        if not math.isfinite(float(self.a)) or self.a < 0:
            raise ParameterDomainError(f"Zipf形状参数 a 必须 ≥ 0, 当前: {self.a}")
        if int(self.c) != self.c or self.c < 1:
            raise ParameterDomainError(f"词表规模 c 必须是 ≥ 1 的整数, 当前: {self.c}")


@dataclass(frozen=True)
class GrowthParams:
    """语料增长参数: alpha 为增长率, beta 为初始语料规模"""

    alpha: float
    beta: int

    def __post_init__(self):
        if not math.isfinite(self.alpha) or self.alpha < 0:
            raise ParameterDomainError(f"增长率 alpha 必须 ≥ 0, 当前: {self.alpha}")
        if int(self.beta) != self.beta or self.beta < 1:
            raise ParameterDomainError(f"初始语料规模 beta 必须是 ≥ 1 的整数, 当前: {self.beta}")


@dataclass(frozen=True)
class BinomialEnvelope:
    """单个词计数的二项分布包络 (μ, σ)，±4σ 为其频数区间"""

    mu: float
    sigma: float

    def __post_init__(self):
        if self.mu < 0 or self.sigma < 0:
            raise ParameterDomainError(f"包络参数必须非负: mu={self.mu}, sigma={self.sigma}")

    @property
    def low(self) -> float:
        return self.mu - 4.0 * self.sigma

    @property
    def high(self) -> float:
        return self.mu + 4.0 * self.sigma


# Zipf概率质量函数
def zipf_pmf(params: ZipfParams) -> np.ndarray:
    """
    计算Zipf分布的概率向量，第 w 个元素为 (1/w^a) / Σ(1/v^a)

    Args:
        params: Zipf参数

    Returns:
        长度为 c 的概率向量（严格为正、单调不增、和为1）
    """
    ranks = np.arange(1, params.c + 1, dtype=np.float64)
    weights = ranks ** (-float(params.a))
    return weights / weights.sum()


# Zipf分布下随机抽取一个词的期望排名
def zipf_expected_rank(params: ZipfParams) -> float:
    ranks = np.arange(1, params.c + 1, dtype=np.float64)
    return float(np.sum(ranks ** (1.0 - params.a)) / np.sum(ranks ** (-float(params.a))))


# 语料规模 N(t) = β·⌈e^{αt}⌉
def corpus_size(t: int, params: GrowthParams) -> int:
    """
    计算第 t 步的语料规模。先对 e^{αt} 取上整，再乘以 β，结果为精确整数。

    Raises:
        CorpusOverflowError: 结果超出64位无符号整数范围
    """
    if int(t) != t or t < 0:
        raise ParameterDomainError(f"时间步 t 必须是非负整数, 当前: {t}")
    try:
        factor = math.ceil(math.exp(params.alpha * int(t)))
    except OverflowError as e:
        raise CorpusOverflowError(
            f"语料规模溢出: t={t}, alpha={params.alpha}, beta={params.beta}"
        ) from e
    size = int(params.beta) * factor
    if size > UINT64_MAX:
        raise CorpusOverflowError(
            f"语料规模 {size} 超出64位范围: t={t}, alpha={params.alpha}, beta={params.beta}"
        )
    return size


def binomial_envelope(p: float, N: int, c: int) -> BinomialEnvelope:
    """二项分量的均值与标准差，试验次数为扣除保底计数后的 N−c"""
    mu, sigma = binomial_envelope_arrays(np.asarray([p], dtype=np.float64), N, c)
    return BinomialEnvelope(mu=float(mu[0]), sigma=float(sigma[0]))


def binomial_envelope_arrays(p: np.ndarray, N: int, c: int):
    """binomial_envelope 的向量化版本，返回 (mu, sigma) 两个数组"""
    p = np.asarray(p, dtype=np.float64)
    if np.any(p < 0) or np.any(p > 1):
        raise ParameterDomainError("成功概率必须位于 [0, 1]")
    if c < 1:
        raise ParameterDomainError(f"词表规模 c 必须 ≥ 1, 当前: {c}")
    if N < c:
        raise ParameterDomainError(f"语料规模 N={N} 小于词表规模 c={c}")
    trials = float(N - c)
    mu = trials * p
    sigma = np.sqrt(trials * p * (1.0 - p))
    return mu, sigma


def log_binomial_pmf(r: int, n: int, p: float) -> float:
    """
    二项分布对数概率 ln C(n,r) + r·ln p + (n−r)·ln(1−p)。
    通过对数伽马函数计算，n 可到 10^9 量级；约定 0·ln 0 = 0。
    """
    if r < 0 or n < 0:
        raise ParameterDomainError(f"r 与 n 必须非负: r={r}, n={n}")
    if r > n:
        raise ParameterDomainError(f"成功次数 r={r} 大于试验次数 n={n}")
    if not 0.0 <= p <= 1.0:
        raise ParameterDomainError(f"概率 p 必须位于 [0, 1], 当前: {p}")
    log_coef = gammaln(n + 1.0) - gammaln(r + 1.0) - gammaln(n - r + 1.0)
    return float(log_coef + xlogy(r, p) + xlog1py(n - r, -p))


def _validate_probabilities(p) -> np.ndarray:
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ShapeMismatchError(f"概率向量必须是非空一维数组, 当前形状: {p.shape}")
    if np.any(p < 0) or not np.all(np.isfinite(p)):
        raise ParameterDomainError("概率向量包含负数或非有限值")
    total = p.sum()
    if abs(total - 1.0) > PMF_SUM_TOLERANCE:
        raise ParameterDomainError(f"概率向量之和应为1, 当前: {total:.12f}")
    return p / total


# 保底抽样: 每个词先分配1个token，剩余 N−c 个token按多项分布分配
def sample_multinomial_guarded(
    p: Union[Sequence[float], np.ndarray], N: int, rng: np.random.Generator
) -> np.ndarray:
    """
    保底多项抽样。

    numpy 的 Generator.multinomial 按顺序对每个类别抽取剩余token数的条件二项分布
    （概率按剩余质量重新归一化），复杂度 O(c)，与 N 无关。

    Args:
        p: 概率向量，长度为 c
        N: 本代语料规模
        rng: 独立的随机流

    Returns:
        长度为 c 的计数向量，每项 ≥ 1，总和恰为 N

    Raises:
        InfeasibleGuaranteeError: N < c，无法保证每个词至少出现一次
    """
    probs = _validate_probabilities(p)
    c = probs.size
    N = int(N)
    if N < c:
        raise InfeasibleGuaranteeError(f"语料规模 N={N} 小于词表规模 c={c}")
    counts = rng.multinomial(N - c, probs).astype(np.int64)
    counts += 1
    return counts


def zipf_sample_initial(
    zipf: ZipfParams, beta: int, rng: np.random.Generator
) -> np.ndarray:
    """按Zipf概率抽取初始代的词频"""
    return sample_multinomial_guarded(zipf_pmf(zipf), beta, rng)


# 样本平均排名（按频数降序赋予排名后，以样本比例加权）
def sample_mean_rank(freqs) -> float:
    freqs = np.asarray(freqs, dtype=np.float64)
    if freqs.ndim != 1 or freqs.size == 0:
        raise ParameterDomainError("频数向量不能为空")
    if np.any(freqs <= 0):
        raise ParameterDomainError("频数必须为正")
    ordered = np.sort(freqs)[::-1]
    ranks = np.arange(1, ordered.size + 1, dtype=np.float64)
    return float(np.dot(ranks, ordered) / ordered.sum())


def expected_rank_gap(zipf: ZipfParams, freqs) -> float:
    """理论期望排名与样本平均排名之差，β 增大时趋于 0"""
    freqs = np.asarray(freqs)
    if freqs.ndim != 1 or freqs.size != zipf.c:
        raise ShapeMismatchError(f"频数向量长度 {freqs.size} 与词表规模 c={zipf.c} 不一致")
    return zipf_expected_rank(zipf) - sample_mean_rank(freqs)
