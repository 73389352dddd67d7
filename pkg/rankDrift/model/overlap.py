#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Date: 2026/10/14
Desc: ±4σ 二项包络的区间重叠，以及每个词的净排名变化势
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from ..utils import setup_logger
from ..utils.exceptions import ParameterDomainError
from .distributions import (
    BinomialEnvelope,
    ZipfParams,
    binomial_envelope_arrays,
    zipf_pmf,
)

logger = setup_logger("rankDrift.model", logging.INFO)

POTENTIAL_METHODS = ("sweep", "pairwise")


@dataclass(frozen=True)
class OverlapReport:
    """
    按Zipf理论排名排列的包络与净势。
    net_potential > 0 表示有下降排名的趋势，< 0 表示有上升排名的趋势。
    """

    mu: np.ndarray
    sigma: np.ndarray
    net_potential: np.ndarray
    beta: int

    @property
    def c(self) -> int:
        return self.mu.size

    @property
    def envelopes(self) -> list:
        return [BinomialEnvelope(mu=float(m), sigma=float(s)) for m, s in zip(self.mu, self.sigma)]

    @property
    def normalized_potential(self) -> np.ndarray:
        return self.net_potential / self.c

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "rank": np.arange(1, self.c + 1),
                "mu": self.mu,
                "sigma": self.sigma,
                "net_potential": self.net_potential,
                "normalized_potential": self.normalized_potential,
            }
        )


def segment_overlap(e1: BinomialEnvelope, e2: BinomialEnvelope) -> float:
    """两个 ±4σ 区间的重叠长度，区间不相交时为负"""
    return min(e1.high, e2.high) - max(e1.low, e2.low)


class _FenwickTree:
    """树状数组: 单点加一、前缀计数"""

    def __init__(self, size: int):
        self.tree = np.zeros(size + 1, dtype=np.int64)

    def add(self, i: int) -> None:
        i += 1
        while i < self.tree.size:
            self.tree[i] += 1
            i += i & -i

    def prefix(self, n: int) -> int:
        """前 n 个位置（下标 0..n-1）的计数"""
        total = 0
        while n > 0:
            total += self.tree[n]
            n -= n & -n
        return int(total)


def _potential_sweep(low: np.ndarray, high: np.ndarray) -> np.ndarray:
    """
    O(c log c) 计算净势。

    非退化区间 w、v 重叠当且仅当 low_v < high_w 且 high_v > low_w；
    high_v ≤ low_w 的区间必然满足 low_v < high_w，所以
    重叠数 = #(low_v < high_w) − #(high_v ≤ low_w)。
    按排名顺序插入，已插入的即为排名更高的词。
    """
    c = low.size
    active = high > low
    net = np.zeros(c, dtype=np.int64)
    if active.sum() < 2:
        return net
    lows_sorted = np.sort(low[active])
    highs_sorted = np.sort(high[active])
    # 全部词中与 w 重叠的数量（扣除自身）
    overlaps_all = (
        np.searchsorted(lows_sorted, high, side="left")
        - np.searchsorted(highs_sorted, low, side="right")
        - 1
    )
    low_tree = _FenwickTree(lows_sorted.size)
    high_tree = _FenwickTree(highs_sorted.size)
    for w in range(c):
        if not active[w]:
            continue
        up = low_tree.prefix(int(np.searchsorted(lows_sorted, high[w], side="left"))) - high_tree.prefix(
            int(np.searchsorted(highs_sorted, low[w], side="right"))
        )
        down = int(overlaps_all[w]) - up
        net[w] = down - up
        low_tree.add(int(np.searchsorted(lows_sorted, low[w], side="left")))
        high_tree.add(int(np.searchsorted(highs_sorted, high[w], side="left")))
    return net


def _potential_pairwise(low: np.ndarray, high: np.ndarray) -> np.ndarray:
    """O(c²) 逐对比较，用于校验"""
    overlap = np.minimum(high[:, None], high[None, :]) - np.maximum(low[:, None], low[None, :])
    overlapping = overlap > 0
    np.fill_diagonal(overlapping, False)
    lower_ranked = np.triu(overlapping, k=1).sum(axis=1)
    higher_ranked = np.tril(overlapping, k=-1).sum(axis=1)
    return (lower_ranked - higher_ranked).astype(np.int64)


def net_potential(zipf: ZipfParams, beta: int, method: str = "sweep") -> OverlapReport:
    """
    计算每个词的净排名变化势

    与排名更低（数值更大）的词重叠计 +1，与排名更高的词重叠计 −1，
    重叠指区间重叠长度严格大于0。

    Args:
        zipf: Zipf参数，排名取理论排名 1..c
        beta: 初始语料规模
        method: "sweep" 为排序扫描, "pairwise" 为逐对比较

    Raises:
        ParameterDomainError: beta < c 或 method 不支持
    """
    if method not in POTENTIAL_METHODS:
        raise ParameterDomainError(f"不支持的方法: {method}，支持: {', '.join(POTENTIAL_METHODS)}")
    if beta < zipf.c:
        raise ParameterDomainError(f"初始语料规模 beta={beta} 小于词表规模 c={zipf.c}")
    mu, sigma = binomial_envelope_arrays(zipf_pmf(zipf), beta, zipf.c)
    low, high = mu - 4.0 * sigma, mu + 4.0 * sigma
    if method == "sweep":
        potential = _potential_sweep(low, high)
    else:
        potential = _potential_pairwise(low, high)
    return OverlapReport(mu=mu, sigma=sigma, net_potential=potential, beta=int(beta))


def potential_profile(
    zipf: ZipfParams, beta_values: Sequence[int], method: str = "sweep"
) -> pd.DataFrame:
    """
    多个 β 下的净势，纵向拼接为一张表（含 beta、c、a 列）
    """
    frames = []
    total = len(beta_values)
    for i, beta in enumerate(beta_values, start=1):
        report = net_potential(zipf, int(beta), method=method)
        logger.info(
            f"[{i}/{total}] beta={beta}, c={zipf.c}: "
            f"max|归一化净势|={np.abs(report.normalized_potential).max():.4f}"
        )
        df = report.to_frame()
        df.insert(0, "beta", int(beta))
        df.insert(1, "c", zipf.c)
        df.insert(2, "a", zipf.a)
        frames.append(df)
    if not frames:
        raise ParameterDomainError("beta_values 不能为空")
    return pd.concat(frames, ignore_index=True)
