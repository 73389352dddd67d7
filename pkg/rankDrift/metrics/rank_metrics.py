import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from ..utils import setup_logger
from ..utils.exceptions import (
    InsufficientLengthError,
    ParameterDomainError,
    RankIntegrityError,
    ShapeMismatchError,
)

logger = setup_logger("rankDrift.metrics", logging.INFO)


@dataclass(frozen=True)
class RankMatrix:
    """排名矩阵 K，形状 c×T，每列为 1..c 的排列"""

    ranks: np.ndarray
    words: tuple

    @property
    def c(self) -> int:
        return self.ranks.shape[0]

    @property
    def T(self) -> int:
        return self.ranks.shape[1]

    def validate(self) -> None:
        """检查每一列是否为 1..c 的排列"""
        if self.ranks.ndim != 2 or self.ranks.shape[0] != len(self.words):
            raise ShapeMismatchError(
                f"排名矩阵形状 {self.ranks.shape} 与词数 {len(self.words)} 不一致"
            )
        expected = np.arange(1, self.c + 1)[:, None]
        bad = np.flatnonzero(~np.all(np.sort(self.ranks, axis=0) == expected, axis=0))
        if bad.size:
            raise RankIntegrityError(f"第 {bad[0]} 列不是 1..{self.c} 的排列")

    def to_frame(self, columns: Optional[Sequence] = None) -> pd.DataFrame:
        columns = list(range(self.T)) if columns is None else list(columns)
        df = pd.DataFrame(self.ranks, columns=[str(c) for c in columns])
        df.insert(0, "word", list(self.words))
        return df


@dataclass(frozen=True)
class RankedList:
    """
    排名列表 RL: order[d, t] 为第 t 列中排名 d+1 的词的下标
    """

    order: np.ndarray
    words: tuple

    @property
    def c(self) -> int:
        return self.order.shape[0]

    @property
    def T(self) -> int:
        return self.order.shape[1]

    def column(self, t: int) -> list:
        """第 t 列，按排名升序的词标识"""
        return [self.words[i] for i in self.order[:, t]]

    def positions(self) -> np.ndarray:
        """逆排列: positions[w, t] 为词 w 在第 t 列中的位置（从0开始）"""
        positions = np.empty_like(self.order)
        cols = np.broadcast_to(np.arange(self.T), self.order.shape)
        positions[self.order, cols] = np.arange(self.c)[:, None]
        return positions


@dataclass(frozen=True)
class RankChangeSummary:
    """ΔK 统计: 排名变化之和与排名变化方差（含归一化结果）"""

    words: tuple
    initial_rank: np.ndarray
    sum: np.ndarray
    normalized_sum: np.ndarray
    variance: np.ndarray
    normalized_variance: np.ndarray

    def to_frame(self, tags: Optional[pd.DataFrame] = None) -> pd.DataFrame:
        df = pd.DataFrame(
            {
                "word": list(self.words),
                "initial_rank": self.initial_rank,
                "sum": self.sum,
                "normalized_sum": self.normalized_sum,
                "variance": self.variance,
                "normalized_variance": self.normalized_variance,
            }
        )
        if tags is not None:
            aligned = tags.reindex(list(self.words), fill_value=False)
            df["is_stopword"] = aligned["is_stopword"].astype(int).to_numpy()
            df["is_swadesh"] = aligned["is_swadesh"].astype(int).to_numpy()
        return df


def _tie_positions(words: Sequence) -> np.ndarray:
    """词标识的排序位置，用作同频时的次序键（文本按码点，数字按大小）"""
    words = list(words)
    tie = np.empty(len(words), dtype=np.int64)
    tie[sorted(range(len(words)), key=words.__getitem__)] = np.arange(len(words))
    return tie


def _ranks_from_column(freq_column: np.ndarray, tie: np.ndarray) -> np.ndarray:
    # lexsort 以最后一个键为主键: 频数降序，再按标识升序
    order = np.lexsort((tie, -freq_column))
    ranks = np.empty(freq_column.size, dtype=np.int64)
    ranks[order] = np.arange(1, freq_column.size + 1)
    return ranks


# 单列排名分配
def assign_ranks(freq_column, words: Sequence) -> np.ndarray:
    """
    按频数降序分配排名（从1开始），同频时按词标识升序

    Args:
        freq_column: 某一时间步的频数（或比例）向量
        words: 词标识列表

    Returns:
        1..c 的排列
    """
    freq_column = np.asarray(freq_column)
    if freq_column.ndim != 1 or freq_column.size != len(words):
        raise ShapeMismatchError(
            f"频数长度 {freq_column.size} 与词数 {len(words)} 不一致"
        )
    return _ranks_from_column(freq_column, _tie_positions(words))


def rank_matrix(freqs) -> RankMatrix:
    """对频数矩阵的每一列分配排名（freqs 需提供 counts 与 words）"""
    counts = np.asarray(freqs.counts)
    tie = _tie_positions(freqs.words)
    ranks = np.empty(counts.shape, dtype=np.int64, order="F")
    for t in range(counts.shape[1]):
        ranks[:, t] = _ranks_from_column(counts[:, t], tie)
    return RankMatrix(ranks=ranks, words=tuple(freqs.words))


def ranked_list(ranks: RankMatrix) -> RankedList:
    """排名矩阵逐列求逆排列得到排名列表"""
    ranks.validate()
    order = np.argsort(ranks.ranks, axis=0, kind="stable")
    return RankedList(order=np.asfortranarray(order), words=ranks.words)


def rank_change_summary(ranks: RankMatrix) -> RankChangeSummary:
    """
    计算每个词的排名变化之和与排名变化方差。
    ΔK_t = K_t − K_{t−1}；方差对 T−1 个差分取总体方差（1/(T−1) 权重）。
    和为负表示词整体向排名1移动。
    """
    if ranks.T < 2:
        raise InsufficientLengthError(f"至少需要2个时间步才能计算排名变化, 当前 T={ranks.T}")
    diffs = np.diff(ranks.ranks, axis=1)
    total = diffs.sum(axis=1)
    variance = diffs.var(axis=1)
    max_variance = variance.max() if variance.size else 0.0
    if max_variance > 0:
        normalized_variance = variance / max_variance
    else:
        normalized_variance = np.zeros_like(variance)
    return RankChangeSummary(
        words=ranks.words,
        initial_rank=ranks.ranks[:, 0].copy(),
        sum=total,
        normalized_sum=total / ranks.c,
        variance=variance,
        normalized_variance=normalized_variance,
    )


def tail_lists(summary: RankChangeSummary, k: int = 10) -> pd.DataFrame:
    """
    分布两端与中心的词表:
    sum 的 A(上升最多)/B(接近0)/C(下降最多)，
    variance 的 A(最稳定)/B(中等)/C(最剧烈)
    """
    if k < 1:
        raise ParameterDomainError(f"k 必须 ≥ 1, 当前: {k}")
    words = np.asarray(summary.words, dtype=object)
    rows = []

    def _pick(metric_name, values, center):
        tie = _tie_positions(summary.words)
        ascending = np.lexsort((tie, values))
        closeness = np.lexsort((tie, np.abs(values - center)))
        groups = {
            "A": ascending[:k],
            "B": closeness[:k],
            "C": ascending[::-1][:k],
        }
        for label, idx in groups.items():
            for position, i in enumerate(idx, start=1):
                rows.append(
                    {
                        "metric": metric_name,
                        "list": label,
                        "position": position,
                        "word": words[i],
                        "value": float(values[i]),
                    }
                )

    _pick("normalized_sum", summary.normalized_sum, 0.0)
    variance = summary.normalized_variance
    _pick("normalized_variance", variance, float(np.mean(variance)) if variance.size else 0.0)
    return pd.DataFrame(rows, columns=["metric", "list", "position", "word", "value"])


def group_summary(summary: RankChangeSummary, tags: pd.DataFrame) -> pd.DataFrame:
    """按停用词 / Swadesh词 / 其他 分组统计归一化的排名变化"""
    df = summary.to_frame(tags)
    groups: Dict[str, pd.Series] = {
        "stopword": df["is_stopword"] == 1,
        "swadesh": df["is_swadesh"] == 1,
        "other": (df["is_stopword"] == 0) & (df["is_swadesh"] == 0),
    }
    rows = []
    for name, mask in groups.items():
        part = df[mask]
        rows.append(
            {
                "group": name,
                "count": int(mask.sum()),
                "mean_normalized_sum": part["normalized_sum"].mean() if len(part) else np.nan,
                "median_normalized_sum": part["normalized_sum"].median() if len(part) else np.nan,
                "mean_normalized_variance": part["normalized_variance"].mean() if len(part) else np.nan,
                "median_normalized_variance": part["normalized_variance"].median() if len(part) else np.nan,
            }
        )
    logger.debug(f"分组统计完成: {[(r['group'], r['count']) for r in rows]}")
    return pd.DataFrame(rows)
