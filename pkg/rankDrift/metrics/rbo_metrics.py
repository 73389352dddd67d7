"""
排名偏置重叠 (RBO)。p=1 时取各深度一致度的平均值；p<1 时截断到深度 c，
不做外推。只处理同一词集上的完整排列。
"""

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from ..utils.exceptions import (
    InsufficientLengthError,
    ParameterDomainError,
    ShapeMismatchError,
)
from .rank_metrics import RankedList

RBO_MODES = ("lag-1", "lag-10", "from-initial")


@dataclass(frozen=True)
class RboParams:
    p: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ParameterDomainError(f"RBO 参数 p 必须位于 [0, 1], 当前: {self.p}")


def agreement(list_s: Sequence, list_t: Sequence, d: int) -> float:
    """深度 d 处两个列表前缀的交集大小除以 d"""
    if d < 1 or d > min(len(list_s), len(list_t)):
        raise ParameterDomainError(
            f"深度 d={d} 超出范围 [1, {min(len(list_s), len(list_t))}]"
        )
    return len(set(list_s[:d]) & set(list_t[:d])) / d


def _agreements_from_positions(pos_s: np.ndarray, pos_t: np.ndarray) -> np.ndarray:
    """
    由两个排列的位置数组得到 A_1..A_c。
    一个词在深度 d 同时出现在两个前缀中，当且仅当 max(pos_s, pos_t) < d。
    """
    c = pos_s.size
    entered = np.bincount(np.maximum(pos_s, pos_t), minlength=c)
    return np.cumsum(entered) / np.arange(1, c + 1)


def _rbo_from_agreements(agreements: np.ndarray, p: float) -> float:
    if p == 1.0:
        return float(agreements.mean())
    weights = p ** np.arange(agreements.size)
    return float((1.0 - p) * np.dot(weights, agreements))


def rbo(list_s: Sequence, list_t: Sequence, params: RboParams = RboParams()) -> float:
    """
    两个排列之间的 RBO

    Args:
        list_s: 排名列表 S（按排名升序）
        list_t: 排名列表 T，须与 S 为同一词集的排列
        params: RBO 参数

    Returns:
        [0, 1] 之间的相似度
    """
    if len(list_s) != len(list_t):
        raise ShapeMismatchError(f"列表长度不同: {len(list_s)} vs {len(list_t)}")
    index = {word: i for i, word in enumerate(list_s)}
    if len(index) != len(list_s):
        raise ParameterDomainError("列表 S 含有重复元素")
    try:
        pos_t_of_word = np.array([index[word] for word in list_t], dtype=np.int64)
    except KeyError as e:
        raise ParameterDomainError(f"两个列表的词集不同: {e.args[0]!r} 不在 S 中") from e
    if np.unique(pos_t_of_word).size != pos_t_of_word.size:
        raise ParameterDomainError("列表 T 含有重复元素")
    if pos_t_of_word.size == 0:
        raise ParameterDomainError("列表不能为空")
    # 以 S 中的下标为词编号: 词 i 在 S 中的位置是 i
    pos_s = np.arange(pos_t_of_word.size)
    pos_t = np.empty_like(pos_s)
    pos_t[pos_t_of_word] = np.arange(pos_t_of_word.size)
    return _rbo_from_agreements(_agreements_from_positions(pos_s, pos_t), params.p)


def _parse_lag(mode: str):
    if mode == "from-initial":
        return None
    match = re.fullmatch(r"lag-(\d+)", mode)
    if not match or int(match.group(1)) < 1:
        raise ParameterDomainError(f"不支持的模式: {mode}，支持: lag-<n>, from-initial")
    return int(match.group(1))


def rbo_curves(
    rl: RankedList, mode: str = "lag-1", params: RboParams = RboParams()
) -> pd.Series:
    """
    RBO 时间序列

    Args:
        rl: 排名列表
        mode: "lag-1" 比较 RL_t 与 RL_{t+1}；"lag-10" 比较 RL_t 与 RL_{t+10}
              （任意 "lag-<n>" 均可）；"from-initial" 比较 RL_0 与 RL_t
        params: RBO 参数

    Returns:
        以 t 为索引的 RBO 序列（lag 模式下 t 为较早的那一列）
    """
    lag = _parse_lag(mode)
    positions = rl.positions()
    if lag is None:
        pairs = [(0, t) for t in range(rl.T)]
    else:
        if rl.T <= lag:
            raise InsufficientLengthError(f"时间步数 T={rl.T} 不足以计算 {mode}")
        pairs = [(t, t + lag) for t in range(rl.T - lag)]
    values = [
        _rbo_from_agreements(
            _agreements_from_positions(positions[:, s], positions[:, e]), params.p
        )
        for s, e in pairs
    ]
    index = [e if lag is None else s for s, e in pairs]
    return pd.Series(values, index=pd.Index(index, name="t"), name=mode, dtype=float)
