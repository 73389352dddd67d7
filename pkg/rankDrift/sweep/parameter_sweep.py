"""
中性模型的参数扫描: 单参数变化时的 RBO 趋势、固定 c/β 比值的 RBO 趋势，
以及更替形状参数 b 随 c/β 的变化
"""

import logging
import math
from typing import Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from ..metrics.rank_metrics import ranked_list
from ..metrics.rbo_metrics import RboParams, rbo_curves
from ..metrics.turnover import NEUTRAL_TURNOVER_B, pooled_turnover
from ..model.wf_engine import SimulationConfig, ensemble, iter_ensemble
from ..utils import setup_logger
from ..utils.exceptions import FitUndefinedError, ParameterDomainError

logger = setup_logger("rankDrift.sweep", logging.INFO)

SWEEP_PARAMETERS = ("alpha", "beta", "c", "a")
_INTEGER_PARAMETERS = ("beta", "c")


def _trajectories(config: SimulationConfig, n_workers: int):
    if n_workers > 1:
        return ensemble(config, n_workers=n_workers)
    return iter_ensemble(config)


def ensemble_rbo(
    config: SimulationConfig,
    mode: str = "lag-1",
    params: RboParams = RboParams(),
    n_workers: int = 1,
) -> pd.DataFrame:
    """
    集合的 RBO 曲线

    Returns:
        以 t 为索引的表，列为 mean、std 以及每个重复实验 rep_<r>
    """
    curves = {}
    for r, trajectory in enumerate(_trajectories(config, n_workers)):
        curves[f"rep_{r}"] = rbo_curves(ranked_list(trajectory.ranks), mode, params)
    df = pd.DataFrame(curves)
    values = df.to_numpy()
    df.insert(0, "mean", values.mean(axis=1))
    df.insert(1, "std", values.std(axis=1))
    return df


def _curve_rows(curve: pd.DataFrame, **fixed) -> list:
    return [
        dict(fixed, t=int(t), rbo_mean=float(row["mean"]), rbo_std=float(row["std"]))
        for t, row in curve[["mean", "std"]].iterrows()
    ]


def _beta_for_ratio(c: int, ratio: float) -> int:
    if not 0.0 < ratio <= 1.0:
        raise ParameterDomainError(f"c/β 比值必须位于 (0, 1], 当前: {ratio}")
    return int(round(c / ratio))


def sweep_parameter(
    config: SimulationConfig,
    parameter: str,
    values: Sequence,
    mode: str = "lag-1",
    params: RboParams = RboParams(),
    n_workers: int = 1,
) -> pd.DataFrame:
    """
    只改变一个参数，其余参数保持不变，计算每个取值下的集合 RBO 曲线

    Returns:
        列为 parameter, value, t, rbo_mean, rbo_std 的表
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ParameterDomainError(
            f"不支持的扫描参数: {parameter}，支持: {', '.join(SWEEP_PARAMETERS)}"
        )
    rows = []
    total = len(values)
    for i, value in enumerate(values, start=1):
        value = int(value) if parameter in _INTEGER_PARAMETERS else float(value)
        cfg = config.with_updates(**{parameter: value})
        logger.info(f"[{i}/{total}] {parameter}={value}")
        rows.extend(
            _curve_rows(ensemble_rbo(cfg, mode, params, n_workers), parameter=parameter, value=value)
        )
    return pd.DataFrame(rows, columns=["parameter", "value", "t", "rbo_mean", "rbo_std"])


def sweep_fixed_ratio(
    config: SimulationConfig,
    ratio: float,
    vocab_values: Sequence[int],
    mode: str = "lag-1",
    params: RboParams = RboParams(),
    n_workers: int = 1,
) -> pd.DataFrame:
    """c 与 β 同时变化且保持 c/β 不变，β = round(c / ratio)"""
    rows = []
    total = len(vocab_values)
    for i, c in enumerate(vocab_values, start=1):
        beta = _beta_for_ratio(int(c), ratio)
        cfg = config.with_updates(c=int(c), beta=beta)
        logger.info(f"[{i}/{total}] c={c}, beta={beta}, c/beta={ratio}")
        rows.extend(
            _curve_rows(
                ensemble_rbo(cfg, mode, params, n_workers), ratio=ratio, c=int(c), beta=beta
            )
        )
    return pd.DataFrame(rows, columns=["ratio", "c", "beta", "t", "rbo_mean", "rbo_std"])


def turnover_by_ratio(
    config: SimulationConfig,
    ratios: Iterable[float],
    y_max: Optional[int] = None,
    n_workers: int = 1,
) -> pd.DataFrame:
    """
    不同 c/β 下集合平均的更替曲线及拟合的 (a, b)。
    拟合无定义的比值输出 NaN 且分类为 "undefined"。

    中性模型下 c/β 越小排名越冻结，b 随 c/β 减小而增大:
    c/β 接近1时 b < 1（反从众），c/β 很小时 b > 1（从众）。
    """
    ratios = list(ratios)
    rows = []
    for i, ratio in enumerate(ratios, start=1):
        beta = _beta_for_ratio(config.c, float(ratio))
        cfg = config.with_updates(beta=beta)
        logger.info(f"[{i}/{len(ratios)}] c/beta={ratio}, beta={beta}")
        ranked = (ranked_list(t.ranks) for t in _trajectories(cfg, n_workers))
        row = {"ratio": float(ratio), "beta": beta}
        try:
            result = pooled_turnover(ranked, y_max)
            row.update(
                a=result.a.estimate,
                b=result.b.estimate,
                b_ci_low=result.b.ci_low,
                b_ci_high=result.b.ci_high,
                classification=result.classification,
            )
        except FitUndefinedError as e:
            logger.warning(f"c/beta={ratio} 的更替拟合无定义: {e}")
            row.update(
                a=math.nan,
                b=math.nan,
                b_ci_low=math.nan,
                b_ci_high=math.nan,
                classification="undefined",
            )
        row["b_reference"] = NEUTRAL_TURNOVER_B
        rows.append(row)
    return pd.DataFrame(
        rows,
        columns=["ratio", "beta", "a", "b", "b_ci_low", "b_ci_high", "classification", "b_reference"],
    )
