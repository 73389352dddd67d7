#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Date: 2026/10/14
Desc: Wright-Fisher 式词频演化模拟: 单次轨迹、重复实验集合以及比例/z-score/排名的归一化流程
"""

import logging
from dataclasses import asdict, dataclass, field, replace
from functools import partial
from typing import Iterator, List, Tuple

import numpy as np
from tqdm import tqdm

from ..metrics.rank_metrics import RankMatrix, rank_matrix
from ..utils import setup_logger
from ..utils.exceptions import (
    ConfigurationError,
    CorpusOverflowError,
    InfeasibleGuaranteeError,
    ParameterDomainError,
    ShapeMismatchError,
)
from .distributions import (
    GrowthParams,
    ZipfParams,
    binomial_envelope_arrays,
    corpus_size,
    sample_multinomial_guarded,
    zipf_pmf,
    zipf_sample_initial,
)

logger = setup_logger("rankDrift.model", logging.INFO)

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class SimulationConfig:
    """模型参数 (α, β, c, a, T) 以及随机种子与重复次数"""

    alpha: float = 0.01
    beta: int = 100000
    c: int = 1000
    a: float = 1.0
    T: int = 109
    seed: int = 0
    replicates: int = 100

    def __post_init__(self):
        for name in ("beta", "c", "T", "seed", "replicates"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ParameterDomainError(f"{name} 必须是整数, 当前: {value}")
        if self.c < 1:
            raise ParameterDomainError(f"词表规模 c 必须 ≥ 1, 当前: {self.c}")
        if self.beta < self.c:
            raise ParameterDomainError(f"初始语料规模 beta={self.beta} 小于词表规模 c={self.c}")
        if self.T < 1:
            raise ParameterDomainError(f"时间步数 T 必须 ≥ 1, 当前: {self.T}")
        if self.replicates < 1:
            raise ParameterDomainError(f"重复次数必须 ≥ 1, 当前: {self.replicates}")
        if not 0 <= self.seed < 2**64:
            raise ParameterDomainError(f"随机种子必须位于 [0, 2^64), 当前: {self.seed}")
        # 同时校验 alpha 与 a 的取值范围
        self.zipf()
        last = corpus_size(self.T - 1, self.growth())
        # numpy 的多项抽样使用有符号64位计数
        if last > INT64_MAX:
            raise CorpusOverflowError(f"最终语料规模 {last} 超出有符号64位范围")

    def zipf(self) -> ZipfParams:
        return ZipfParams(a=self.a, c=int(self.c))

    def growth(self) -> GrowthParams:
        return GrowthParams(alpha=float(self.alpha), beta=int(self.beta))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SimulationConfig":
        """由字典构造配置，忽略值为 None 的项，拒绝未知字段"""
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"未知的配置项: {sorted(unknown)}")
        kwargs = {k: v for k, v in data.items() if v is not None}
        try:
            for name in ("beta", "c", "T", "seed", "replicates"):
                if name in kwargs and float(kwargs[name]).is_integer():
                    kwargs[name] = int(kwargs[name])
            for name in ("alpha", "a"):
                if name in kwargs:
                    kwargs[name] = float(kwargs[name])
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"配置项类型错误: {e}") from e
        return cls(**kwargs)

    def with_updates(self, **changes) -> "SimulationConfig":
        return replace(self, **changes)


@dataclass(frozen=True)
class FrequencyMatrix:
    """词频矩阵 R: counts[w, t] 为词 w 在第 t 年的计数"""

    counts: np.ndarray
    words: tuple

    def __post_init__(self):
        if self.counts.ndim != 2 or self.counts.shape[0] != len(self.words):
            raise ShapeMismatchError(
                f"计数矩阵形状 {self.counts.shape} 与词数 {len(self.words)} 不一致"
            )
        if self.counts.size and self.counts.min() < 1:
            raise ParameterDomainError("计数矩阵的每一项都必须 ≥ 1")

    @property
    def c(self) -> int:
        return self.counts.shape[0]

    @property
    def T(self) -> int:
        return self.counts.shape[1]

    def totals(self) -> np.ndarray:
        """每年的语料总量"""
        return self.counts.sum(axis=0)


@dataclass(frozen=True)
class Trajectory:
    frequencies: FrequencyMatrix
    proportions: np.ndarray
    zscores: np.ndarray
    ranks: RankMatrix
    constant_rows: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))


def replicate_stream(seed: int, replicate_index: int) -> np.random.Generator:
    """由 (seed, replicate_index) 派生独立随机流，与执行顺序无关"""
    if seed < 0 or replicate_index < 0:
        raise ParameterDomainError(
            f"seed 与 replicate_index 必须非负: seed={seed}, replicate_index={replicate_index}"
        )
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([int(seed), int(replicate_index)]))
    )


def step(prev, N_next: int, rng: np.random.Generator) -> np.ndarray:
    """
    一代转移: 按上一代的样本比例保底抽样

    Args:
        prev: 上一代计数（每项 ≥ 1）
        N_next: 下一代语料规模
        rng: 随机流

    Returns:
        下一代计数，和为 N_next
    """
    prev = np.asarray(prev)
    if prev.ndim != 1 or prev.size == 0:
        raise ShapeMismatchError("上一代计数必须是非空一维数组")
    if prev.min() < 1:
        raise ParameterDomainError("上一代计数的每一项都必须 ≥ 1")
    if N_next < prev.size:
        raise InfeasibleGuaranteeError(f"语料规模 N={N_next} 小于词表规模 c={prev.size}")
    return sample_multinomial_guarded(prev / prev.sum(), N_next, rng)


def normalize_proportions(freqs: FrequencyMatrix) -> np.ndarray:
    """按列归一化为比例矩阵"""
    counts = np.asarray(freqs.counts, dtype=np.float64)
    if counts.shape[0] == 0:
        return counts.copy()
    return counts / counts.sum(axis=0, keepdims=True)


def normalize_zscores(props) -> Tuple[np.ndarray, np.ndarray]:
    """
    每行做 z-score 变换 (p − 均值) / 标准差，方差取总体方差 (1/T)

    Returns:
        (z-score 矩阵, 常数行掩码)；常数行输出全0
    """
    props = np.asarray(props, dtype=np.float64)
    if props.ndim != 2:
        raise ShapeMismatchError(f"比例矩阵必须是二维, 当前形状: {props.shape}")
    if props.shape[1] == 0:
        return props.copy(), np.zeros(props.shape[0], dtype=bool)
    constant = np.all(props == props[:, :1], axis=1)
    mean = props.mean(axis=1, keepdims=True)
    std = props.std(axis=1, keepdims=True)
    std[constant] = 1.0
    z = (props - mean) / std
    z[constant] = 0.0
    if constant.any():
        logger.warning(f"{int(constant.sum())} 个词的比例序列为常数，z-score 记为0")
    return np.asfortranarray(z), constant


def trajectory_from_frequencies(freqs: FrequencyMatrix) -> Trajectory:
    """为词频矩阵计算比例、z-score 和排名（模拟与语料数据共用）"""
    proportions = np.asfortranarray(normalize_proportions(freqs))
    zscores, constant = normalize_zscores(proportions)
    return Trajectory(
        frequencies=freqs,
        proportions=proportions,
        zscores=zscores,
        ranks=rank_matrix(freqs),
        constant_rows=constant,
    )


def simulate(config: SimulationConfig, replicate_index: int = 0) -> Trajectory:
    """
    运行一次模拟

    第0列为Zipf初始抽样，之后每一列由上一列按 N(t) 保底重抽样得到。
    结果只取决于 (config, replicate_index)。
    """
    growth = config.growth()
    sizes = [corpus_size(t, growth) for t in range(config.T)]
    rng = replicate_stream(config.seed, replicate_index)
    counts = np.empty((config.c, config.T), dtype=np.int64, order="F")
    counts[:, 0] = zipf_sample_initial(config.zipf(), sizes[0], rng)
    for t in range(1, config.T):
        counts[:, t] = step(counts[:, t - 1], sizes[t], rng)
    words = tuple(range(1, config.c + 1))
    return trajectory_from_frequencies(FrequencyMatrix(counts=counts, words=words))


def iter_ensemble(
    config: SimulationConfig, show_progress: bool = False
) -> Iterator[Trajectory]:
    """按重复编号顺序逐个产生轨迹，不在内存中保留整个集合"""
    replicates = range(config.replicates)
    if show_progress:
        replicates = tqdm(replicates, desc="模拟", unit="次")
    for r in replicates:
        yield simulate(config, r)


def ensemble(
    config: SimulationConfig, n_workers: int = 1, show_progress: bool = False
) -> List[Trajectory]:
    """
    运行 config.replicates 次独立模拟

    Args:
        config: 模拟配置
        n_workers: 并行进程数，>1 时使用 dask 多进程调度
        show_progress: 串行时显示进度条

    Returns:
        按重复编号排序的轨迹列表，与并行方式无关
    """
    if n_workers < 1:
        raise ParameterDomainError(f"n_workers 必须 ≥ 1, 当前: {n_workers}")
    logger.info(
        f"开始模拟: replicates={config.replicates}, alpha={config.alpha}, "
        f"beta={config.beta}, c={config.c}, a={config.a}, T={config.T}, seed={config.seed}"
    )
    if n_workers == 1 or config.replicates == 1:
        return list(iter_ensemble(config, show_progress=show_progress))

    import dask.bag as db

    bag = db.from_sequence(range(config.replicates), npartitions=n_workers)
    return bag.map(partial(simulate, config)).compute(
        scheduler="processes", num_workers=n_workers
    )


def initial_envelope_coverage(config: SimulationConfig, draws: int) -> float:
    """
    初始代计数落在 μ±4σ 包络内的比例

    保底的1个token先扣除，再与 N−c 次试验的二项包络比较。
    """
    if draws < 1:
        raise ParameterDomainError(f"抽样次数必须 ≥ 1, 当前: {draws}")
    p = zipf_pmf(config.zipf())
    mu, sigma = binomial_envelope_arrays(p, config.beta, config.c)
    rng = replicate_stream(config.seed, 0)
    samples = rng.multinomial(config.beta - config.c, p, size=draws)
    inside = (samples >= mu - 4.0 * sigma) & (samples <= mu + 4.0 * sigma)
    coverage = float(inside.mean())
    logger.info(f"初始包络覆盖率: {coverage:.6f} (draws={draws}, c={config.c}, beta={config.beta})")
    return coverage


class WrightFisherSimulator:
    """
    对外的模拟器: 持有配置与日志，负责运行集合并汇总进度
    """

    def __init__(
        self,
        config: SimulationConfig,
        n_workers: int = 1,
        log_level: int = logging.INFO,
    ):
        self.config = config
        self.n_workers = n_workers
        self.logger = setup_logger("rankDrift.WrightFisherSimulator", log_level)

    def run(self, show_progress: bool = True) -> List[Trajectory]:
        trajectories = ensemble(self.config, self.n_workers, show_progress=show_progress)
        self.logger.info(f"模拟完成, 共 {len(trajectories)} 条轨迹")
        return trajectories

    def iter_run(self, show_progress: bool = True) -> Iterator[Trajectory]:
        total = self.config.replicates
        for r, trajectory in enumerate(iter_ensemble(self.config, show_progress), start=1):
            self.logger.debug(f"[{r}/{total}] 轨迹完成")
            yield trajectory
