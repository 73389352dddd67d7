#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Date: 2026/10/16
Desc: 命令行入口: simulate / analyze / fit / ingest / sweep / overlap，
      输出供绘图使用的CSV以及 manifest.json
"""

import argparse
import logging
import os
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from . import __version__
from .calibration import fit_corpus_growth, fit_zipf_shape
from .ingest import UnigramIngestor, load_lexicon, save_lexicon
from .metrics import (
    RboParams,
    group_summary,
    pooled_turnover,
    rank_change_summary,
    ranked_list,
    rbo_curves,
    tail_lists,
    turnover,
)
from .model import (
    SimulationConfig,
    WrightFisherSimulator,
    ZipfParams,
    potential_profile,
    trajectory_from_frequencies,
)
from .sweep import sweep_fixed_ratio, sweep_parameter, turnover_by_ratio
from .utils import (
    ConfigurationError,
    FitUndefinedError,
    InsufficientLengthError,
    JsonSaveLoadUtils,
    RankDriftError,
    attach_file_handler,
    detach_file_handlers,
    set_log_level,
    setup_logger,
    write_frame,
)

logger = setup_logger("rankDrift.cli", logging.INFO)

SIMULATION_KEYS = ("alpha", "beta", "c", "a", "T", "seed", "replicates")
# 不进入 manifest 的运行控制参数
RUNTIME_KEYS = ("command", "config", "out", "force", "log_level")
COMMAND_DEFAULTS: Dict[str, dict] = {
    "simulate": {"lag": 10, "rbo_p": 1.0, "workers": 1},
    "analyze": {"lag": 10, "rbo_p": 1.0},
    "fit": {},
    "ingest": {"min_volumes": 1},
    "sweep": {"kind": "parameter", "rbo_mode": "lag-1", "rbo_p": 1.0, "workers": 1},
    "overlap": {"a": 1.0},
}

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的整数列表: {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"需要逗号分隔的实数列表: {text!r}")


def _year_range(text: str) -> List[int]:
    try:
        start, end = (int(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"年份区间格式应为 A:B, 当前: {text!r}")
    if start > end:
        raise argparse.ArgumentTypeError(f"年份区间起点大于终点: {text!r}")
    return [start, end]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="JSON配置文件（或之前运行的 manifest.json）")
    common.add_argument("--out", type=str, required=True, help="输出目录")
    common.add_argument("--force", action="store_true", help="允许写入非空的输出目录")
    common.add_argument(
        "--log-level",
        type=str,
        default="INFO",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="日志级别",
    )

    simulation = argparse.ArgumentParser(add_help=False)
    simulation.add_argument("--alpha", type=float, help="语料增长率 α")
    simulation.add_argument("--beta", type=int, help="初始语料规模 β")
    simulation.add_argument("--vocab", dest="c", type=int, help="词表规模 c")
    simulation.add_argument("--zipf-a", dest="a", type=float, help="Zipf形状参数 a")
    simulation.add_argument("--steps", dest="T", type=int, help="时间步数 T")
    simulation.add_argument("--seed", type=int, help="随机种子")
    simulation.add_argument("--replicates", type=int, help="重复实验次数")
    simulation.add_argument("--workers", type=int, help="并行进程数")

    rbo = argparse.ArgumentParser(add_help=False)
    rbo.add_argument("--rbo-p", type=float, help="RBO 参数 p，默认 1")
    rbo.add_argument("--y-max", type=int, help="更替曲线的最大 y")

    lag = argparse.ArgumentParser(add_help=False)
    lag.add_argument("--lag", type=int, help="第二条滞后 RBO 曲线的步长，默认 10")

    parser = argparse.ArgumentParser(
        prog="rank_drift", description="中性词排名演化模拟与分析工具"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("simulate", parents=[common, simulation, rbo, lag], help="运行模拟并输出指标")

    analyze = sub.add_parser("analyze", parents=[common, rbo, lag], help="分析词表CSV")
    analyze.add_argument("--input", type=str, help="词表CSV路径")

    fit = sub.add_parser("fit", parents=[common], help="拟合模型参数")
    fit.add_argument("--input", type=str, help="词表CSV路径")
    fit.add_argument("--kind", choices=["corpus", "zipf", "turnover"], help="拟合对象")
    fit.add_argument("--y-max", type=int, help="更替曲线的最大 y")

    ingest = sub.add_parser("ingest", parents=[common], help="处理一元词频分片")
    ingest.add_argument("--input", nargs="+", help="TSV分片（可为 .gz）")
    ingest.add_argument("--min-volumes", type=int, help="最少出现卷数（含），默认 1")
    ingest.add_argument("--years", type=_year_range, help="年份区间 A:B（闭区间）")
    ingest.add_argument("--stopwords", type=str, help="停用词表文件")
    ingest.add_argument("--swadesh", type=str, help="Swadesh词表文件")

    sweep = sub.add_parser("sweep", parents=[common, simulation, rbo], help="参数扫描")
    sweep.add_argument("--kind", choices=["parameter", "ratio", "turnover"], help="扫描类型")
    sweep.add_argument("--sweep-param", choices=["alpha", "beta", "c", "a"], help="扫描的参数")
    sweep.add_argument("--sweep-values", type=_float_list, help="参数取值，逗号分隔")
    sweep.add_argument("--ratios", type=_float_list, help="c/β 取值，逗号分隔")
    sweep.add_argument("--vocabs", type=_int_list, help="固定比值扫描的 c 取值，逗号分隔")
    sweep.add_argument("--rbo-mode", type=str, help="lag-<n> 或 from-initial，默认 lag-1")

    overlap = sub.add_parser("overlap", parents=[common], help="计算净排名变化势")
    overlap.add_argument("--vocab", dest="c", type=int, help="词表规模 c")
    overlap.add_argument("--vocabs", type=_int_list, help="多个 c 取值，逗号分隔")
    overlap.add_argument("--zipf-a", dest="a", type=float, help="Zipf形状参数 a，默认 1")
    overlap.add_argument("--betas", type=_int_list, help="β 取值，逗号分隔")
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """
    合并配置: 命令默认值 < JSON 配置 < 命令行参数

    Returns:
        生效的参数字典（模拟参数已经过 SimulationConfig 校验补全）
    """
    flags = {k: v for k, v in vars(args).items() if k not in RUNTIME_KEYS}
    effective = {k: None for k in flags}
    effective.update(COMMAND_DEFAULTS[args.command])
    if args.config:
        data = JsonSaveLoadUtils.load_dict_from_json(args.config)
        if "config" in data and "command" in data:
            if data["command"] != args.command:
                raise ConfigurationError(
                    f"manifest 属于命令 {data['command']}，不能用于 {args.command}"
                )
            data = data["config"]
        unknown = set(data) - set(flags)
        if unknown:
            raise ConfigurationError(f"{args.command} 不支持的配置项: {sorted(unknown)}")
        effective.update({k: v for k, v in data.items() if v is not None})
    effective.update({k: v for k, v in flags.items() if v is not None})
    if any(k in effective for k in ("alpha", "T", "replicates")):
        sim = SimulationConfig.from_dict({k: effective.get(k) for k in SIMULATION_KEYS})
        effective.update(sim.to_dict())
    return effective


def _require(effective: dict, key: str, flag: str):
    if effective.get(key) in (None, [], ""):
        raise ConfigurationError(f"缺少必需的参数 {flag}")
    return effective[key]


def _prepare_output_dir(out: str, force: bool) -> None:
    if os.path.exists(out) and not os.path.isdir(out):
        raise ConfigurationError(f"输出路径不是目录: {out}")
    if os.path.isdir(out) and os.listdir(out) and not force:
        raise ConfigurationError(f"输出目录非空: {out}，如需覆盖请加 --force")
    os.makedirs(out, exist_ok=True)


def _input_paths(effective: dict) -> List[str]:
    paths = effective.get("input") or []
    if isinstance(paths, str):
        paths = [paths]
    paths = list(paths)
    for key in ("stopwords", "swadesh"):
        if effective.get(key):
            paths.append(effective[key])
    return paths


def _check_inputs(paths: Sequence[str]) -> None:
    for path in paths:
        if not os.path.isfile(path):
            raise ConfigurationError(f"输入文件不存在: {path}")


def _grid_frame(grid: np.ndarray, words, columns, replicate: Optional[int] = None) -> pd.DataFrame:
    df = pd.DataFrame(np.asarray(grid), columns=[str(c) for c in columns])
    df.insert(0, "word", list(words))
    if replicate is not None:
        df.insert(0, "replicate", replicate)
    return df


def _rbo_frame(curves: List[pd.Series], mode: str) -> pd.DataFrame:
    """多个重复实验的 RBO 曲线拼成宽表: t, mean, std, rep_0, ..."""
    if not curves:
        return pd.DataFrame(columns=["t", "mean", "std"])
    wide = pd.concat({f"rep_{r}": c for r, c in enumerate(curves)}, axis=1)
    wide.index.name = "t"
    values = wide.to_numpy()
    wide.insert(0, "mean", values.mean(axis=1))
    wide.insert(1, "std", values.std(axis=1))
    return wide.reset_index()


def _rbo_outputs(ranked, lag: int, params: RboParams) -> Dict[str, pd.DataFrame]:
    """rbo_lag1 / rbo_lag<lag> / rbo_initial；T 不足的曲线输出只有表头的文件"""
    outputs = {}
    for name, mode in (("rbo_lag1", "lag-1"), (f"rbo_lag{lag}", f"lag-{lag}"), ("rbo_initial", "from-initial")):
        try:
            outputs[name] = _rbo_frame([rbo_curves(rl, mode, params) for rl in ranked], mode)
        except InsufficientLengthError as e:
            logger.warning(f"{name} 未计算: {e}")
            outputs[name] = _rbo_frame([], mode)
    return outputs


def _turnover_outputs(ranked, y_max) -> Dict[str, pd.DataFrame]:
    try:
        result = pooled_turnover(ranked, y_max)
    except (FitUndefinedError, InsufficientLengthError) as e:
        logger.warning(f"更替拟合未完成: {e}")
        return {
            "turnover": pd.DataFrame(columns=["y", "z"]),
            "turnover_fit": pd.DataFrame(columns=["a", "b", "b_ci_low", "b_ci_high", "classification"]),
        }
    return {"turnover": result.to_frame(), "turnover_fit": pd.DataFrame([result.to_row()])}


def _write_all(out: str, frames: Dict[str, pd.DataFrame]) -> None:
    for name, df in frames.items():
        write_frame(df, os.path.join(out, f"{name}.csv"))


def cmd_simulate(effective: dict, out: str) -> None:
    config = SimulationConfig.from_dict({k: effective[k] for k in SIMULATION_KEYS})
    params = RboParams(p=float(effective["rbo_p"]))
    lag = int(effective["lag"])
    trajectories = WrightFisherSimulator(config, n_workers=int(effective["workers"])).run()
    steps = list(range(config.T))

    summaries = []
    for r, trajectory in enumerate(trajectories):
        summary = rank_change_summary(trajectory.ranks).to_frame()
        summary.insert(0, "replicate", r)
        summaries.append(summary)

    frames = {}
    for name, attr in (("counts", "counts"), ("ranks", "ranks"), ("proportions", "proportions"), ("zscores", "zscores")):
        parts = []
        for r, trajectory in enumerate(trajectories):
            if attr == "counts":
                grid = trajectory.frequencies.counts
            elif attr == "ranks":
                grid = trajectory.ranks.ranks
            else:
                grid = getattr(trajectory, attr)
            parts.append(_grid_frame(grid, trajectory.frequencies.words, steps, replicate=r))
        frames[name] = pd.concat(parts, ignore_index=True)
    frames["summary"] = pd.concat(summaries, ignore_index=True)
    ranked = [ranked_list(t.ranks) for t in trajectories]
    frames.update(_rbo_outputs(ranked, lag, params))
    frames.update(_turnover_outputs(ranked, effective.get("y_max")))
    _write_all(out, frames)


def cmd_analyze(effective: dict, out: str) -> None:
    lexicon = load_lexicon(_require(effective, "input", "--input"))
    params = RboParams(p=float(effective["rbo_p"]))
    lag = int(effective["lag"])
    trajectory = trajectory_from_frequencies(lexicon.frequencies)
    summary = rank_change_summary(trajectory.ranks)
    words = lexicon.frequencies.words

    frames = {
        "counts": _grid_frame(lexicon.frequencies.counts, words, lexicon.years),
        "ranks": _grid_frame(trajectory.ranks.ranks, words, lexicon.years),
        "proportions": _grid_frame(trajectory.proportions, words, lexicon.years),
        "zscores": _grid_frame(trajectory.zscores, words, lexicon.years),
        "summary": summary.to_frame(lexicon.tags),
        "tails": tail_lists(summary),
        "groups": group_summary(summary, lexicon.tags),
        "lexicon_stats": _lexicon_stats(lexicon),
    }
    ranked = ranked_list(trajectory.ranks)
    for name, df in _rbo_outputs([ranked], lag, params).items():
        df = df[["t", "rep_0"]].rename(columns={"rep_0": "rbo"}) if "rep_0" in df else pd.DataFrame(columns=["t", "rbo"])
        df.insert(1, "year", [lexicon.years[int(t)] for t in df["t"]])
        frames[name] = df
    frames.update(_turnover_outputs([ranked], effective.get("y_max")))
    _write_all(out, frames)


def _lexicon_stats(lexicon, stats=None) -> pd.DataFrame:
    row = stats.to_dict() if stats is not None else {}
    row.update(
        c=lexicon.c,
        beta=lexicon.beta,
        ln_beta=lexicon.ln_beta,
        ratio=lexicon.ratio,
        n_years=len(lexicon.years),
        n_stopwords=lexicon.tag_counts()["is_stopword"],
        n_swadesh=lexicon.tag_counts()["is_swadesh"],
    )
    return pd.DataFrame([row])


def cmd_fit(effective: dict, out: str) -> None:
    lexicon = load_lexicon(_require(effective, "input", "--input"))
    kind = _require(effective, "kind", "--kind")
    freqs = lexicon.frequencies
    frames = {}
    if kind == "corpus":
        alpha, ln_beta = fit_corpus_growth(freqs.totals())
        rows = [alpha.to_row("alpha"), ln_beta.to_row("ln_beta")]
    elif kind == "zipf":
        a_fit = fit_zipf_shape(freqs.counts[:, 0] if freqs.T else [])
        rows = [a_fit.to_row("a")]
    elif kind == "turnover":
        result = turnover(ranked_list(trajectory_from_frequencies(freqs).ranks), effective.get("y_max"))
        rows = [result.a.to_row("turnover_a"), result.b.to_row("turnover_b")]
        frames["turnover"] = result.to_frame()
        frames["turnover_fit"] = pd.DataFrame([result.to_row()])
    else:
        raise ConfigurationError(f"不支持的拟合类型: {kind}")
    frames["fit"] = pd.DataFrame(rows)
    for row in rows:
        logger.info(
            f"{row['parameter']} = {row['estimate']:.6g} "
            f"[{row['ci_low']:.6g}, {row['ci_high']:.6g}] ({row['confidence']:.0%})"
        )
    _write_all(out, frames)


def cmd_ingest(effective: dict, out: str) -> None:
    paths = _require(effective, "input", "--input")
    years = effective.get("years")
    ingestor = UnigramIngestor(
        min_volumes=int(effective["min_volumes"]),
        year_range=tuple(years) if years else None,
    )
    lexicon, stats = ingestor.run(paths, effective.get("stopwords"), effective.get("swadesh"))
    save_lexicon(lexicon, os.path.join(out, "lexicon.csv"))
    write_frame(_lexicon_stats(lexicon, stats), os.path.join(out, "ingest_stats.csv"))


def cmd_sweep(effective: dict, out: str) -> None:
    config = SimulationConfig.from_dict({k: effective[k] for k in SIMULATION_KEYS})
    params = RboParams(p=float(effective["rbo_p"]))
    workers = int(effective["workers"])
    kind = effective["kind"]
    if kind == "parameter":
        df = sweep_parameter(
            config,
            _require(effective, "sweep_param", "--sweep-param"),
            _require(effective, "sweep_values", "--sweep-values"),
            effective["rbo_mode"],
            params,
            workers,
        )
        name = "rbo_sweep"
    elif kind == "ratio":
        vocabs = _require(effective, "vocabs", "--vocabs")
        df = pd.concat(
            [
                sweep_fixed_ratio(config, float(ratio), vocabs, effective["rbo_mode"], params, workers)
                for ratio in _require(effective, "ratios", "--ratios")
            ],
            ignore_index=True,
        )
        name = "rbo_ratio_sweep"
    elif kind == "turnover":
        df = turnover_by_ratio(
            config, _require(effective, "ratios", "--ratios"), effective.get("y_max"), workers
        )
        name = "turnover_sweep"
    else:
        raise ConfigurationError(f"不支持的扫描类型: {kind}")
    write_frame(df, os.path.join(out, f"{name}.csv"))


def cmd_overlap(effective: dict, out: str) -> None:
    betas = _require(effective, "betas", "--betas")
    vocabs = effective.get("vocabs") or [_require(effective, "c", "--vocab")]
    profiles = [potential_profile(ZipfParams(a=float(effective["a"]), c=int(c)), betas) for c in vocabs]
    potential = pd.concat(profiles, ignore_index=True)
    peak = (
        potential.assign(abs_normalized=potential["normalized_potential"].abs())
        .groupby(["c", "beta"], sort=False)["abs_normalized"]
        .max()
        .rename("max_abs_normalized_potential")
        .reset_index()
    )
    _write_all(out, {"potential": potential, "potential_summary": peak})


COMMANDS = {
    "simulate": cmd_simulate,
    "analyze": cmd_analyze,
    "fit": cmd_fit,
    "ingest": cmd_ingest,
    "sweep": cmd_sweep,
    "overlap": cmd_overlap,
}


def write_manifest(args: argparse.Namespace, effective: dict) -> str:
    manifest = {
        "command": args.command,
        "config": effective,
        "input_paths": _input_paths(effective),
        "output_dir": args.out,
        "version": __version__,
    }
    path = os.path.join(args.out, "manifest.json")
    JsonSaveLoadUtils.save_dict_to_json(manifest, path)
    return path


def main(argv: Optional[Sequence[str]] = None) -> int:
    """命令行入口，返回退出码: 0 成功, 1 运行失败, 2 用法或配置错误"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    set_log_level(getattr(logging, args.log_level))
    try:
        effective = resolve_config(args)
        _check_inputs(_input_paths(effective))
        _prepare_output_dir(args.out, args.force)
    except ConfigurationError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except RankDriftError as e:
        logger.error(f"参数无效: {e}")
        return EXIT_USAGE

    attach_file_handler(os.path.join(args.out, "logs"))
    try:
        logger.info(f"开始执行 {args.command}, 输出目录: {args.out}")
        COMMANDS[args.command](effective, args.out)
        write_manifest(args, effective)
        logger.info(f"{args.command} 完成")
        return EXIT_OK
    except ConfigurationError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except RankDriftError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        logger.warning("用户中断操作")
        return EXIT_RUNTIME
    except Exception:
        logger.exception("运行失败")
        return EXIT_RUNTIME
    finally:
        detach_file_handlers()
