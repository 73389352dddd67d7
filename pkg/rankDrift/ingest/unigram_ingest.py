#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Date: 2026/10/15
Desc: 一元词频数据的三层处理: 过滤 (卷数阈值、年份区间)、合并 (大小写与词性后缀)、
      完整性筛选 (每年都出现)，最终生成带停用词/Swadesh标记的词表
"""

import gzip
import logging
import math
import os
from collections import Counter
from dataclasses import asdict, dataclass
from functools import reduce
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np
import pandas as pd

from ..model.wf_engine import FrequencyMatrix
from ..utils import setup_logger, write_frame
from ..utils.exceptions import ConfigurationError, ParameterDomainError

logger = setup_logger("rankDrift.ingest", logging.INFO)

# Google Ngram v2 的词性标注
TAG_COLUMNS = ["is_stopword", "is_swadesh"]


@dataclass(frozen=True)
class UnigramRecord:
    token: str
    year: int
    match_count: int
    volume_count: int


@dataclass
class IngestStats:
    """读取/格式错误/被过滤/保留的记录数，以及因缺年被剔除的词数"""

    read: int = 0
    malformed: int = 0
    filtered: int = 0
    retained: int = 0
    words_dropped: int = 0

    def merge(self, other: "IngestStats") -> "IngestStats":
        return IngestStats(**{k: v + getattr(other, k) for k, v in asdict(self).items()})

    def to_dict(self) -> dict:
        return asdict(self)


def parse_record(line: str) -> Optional[UnigramRecord]:
    """解析一行 "token<TAB>year<TAB>match_count<TAB>volume_count"，格式错误返回 None"""
    fields = line.rstrip("\r\n").split("\t")
    if len(fields) != 4 or not fields[0]:
        return None
    try:
        year, match_count, volume_count = (int(f) for f in fields[1:])
    except ValueError:
        return None
    if match_count < 1 or volume_count < 1:
        return None
    return UnigramRecord(fields[0], year, match_count, volume_count)


def _open_text(path: str):
    if path.endswith(".gz"):
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, "r", encoding="utf-8")


def read_records(
    paths: Sequence[str], stats: Optional[IngestStats] = None
) -> Iterator[UnigramRecord]:
    """
    逐行读取一个或多个分片文件（支持 .gz），格式错误的行记入统计后跳过

    Raises:
        ConfigurationError: 文件不存在或无法读取
    """
    stats = stats if stats is not None else IngestStats()
    for path in paths:
        if not os.path.isfile(path):
            raise ConfigurationError(f"输入文件不存在: {path}")
        try:
            with _open_text(path) as f:
                for line_no, line in enumerate(f, start=1):
                    if not line.strip():
                        continue
                    stats.read += 1
                    record = parse_record(line)
                    if record is None:
                        stats.malformed += 1
                        logger.warning(f"{path}:{line_no} 格式错误，已跳过: {line.rstrip()!r}")
                        continue
                    yield record
        except (OSError, UnicodeDecodeError) as e:
            raise ConfigurationError(f"无法读取输入文件 {path}: {e}") from e


def filter_records(
    records: Iterable[UnigramRecord],
    min_volumes: int,
    year_range: Optional[Tuple[int, int]] = None,
    stats: Optional[IngestStats] = None,
) -> Iterator[UnigramRecord]:
    """
    保留年份在区间内（闭区间）且 volume_count ≥ min_volumes 的记录
    """
    if min_volumes < 1:
        raise ParameterDomainError(f"min_volumes 必须 ≥ 1, 当前: {min_volumes}")
    if year_range is not None and year_range[0] > year_range[1]:
        raise ParameterDomainError(f"年份区间无效: {year_range[0]}:{year_range[1]}")
    stats = stats if stats is not None else IngestStats()
    for record in records:
        in_range = year_range is None or year_range[0] <= record.year <= year_range[1]
        if in_range and record.volume_count >= min_volumes:
            stats.retained += 1
            yield record
        else:
            stats.filtered += 1


def strip_pos_suffix(token: str) -> str:
    """含下划线的记号在最后一个下划线处切分，保留前半部分"""
    head, sep, _ = token.rpartition("_")
    return head if sep else token


def case_fold(token: str) -> str:
    """默认 Unicode 小写映射，幂等"""
    return token.lower()


def fold_token(token: str) -> str:
    """去掉词性后缀并转为小写，只有词性标注的记号返回空串"""
    return case_fold(strip_pos_suffix(token))


def accumulate_counts(records: Iterable[UnigramRecord]) -> pd.DataFrame:
    """按 (合并后的词, 年份) 累加计数，返回词×年份的计数表"""
    counter: Counter = Counter()
    for record in records:
        word = fold_token(record.token)
        if not word:
            logger.debug(f"跳过仅含词性标注的记号: {record.token!r}")
            continue
        counter[(word, record.year)] += record.match_count
    if not counter:
        return pd.DataFrame(dtype=np.int64, index=pd.Index([], name="word", dtype=object))
    series = pd.Series(counter, dtype=np.int64)
    table = series.unstack(fill_value=0)
    return _canonical(table)


def _canonical(table: pd.DataFrame) -> pd.DataFrame:
    table = table.sort_index(axis=0).sort_index(axis=1).astype(np.int64)
    table.index.name = "word"
    table.columns = [int(c) for c in table.columns]
    return table


def merge_tables(tables: Iterable[pd.DataFrame]) -> pd.DataFrame:
    """多个分片的计数表按词和年份相加（满足结合律与交换律）"""
    tables = [t for t in tables if not t.empty]
    if not tables:
        return pd.DataFrame(dtype=np.int64, index=pd.Index([], name="word", dtype=object))
    merged = reduce(lambda left, right: left.add(right, fill_value=0), tables)
    return _canonical(merged.fillna(0))


def apply_completeness(
    table: pd.DataFrame, stats: Optional[IngestStats] = None
) -> pd.DataFrame:
    """剔除在任一保留年份中计数为0（或缺失）的词"""
    if table.empty:
        return table
    complete = (table.fillna(0) > 0).all(axis=1)
    dropped = int((~complete).sum())
    if stats is not None:
        stats.words_dropped += dropped
    if dropped:
        logger.info(f"剔除 {dropped} 个未在所有年份出现的词")
    return table[complete]


def consolidate(
    records: Iterable[UnigramRecord], stats: Optional[IngestStats] = None
) -> pd.DataFrame:
    """大小写与词性合并后累加，再做完整性筛选"""
    return apply_completeness(accumulate_counts(records), stats)


def read_word_list(path: Optional[str]) -> Set[str]:
    """
    读取词表文件（每行一个词，# 开头为注释），词经过同样的大小写合并

    Raises:
        ConfigurationError: 文件无法读取
    """
    if path is None:
        return set()
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line.strip() for line in f]
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigurationError(f"无法读取词表文件 {path}: {e}") from e
    return {case_fold(line) for line in lines if line and not line.startswith("#")}


@dataclass(frozen=True)
class Lexicon:
    frequencies: FrequencyMatrix
    tags: pd.DataFrame
    years: tuple

    @property
    def c(self) -> int:
        return self.frequencies.c

    @property
    def beta(self) -> int:
        """初始年份的语料总量"""
        if self.frequencies.T == 0:
            return 0
        return int(self.frequencies.counts[:, 0].sum())

    @property
    def ln_beta(self) -> float:
        return math.log(self.beta) if self.beta > 0 else math.nan

    @property
    def ratio(self) -> float:
        """c/β"""
        return self.c / self.beta if self.beta > 0 else math.nan

    def tag_counts(self) -> dict:
        return {col: int(self.tags[col].sum()) for col in TAG_COLUMNS}

    def to_frame(self) -> pd.DataFrame:
        df = pd.DataFrame(
            self.frequencies.counts, columns=[str(y) for y in self.years]
        )
        df.insert(0, "word", list(self.frequencies.words))
        for i, col in enumerate(TAG_COLUMNS, start=1):
            df.insert(i, col, self.tags[col].astype(int).to_numpy())
        return df


def build_lexicon(
    table: pd.DataFrame,
    stopword_file: Optional[str] = None,
    swadesh_file: Optional[str] = None,
) -> Lexicon:
    """由词×年份计数表生成词表（词按字典序排列）并标记停用词与 Swadesh 词"""
    table = table.sort_index(axis=0).sort_index(axis=1)
    words = tuple(str(w) for w in table.index)
    counts = np.asfortranarray(table.to_numpy(dtype=np.int64).reshape(len(words), table.shape[1]))
    stopwords = read_word_list(stopword_file)
    swadesh = read_word_list(swadesh_file)
    tags = pd.DataFrame(
        {
            "is_stopword": [w in stopwords for w in words],
            "is_swadesh": [w in swadesh for w in words],
        },
        index=pd.Index(words, name="word", dtype=object),
    )
    return Lexicon(
        frequencies=FrequencyMatrix(counts=counts, words=words),
        tags=tags,
        years=tuple(int(y) for y in table.columns),
    )


def save_lexicon(lexicon: Lexicon, file_path: str) -> None:
    write_frame(lexicon.to_frame(), file_path)


def load_lexicon(file_path: str) -> Lexicon:
    """
    读取词表CSV（word, is_stopword, is_swadesh, 年份列...）

    Raises:
        ConfigurationError: 文件不存在或格式不符
    """
    if not os.path.isfile(file_path):
        raise ConfigurationError(f"词表文件不存在: {file_path}")
    try:
        df = pd.read_csv(file_path, keep_default_na=False, dtype={"word": str}, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise ConfigurationError(f"无法解析词表文件 {file_path}: {e}") from e
    if list(df.columns[:3]) != ["word"] + TAG_COLUMNS:
        raise ConfigurationError(
            f"词表表头必须以 word,{','.join(TAG_COLUMNS)} 开头, 当前: {list(df.columns[:3])}"
        )
    try:
        years = tuple(int(c) for c in df.columns[3:])
        counts = np.asfortranarray(df.iloc[:, 3:].to_numpy(dtype=np.int64))
        tags = df.set_index("word")[TAG_COLUMNS].astype(int).astype(bool)
    except ValueError as e:
        raise ConfigurationError(f"词表文件 {file_path} 含有非整数的年份或计数: {e}") from e
    words = tuple(df["word"])
    if len(set(words)) != len(words):
        raise ConfigurationError(f"词表文件 {file_path} 含有重复的词")
    tags.index = pd.Index(words, name="word", dtype=object)
    return Lexicon(
        frequencies=FrequencyMatrix(counts=counts.reshape(len(words), len(years)), words=words),
        tags=tags,
        years=years,
    )


class UnigramIngestor:
    """
    一元词频数据处理器: 逐个分片过滤并累加，合并后做完整性筛选
    """

    def __init__(
        self,
        min_volumes: int = 1,
        year_range: Optional[Tuple[int, int]] = None,
        log_level: int = logging.INFO,
    ):
        self.min_volumes = min_volumes
        self.year_range = year_range
        self.logger = setup_logger("rankDrift.UnigramIngestor", log_level)

    def run(
        self,
        paths: Sequence[str],
        stopword_file: Optional[str] = None,
        swadesh_file: Optional[str] = None,
    ) -> Tuple[Lexicon, IngestStats]:
        stats = IngestStats()
        tables: List[pd.DataFrame] = []
        total = len(paths)
        for i, path in enumerate(paths, start=1):
            shard_stats = IngestStats()
            records = filter_records(
                read_records([path], shard_stats), self.min_volumes, self.year_range, shard_stats
            )
            tables.append(accumulate_counts(records))
            self.logger.info(
                f"[{i}/{total}] {path}: 读取 {shard_stats.read}, 格式错误 {shard_stats.malformed}, "
                f"过滤 {shard_stats.filtered}, 保留 {shard_stats.retained}"
            )
            stats = stats.merge(shard_stats)
        table = apply_completeness(merge_tables(tables), stats)
        lexicon = build_lexicon(table, stopword_file, swadesh_file)
        self.logger.info(
            f"词表完成: c={lexicon.c}, beta={lexicon.beta}, 标记={lexicon.tag_counts()}"
        )
        return lexicon, stats
