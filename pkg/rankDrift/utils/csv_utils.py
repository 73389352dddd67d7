import csv
import os

import pandas as pd

# 实数统一保留10位有效数字，保证输出文件跨平台字节一致
FLOAT_FORMAT = "%.10g"


def write_frame(df: pd.DataFrame, file_path: str) -> str:
    """按固定方言写出CSV: UTF-8、表头、RFC 4180引号、'\\n'换行"""
    os.makedirs(os.path.dirname(file_path) or ".", exist_ok=True)
    df.to_csv(
        file_path,
        index=False,
        encoding="utf-8",
        float_format=FLOAT_FORMAT,
        lineterminator="\n",
        quoting=csv.QUOTE_MINIMAL,
    )
    return file_path
