import os
import logging
from datetime import datetime
from typing import Optional

ROOT_LOGGER_NAME = "rankDrift"


def setup_logger(
    logger_name="rankDrift.main",
    log_level: int = logging.INFO,
    log_dir: Optional[str] = None,
) -> logging.Logger:
    """配置日志记录器"""
    logger = logging.getLogger(logger_name)
    logger.setLevel(log_level)

    # 避免重复添加处理器
    if logger.handlers:
        return logger

    formatter = logging.Formatter("%(asctime)s - %(levelname)s - %(message)s")

    # 控制台处理器
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # 文件处理器, 仅在指定目录时写入
    if log_dir is not None:
        _add_file_handler(logger, log_dir, logger_name, formatter)

    return logger


def attach_file_handler(log_dir: str) -> logging.Logger:
    """
    给根日志记录器 rankDrift 挂文件处理器。
    所有 rankDrift.* 子记录器的消息都会传播到这里，
    CLI 在确定输出目录后调用一次即可。
    """
    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    root_logger.setLevel(logging.DEBUG)
    if any(isinstance(h, logging.FileHandler) for h in root_logger.handlers):
        return root_logger
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    _add_file_handler(root_logger, log_dir, ROOT_LOGGER_NAME, formatter)
    return root_logger


def detach_file_handlers() -> None:
    """关闭并移除根记录器上的文件处理器"""
    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    for handler in list(root_logger.handlers):
        if isinstance(handler, logging.FileHandler):
            handler.close()
            root_logger.removeHandler(handler)


def _add_file_handler(logger, log_dir, logger_name, formatter):
    os.makedirs(log_dir, exist_ok=True)
    file_handler = logging.FileHandler(
        os.path.join(
            log_dir, f"{logger_name}_{datetime.now().strftime('%Y%m%d')}.log"
        ),
        encoding="utf-8",
    )
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)


def set_log_level(log_level: int) -> None:
    """调整所有已创建的 rankDrift.* 记录器的级别"""
    for name in list(logging.root.manager.loggerDict):
        if name.startswith(ROOT_LOGGER_NAME + "."):
            logging.getLogger(name).setLevel(log_level)
