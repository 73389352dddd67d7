from .utils import *

__all__ = [
    "setup_logger",
    "JsonSaveLoadUtils",
    "RankDriftError",
]
__version__ = "0.1.0"
