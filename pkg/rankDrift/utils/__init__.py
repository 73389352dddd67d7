from .logger_utils import setup_logger, set_log_level, attach_file_handler, detach_file_handlers
from .json_save_load_utils import JsonSaveLoadUtils
from .csv_utils import write_frame
from .exceptions import *

__all__ = [
    "setup_logger",
    "set_log_level",
    "attach_file_handler",
    "detach_file_handlers",
    "JsonSaveLoadUtils",
    "write_frame",
    "RankDriftError",
    "ParameterDomainError",
    "InfeasibleGuaranteeError",
    "CorpusOverflowError",
    "ShapeMismatchError",
    "RankIntegrityError",
    "InsufficientLengthError",
    "FitUndefinedError",
    "SingularDesignError",
    "InsufficientDataError",
    "ConfigurationError",
]
