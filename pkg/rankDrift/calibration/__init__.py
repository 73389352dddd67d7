from .curve_fit import *

__all__ = [
    "CONFIDENCE",
    "FitResult",
    "fit_loglinear",
    "fit_corpus_growth",
    "fit_zipf_shape",
]
