from .rank_metrics import (
    RankMatrix,
    RankedList,
    RankChangeSummary,
    assign_ranks,
    rank_matrix,
    ranked_list,
    rank_change_summary,
    tail_lists,
    group_summary,
)
from .rbo_metrics import RBO_MODES, RboParams, agreement, rbo, rbo_curves
from .turnover import (
    NEUTRAL_TURNOVER_B,
    TurnoverResult,
    classify_turnover,
    default_y_grid,
    turnover_curve,
    fit_turnover,
    turnover,
    pooled_turnover,
)

__all__ = [
    "RankMatrix",
    "RankedList",
    "RankChangeSummary",
    "assign_ranks",
    "rank_matrix",
    "ranked_list",
    "rank_change_summary",
    "tail_lists",
    "group_summary",
    "RBO_MODES",
    "RboParams",
    "agreement",
    "rbo",
    "rbo_curves",
    "NEUTRAL_TURNOVER_B",
    "TurnoverResult",
    "classify_turnover",
    "default_y_grid",
    "turnover_curve",
    "fit_turnover",
    "turnover",
    "pooled_turnover",
]
