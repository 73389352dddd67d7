"""
rankDrift 的异常层次。每个叶子类同时继承对应的内置异常，
调用方按内置类型捕获也能正常工作。
"""


class RankDriftError(Exception):
    """所有领域异常的基类"""


class ParameterDomainError(RankDriftError, ValueError):
    """参数超出定义域"""


class InfeasibleGuaranteeError(ParameterDomainError):
    """语料规模小于词表规模，无法保证每个词至少出现一次"""


class CorpusOverflowError(RankDriftError, OverflowError):
    """语料规模超出64位整数范围"""


class ShapeMismatchError(RankDriftError, ValueError):
    """输入长度或形状不一致"""


class RankIntegrityError(RankDriftError, ValueError):
    """排名列不是 1..c 的排列"""


class InsufficientLengthError(RankDriftError, ValueError):
    """时间步数不足以计算指标"""


class FitUndefinedError(RankDriftError, RuntimeError):
    """拟合无定义（例如全零换手序列）"""


class SingularDesignError(FitUndefinedError):
    """自变量全部相同，设计矩阵奇异"""


class InsufficientDataError(FitUndefinedError):
    """拟合点数不足"""


class ConfigurationError(RankDriftError):
    """配置文件或词表文件不可用"""
