"""
Custom exceptions for ecs-bench
"""


class ECSError(Exception):
    """Base exception for ecs-bench errors"""
    pass


class ContradictionError(ECSError):
    """An answer contradicts what is already known (inconsistent oracle)"""
    pass


class IllegalRoundError(ECSError):
    """A round schedule broke the ER or CR legality rule"""
    pass


class ConstantRoundFailure(ECSError):
    """Constant-round sort left some elements unclassified"""

    def __init__(self, message: str, lambda_frac: float = 0.0, unresolved_groups: int = 0):
        super().__init__(message)
        self.lambda_frac = lambda_frac
        self.unresolved_groups = unresolved_groups


class ConfigError(ECSError):
    """Invalid distribution parameters, grid or flag"""
    pass


class ResourceGuardError(ConfigError):
    """Experiment grid predicted to exceed the comparison ceiling"""
    pass


class ResultsWriteError(ECSError):
    """Writing results to disk failed"""
    pass
