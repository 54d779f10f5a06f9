class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class GridInsufficientError(RuntimeError):
    """No grid size met the escape budget for some ``m``."""

    def __init__(self, m: int, epsilon: float, budget: float, largest_n: int, estimate: float):
        self.m = m
        super().__init__(
            f"grid-insufficient: m={m} (epsilon={epsilon!r}) still escapes with estimated "
            f"probability {estimate!r} >= budget {budget!r} at the largest grid size n={largest_n}"
        )
