"""
Domain Exceptions

Exception hierarchy shared by the simulation, statistics, calibration and
data-ingestion layers. Each exception keeps the offending value as an
attribute so callers (and the CLI) can report it without parsing messages.
"""

from typing import Optional


class LobcalError(Exception):
    """Base class for all domain errors"""
    pass


class InvalidParametersError(LobcalError):
    """Raised when a model parameter set violates its invariants"""

    def __init__(self, field: str, message: str):
        self.field = field
        self.message = message
        super().__init__(f"{field}: {message}")


class UnknownParameterError(LobcalError):
    """Raised when a free-parameter name does not exist in ModelParams"""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown parameter: {name}")


class DuplicateOrderError(LobcalError):
    """Raised when an order id is inserted into a book twice"""

    def __init__(self, order_id: int):
        self.order_id = order_id
        super().__init__(f"Duplicate order id: {order_id}")


class NonPositivePriceError(LobcalError):
    """Raised when a price series contains a value <= 0"""

    def __init__(self, index: int, value: float):
        self.index = index
        self.value = value
        super().__init__(f"Non-positive price {value!r} at index {index}")


class DegenerateSeriesError(LobcalError):
    """Raised when a statistic is undefined for the given series"""

    def __init__(self, statistic: str, reason: str):
        self.statistic = statistic
        self.reason = reason
        super().__init__(f"{statistic} undefined: {reason}")


class SingularMatrixError(LobcalError):
    """Raised when a covariance matrix is too ill-conditioned to invert"""

    def __init__(self, condition_number: float, threshold: float):
        self.condition_number = condition_number
        self.threshold = threshold
        super().__init__(
            f"Covariance matrix is numerically singular: "
            f"condition number {condition_number:.4e} exceeds {threshold:.1e}"
        )


class CollinearPointsError(LobcalError):
    """Raised when scattered points cannot be triangulated"""

    def __init__(self, n_points: int):
        self.n_points = n_points
        super().__init__(f"All {n_points} points are collinear; cannot triangulate")


class DataFormatError(LobcalError):
    """Raised when an input file does not follow its documented schema"""

    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message
        self.line = line
        location = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{location}")
