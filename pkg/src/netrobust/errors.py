"""Exception hierarchy shared by every netrobust module."""


class NetRobustError(Exception):
    """Base class for all errors raised by netrobust."""


class InvalidGraphError(NetRobustError, ValueError):
    """Edge data violates the simple-undirected-graph contract."""


class InvalidSizeError(NetRobustError, ValueError):
    pass


class InvalidNodeError(NetRobustError, ValueError):
    pass


class InvalidDegreeError(NetRobustError, ValueError):
    pass


class ParityError(NetRobustError, ValueError):
    """n * k is odd, so no k-regular graph on n nodes exists."""


class InvalidFamilyError(NetRobustError, ValueError):
    pass


class InvalidParameterError(NetRobustError, ValueError):
    pass


class InvalidMatrixError(NetRobustError, ValueError):
    pass


class DisconnectedGraphError(NetRobustError):
    """The operation needs a connected graph (lambda_2 > 0)."""


class EdgeListParseError(NetRobustError, ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class StabilityError(NetRobustError, ValueError):
    """Time step too large for the explicit integrator."""

    def __init__(self, dt, max_dt):
        self.dt = dt
        self.max_dt = max_dt
        super().__init__(
            f"dt={dt:.6g} is unstable for this graph; require dt <= {max_dt:.12g} (1/lambda_max)"
        )
