"""Exception hierarchy shared by all modules and the command line."""


class F1Error(Exception):
    pass


class ParseError(F1Error, ValueError):
    """Malformed literal. ``token`` is the offending piece of input."""

    def __init__(self, message, token=None):
        if token is not None:
            message = f"{message}: {token!r}"
        super().__init__(message)
        self.token = token


class PreconditionError(F1Error, ValueError):
    """A mathematical precondition of an operation does not hold."""


class InsufficientDepthError(PreconditionError):
    def __init__(self, depth, required, what="evaluation"):
        super().__init__(
            f"insufficient Habiro depth for {what}: got N={depth}, requires depth >= {required}"
        )
        self.depth = depth
        self.required = required


class IntegralityError(F1Error, ArithmeticError):
    """Witt ring operation on integral input produced a non-integral coordinate."""
