"""Exception types shared across modules."""


class RotaryError(Exception):
    pass


class CapExceeded(RotaryError):
    """A configured size cap was hit before a computation finished."""

    def __init__(self, what, cap):
        super().__init__(f"{what} exceeded cap {cap}")
        self.what = what
        self.cap = cap


class PresentationSyntaxError(RotaryError):
    def __init__(self, message, line=None, column=None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


class IncompleteTable(RotaryError):
    pass


class GeneratorCollapsed(RotaryError):
    pass


class NotTight(RotaryError):
    pass


class NotMember(RotaryError):
    pass


class NotFaithful(RotaryError):
    pass


class NotNormal(RotaryError):
    pass


class NotChiral(RotaryError):
    pass


class NotEquivelar(RotaryError):
    pass


class InvalidParams(RotaryError):
    pass
