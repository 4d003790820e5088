"""Exception types shared across the package."""


class SystemaError(Exception):
    """Base class for errors raised by this package."""


class ShapeError(SystemaError):
    """Matrix/vector shapes do not conform."""


class SystemMismatch(SystemaError):
    """Operands belong to different carrier descriptors."""


class NotUnital(SystemaError):
    """Operation needs a multiplicative unit the instance lacks."""


class BudgetExceeded(SystemaError):
    """An exhaustive search ran past its configured budget."""


class FormatError(SystemaError):
    """A text input failed to parse."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column else "")
            message = f"{where}: {message}"
        super().__init__(message)
