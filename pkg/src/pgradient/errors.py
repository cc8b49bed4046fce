"""Exception types shared across the package."""


class PresentationSyntaxError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: "
        super().__init__(where + message)


class EnumerationError(RuntimeError):
    """Coset enumeration ran out of room before the table closed."""


class IntegrityError(RuntimeError):
    """An internal invariant failed. Always a bug, never a property of the input."""


class NotSaturatedError(RuntimeError):
    """The p-quotient lattice did not terminate inside the allowed depth/budget."""


class NonInvariantFunctionalError(ValueError):
    def __init__(self, message, step=None):
        self.step = step
        super().__init__(message if step is None else f"step {step}: {message}")
