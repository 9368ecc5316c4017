"""Exception types shared across the package."""


class CapabilityError(Exception):
    """The ring instance lacks the structure an operation needs."""


class InvariantError(RuntimeError):
    """An internal invariant failed. Indicates a bug or a broken ring instance."""


class ParseError(ValueError):
    """Malformed textual input, with an optional source position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
