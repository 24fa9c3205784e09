class InvalidStructure(ValueError):
    """An input violates an algebraic axiom. ``witness`` names the offending elements."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message} (witness: {witness})")
        self.witness = witness


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Unsupported(NotImplementedError):
    """A check whose hypotheses fall outside what is implemented (never approximated)."""


class TheoremViolation(AssertionError):
    """A computed object contradicts a proved statement; always a bug somewhere."""

    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message} (witness: {witness})")
        self.witness = witness
