"""Exception hierarchy shared by the parser, semantics and builder."""

from __future__ import annotations


class RosaError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RosaError):
    """Malformed input text.

    Positions are 1-based (line, column) into the source that was parsed.
    """

    def __init__(self, line: int, column: int, expected: str, found: str):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"{line}:{column}: expected {expected}, found {found}")

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.column)


class LexError(ParseError):
    """A character that begins no token."""

    def __init__(self, line: int, column: int, char: str):
        self.char = char
        RosaError.__init__(self, f"{line}:{column}: unexpected character {char!r}")
        self.line = line
        self.column = column
        self.expected = "a token"
        self.found = repr(char)


class ValidationError(RosaError):
    """A literal that lexes fine but violates a value constraint
    (probability outside [0,1], non-positive finite rate)."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")

    @property
    def position(self) -> tuple[int, int]:
        return (self.line, self.column)


class DuplicateDefinition(RosaError):
    """The same process name bound twice in one program."""

    def __init__(self, name: str, line: int, column: int):
        self.name = name
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: duplicate definition of {name!r}")


class UnboundVariable(RosaError):
    """A process variable with no binding in the definition environment."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"undefined process variable {name!r}")


class UnguardedRecursion(RosaError):
    """Unfolding a definition never reached an action guard within budget
    (e.g. ``P = P``)."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(
            f"unguarded recursion detected while unfolding {name!r}"
        )
