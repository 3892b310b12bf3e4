"""Exception hierarchy shared by every module."""


class ShuffleError(Exception):
    """Base class for all errors raised by shufflekit."""


class LengthMismatch(ShuffleError):
    pass


class EmptyArity(ShuffleError):
    pass


class AlphabetMismatch(ShuffleError):
    pass


class BadToken(ShuffleError):
    """A word or file line contains a symbol outside the declared alphabet."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateWord(UserWarning):
    """Emitted (as a warning) when a language file lists a word twice."""


class NodeBudgetExceeded(ShuffleError):
    """An enumeration or search ran past its node budget.

    The answer is unknown; callers must treat this as inconclusive.
    ``verdict`` holds the partial statistics when raised by a decider.
    """

    def __init__(self, message, nodes_explored=0, verdict=None):
        super().__init__(message)
        self.nodes_explored = nodes_explored
        self.verdict = verdict


class StateBlowupLimit(ShuffleError):
    pass


class RegexSyntaxError(ShuffleError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownSymbol(RegexSyntaxError):
    pass
