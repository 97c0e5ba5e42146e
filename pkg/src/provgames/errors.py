"""Exception hierarchy shared by the engine and the command line."""


class ProvGameError(Exception):
    """Base class for all engine errors."""


class UnknownPositionError(ProvGameError, KeyError):
    def __str__(self):
        return f"unknown position: {self.args[0]}"


class InconsistentGameError(ProvGameError):
    """A solved game violates the win-move invariants (engine bug)."""


class DatalogSyntaxError(ProvGameError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column


class ValidationError(ProvGameError):
    """Program or database is syntactically fine but not acceptable."""


class RecursiveProgramError(ValidationError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("recursive program: predicate cycle " + " -> ".join(self.cycle))


class EdbIdbConflictError(ValidationError):
    pass


class ArityError(ValidationError):
    pass


class DuplicateFactError(ValidationError):
    pass


class UnknownAtomError(ValidationError):
    """The queried atom has no position in the game."""


class NegationUnsupportedError(ProvGameError):
    """Polynomial read-out requested where negation is in scope."""


class NotDerivedError(ProvGameError):
    """A why/poly question about an atom that is not in the query result."""


class DerivedError(ProvGameError):
    """A why-not question about an atom that is in the query result."""


class DrawnPositionError(InconsistentGameError):
    """A query evaluation game produced a drawn position."""
