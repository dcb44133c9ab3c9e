"""Exceptions shared across the package."""


class AlphabetMismatch(ValueError):
    """Two operands live over different alphabet sizes."""


class EmptyWordOperand(ValueError):
    """An operand carries an empty-word component where none is allowed."""


class TermBudgetExceeded(RuntimeError):
    """A result would store more terms than the configured ceiling allows."""

    def __init__(self, needed, ceiling):
        super().__init__(
            "computation needs %d terms, exceeding the term budget of %d "
            "(raise it with set_term_budget or the AREASIG_TERM_BUDGET "
            "environment variable)" % (needed, ceiling)
        )
        self.needed = needed
        self.ceiling = ceiling


class ExpressionSyntaxError(ValueError):
    """Parse failure in the expression front end, with a character offset."""

    def __init__(self, message, position):
        super().__init__("%s at offset %d" % (message, position))
        self.position = position
