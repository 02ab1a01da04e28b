class ToolkitError(Exception):
    """Base class for every error raised by the toolkit."""


class GraphFormatError(ToolkitError, ValueError):
    """Unparseable graph input, out-of-range vertex id, loop or duplicate edge."""


class PreconditionError(ToolkitError, ValueError):
    """A lemma or driver was called outside its stated preconditions.

    ``item`` names the failing condition (e.g. ``"item1"``) when the lemma has several.
    """

    def __init__(self, message: str, *, item: str | None = None):
        super().__init__(message)
        self.item = item


class InvariantViolation(ToolkitError, RuntimeError):
    """A construction ran out of candidates although its preconditions held."""


class SearchBudgetExceeded(ToolkitError):
    def __init__(self, budget: int):
        super().__init__(f"search budget of {budget} nodes exhausted")
        self.budget = budget
