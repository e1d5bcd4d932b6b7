"""Exception types shared across the package."""


class CommahomError(Exception):
    """Base class for all package errors."""


class MalformedPathError(CommahomError):
    """A relation or path is not composable, too short, or uses unknown arrows."""


class NonAdmissibleError(CommahomError):
    """Path enumeration did not terminate within the length bound."""


class AlgebraMismatchError(CommahomError):
    """Two representations over different algebras were combined."""


class InvalidRepresentationError(CommahomError):
    """Matrix shapes do not match the dimension vector, or a relation acts nonzero."""


class MorphismError(CommahomError):
    """Blocks of a would-be morphism fail the intertwining equations."""


class UndecidedError(CommahomError):
    """A yes/no question could not be certified either way within budget."""


class BudgetExceededError(CommahomError):
    """An enumeration or iteration exceeded its configured budget."""


class ClassCountExceededError(CommahomError):
    """Too many extension classes to realize explicitly."""


class HypothesisFailedError(CommahomError):
    """A theorem checker's hypothesis failed; carries which one."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        super().__init__(f"hypothesis failed: {hypothesis}" + (f" ({detail})" if detail else ""))


class InvalidPhiError(CommahomError):
    """The connecting map of a triplet is not a module morphism."""


class SetupError(CommahomError):
    """A triangular setup failed its consistency verification."""


class PostconditionFailedError(CommahomError):
    """A constructed approximation failed its verification; never silently returned."""


class IterationCapExceededError(CommahomError):
    """The universal-extension iteration hit its cap before converging."""


class NotGorensteinError(CommahomError):
    """Self-injective dimension not certified finite; orthogonality shortcut refused."""


class SpecParseError(CommahomError):
    """A text input could not be parsed; carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
