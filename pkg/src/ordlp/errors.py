"""Exception types shared across the package.

The CLI maps these onto its stable exit codes: input problems exit 1,
violated internal invariants exit 2, exhausted enumeration budgets
exit 3.  (Counterexamples found by the oracles are reported data, not
exceptions; the CLI turns them into exit 4 itself.)
"""


class OrdlpError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OrdlpError):
    """Problem with user-supplied input: source text, symbols or config."""


class ParseError(InputError):
    """Syntax error, reported with line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class SignatureError(InputError):
    """Inconsistent symbol use, e.g. one name with two arities."""


class NotNormalError(InputError):
    """A rule body is not a conjunction of literals where one is required."""


class TruncationError(InputError):
    """Evaluation reached an atom outside the depth-truncated base.

    Raising instead of guessing keeps truncated runs honest; rerunning
    with a larger depth bound usually resolves it.
    """


class UnboundVariableError(OrdlpError):
    """A term was evaluated under an assignment missing one of its variables."""


class BaseMismatchError(OrdlpError):
    """Two interpretations over different bases were compared."""


class FixpointInvariantError(OrdlpError):
    """A runtime check of the construction's guarantees failed.

    These checks cannot fail on correct code; a raise means a bug, not
    bad input.
    """


class IterationLimitError(FixpointInvariantError):
    """An iteration exceeded its budget.  Budgets are sized so that any
    legitimate run stays well inside them, so this is a bug tripwire."""


class UnionPreconditionError(FixpointInvariantError):
    """The level sequence handed to the union operator is incoherent."""

    def __init__(self, zeta: int, gamma: int):
        super().__init__(
            f"levels {zeta} and {gamma} disagree on values of degree <= {zeta}"
        )
        self.zeta = zeta
        self.gamma = gamma


class BudgetExceededError(OrdlpError):
    """An exhaustive enumeration would exceed the configured budget."""
