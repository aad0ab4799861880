"""Error taxonomy shared by all riso modules.

Exit-code mapping used by the CLI lives in :mod:`riso.cli`; library code
raises these and never calls sys.exit.
"""


class RisoError(Exception):
    """Base class for all library errors."""


class InsufficientPrecision(RisoError):
    """A decision would depend on series terms beyond the certified order."""


class ExtensionRequired(RisoError):
    """A coefficient-field extension would exceed the configured degree bound."""


class NotSquarefree(RisoError):
    """The polynomial has a repeated factor; take the squarefree part first."""


class NotNested(RisoError):
    """A chain of balls was not pairwise nested."""


class UnsupportedConfiguration(RisoError):
    """The decision procedure cannot certify the configuration either way."""


class Undetermined(RisoError):
    """A stratum membership could not be certified for a candidate point."""


class UndecidableAtCap(RisoError):
    """Residue liftability undecided within the configured depth cap."""


class UnsupportedBase(RisoError):
    """The requested residue system cannot represent the input coefficients."""


class InterpolationMismatch(RisoError):
    """Held-out verification of an interpolated point-count polynomial failed."""


class FitAmbiguous(RisoError):
    """Samples under-determine the breakpoints of a piecewise-linear profile."""


class ParseError(RisoError):
    """Syntax error in an input expression; carries position information."""

    def __init__(self, message, position=None, expected=None):
        self.position = position
        self.expected = tuple(expected) if expected else ()
        loc = f" at position {position}" if position is not None else ""
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{loc}{exp}")


class UnknownVariable(RisoError):
    """An expression used a symbol outside the declared variable set."""
