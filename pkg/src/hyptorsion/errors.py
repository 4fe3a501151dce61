"""Exception hierarchy shared by all modules.

A ``TheoremViolation`` means the computation produced something the underlying
mathematics rules out (a division polynomial with non-integral coefficients,
an exact division leaving a remainder, a certified torsion point failing its
order check, ...).  These are never swallowed: the CLI maps them to exit
code 2 so callers can tell "the math broke" apart from "bad invocation".
"""


class HyptorsionError(Exception):
    """Base class for errors raised by this package."""


class UsageError(HyptorsionError, ValueError):
    """Invalid arguments, malformed curve files, unsupported domains."""


class BadModelError(UsageError):
    """Curve data that does not define a smooth odd-degree model."""


class TheoremViolation(HyptorsionError, ArithmeticError):
    """A mathematically impossible result; abort loudly, never truncate."""


class InexactDivisionError(TheoremViolation):
    """Exact polynomial division left a nonzero remainder."""
