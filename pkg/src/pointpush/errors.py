"""Exceptions shared across the package.

The CLI maps these onto its exit codes: verification failures exit 1,
usage problems exit 2 (argparse), exceeded enumeration budgets exit 3.
"""


class PointPushError(Exception):
    """Base class for package-specific failures."""


class BudgetExceededError(PointPushError):
    """A brute-force enumeration would exceed the configured product budget."""


class LengthCapError(PointPushError):
    """Word growth hit the length cap before a usable ratio could be formed."""


class BoundOrderingError(PointPushError):
    """The four-term efficiency bound chain came out unordered.

    This never happens for a correct build; it signals an upstream bug in the
    matrix or spectral code and must abort loudly rather than be reported as
    a value.
    """


class HomologyError(PointPushError):
    """An automorphism does not act trivially on first homology.

    Only puncture-fixing classes lift to the cyclic covers, so the chain
    lifting refuses anything whose abelianized action is not the identity.
    """
