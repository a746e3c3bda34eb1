"""Exception hierarchy shared by every wittkit module.

The CLI maps these onto exit codes, so each class corresponds to one
failure family rather than one call site.
"""

from __future__ import annotations


class WittkitError(Exception):
    """Base class for all library errors."""


class MalformedInput(WittkitError, ValueError):
    """Text or arguments that do not parse under the documented formats."""


class DegenerateInput(WittkitError, ValueError):
    """Well-formed input outside an operation's mathematical domain."""


class InsufficientPrecision(WittkitError):
    """A Laurent-series chart is too shallow to resolve a requested coefficient.

    ``required_steps`` is the Hensel depth that would make the request
    resolvable, when that can be computed.
    """

    def __init__(self, message: str = "increase steps", required_steps: int | None = None):
        super().__init__(message)
        self.required_steps = required_steps


class BoundInsufficient(WittkitError):
    """A degree-bounded computation could not certify its answer at the bound."""


class BoundExhausted(BoundInsufficient):
    """Escalation reached its configured maxima without certification."""


class ResourceLimit(BoundInsufficient):
    """The stored-coefficient memory guard tripped."""
