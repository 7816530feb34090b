"""Error taxonomy.

Two broad families matter for the command-line surface:

* :class:`InputError` — the caller handed us something malformed or out of
  bounds (bad document, unknown reference, dimension guard).  CLI exit code 2.
* :class:`MathViolation` — the data was well formed but a mathematical law it
  was supposed to satisfy failed (an axiom, an exactness check, a structural
  precondition).  CLI exit code 1.
"""

from __future__ import annotations


class KitaevError(Exception):
    """Base class for all package-specific errors."""


class InputError(KitaevError):
    """Malformed or out-of-bounds input (CLI exit code 2)."""


class MathViolation(KitaevError):
    """A mathematical law that was required to hold failed (CLI exit code 1)."""


# --- input-shaped problems -------------------------------------------------

class NonSquare(InputError):
    """A square matrix was required (trace, inverse, idempotency)."""


class DimensionGuardExceeded(InputError):
    """A construction would exceed the configured total-dimension guard."""


class MalformedRotation(InputError):
    """Half-edge rotation data does not define a valid cell decomposition."""


class NotIncident(InputError):
    """The named edge / half-edge is not incident to the named cell."""


class NotASite(InputError):
    """The (vertex, plaquette) pair with flanking half-edges is not a site."""


class UnlabeledCell(InputError):
    """A cell that needs a label has none (and no default applies)."""


class InvalidLabeling(InputError):
    """Labels violate the side-compatibility rules of the surface."""


# --- mathematical violations ------------------------------------------------

class NotAGroup(MathViolation):
    """A multiplication table fails the group axioms."""


class NotSubgroup(MathViolation):
    """A subset of group elements is not closed / lacks identity or inverses."""


class NotCocycle(MathViolation):
    """A two-argument scalar function fails the normalized 2-cocycle laws."""


class NoHaarIntegral(MathViolation):
    """No two-sided normalized integral exists for the given structure."""


class DegenerateTraceForm(MathViolation):
    """The symmetric trace form is singular; the algebra is not separable
    in the required sense."""


class NoCharacter(MathViolation):
    """An edge algebra admits no algebra character, so no vacuum state."""


class HopfMismatch(MathViolation):
    """Two constituents were built over structurally different Hopf data."""


class AssociativityFailure(MathViolation):
    """A constructed product fails associativity (bad input structure)."""


class NotAModule(MathViolation):
    """Candidate action data fails the module (algebra representation) laws."""


class ModuleInvalid(MathViolation):
    """A module-algebra or comodule-algebra law fails."""


class NonIntegerTrace(MathViolation):
    """An exact trace that must be a nonnegative integer is not one."""


class PropertyCheckFailed(MathViolation):
    """A constructed object failed one of its defining identities."""


class Mismatch(MathViolation):
    """Two exact quantities that must agree do not."""


class ValidationFailure(MathViolation):
    """A validation report containing failures was asserted to be clean."""
