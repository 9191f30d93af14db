"""Exception hierarchy.

Every failure the pipeline can report derives from :class:`CurvetopError`
and carries the process exit code the command line uses for it.
"""


class CurvetopError(Exception):
    exit_code = 3


class InputError(CurvetopError):
    exit_code = 1


class PolynomialSyntaxError(InputError):
    """Malformed polynomial text; ``offset`` is the byte offset of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownVariable(InputError):
    def __init__(self, name, offset):
        super().__init__(f"unknown variable {name!r} at offset {offset}")
        self.name = name
        self.offset = offset


class NotIsolating(CurvetopError):
    """An interval handed to refinement does not isolate exactly one root."""


class CommonComponent(CurvetopError):
    """The two polynomials share a non-constant factor."""


class LeadingCoeffVanishes(CurvetopError):
    """The leading y-coefficient vanishes at a critical x-value."""


class SeparationFailure(CurvetopError):
    """Refinement budget exhausted before roots or boxes separated."""


class NoCriticalPoints(CurvetopError):
    exit_code = 2


class GenericityFailure(CurvetopError):
    """No shear in the retry schedule put the curve in generic position."""


class TopologyInconsistent(CurvetopError):
    """Neighbouring fibres disagree; a critical point went undetected."""
