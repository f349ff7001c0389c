"""Exception hierarchy.

Everything raised on purpose by this package derives from
:class:`GeometricPhaseError`, so callers (and the CLI) can separate domain
failures from programming errors with a single ``except``.
"""


class GeometricPhaseError(Exception):
    """Base class for all domain errors raised by :mod:`geophase`."""


class ZeroVector(GeometricPhaseError, ValueError):
    pass


class DimensionMismatch(GeometricPhaseError, ValueError):
    pass


class LengthMismatch(GeometricPhaseError, ValueError):
    pass


class OrthogonalStates(GeometricPhaseError, ValueError):
    """The Pancharatnam connection between two states is undefined."""


class OrthogonalEndpoints(OrthogonalStates):
    """No unique geodesic joins two orthogonal rays."""


class OrthogonalStep(OrthogonalStates):
    """A step along a path crosses (numerically) orthogonal states.

    ``step`` is the index ``j`` of the first offending pair ``(j, j + 1)``;
    for closed loops the closing pair is reported as ``N - 1``.
    """

    def __init__(self, step, magnitude):
        self.step = int(step)
        self.magnitude = float(magnitude)
        super().__init__(
            f"overlap magnitude {magnitude:.3e} at step {step} is below the "
            "orthogonality cutoff; the phase is undefined there"
        )


class MissingTimestamps(GeometricPhaseError, ValueError):
    pass


class NonMonotoneTimestamps(GeometricPhaseError, ValueError):
    pass


class InvalidConfig(GeometricPhaseError, ValueError):
    pass


class GridTooCoarse(GeometricPhaseError, ValueError):
    pass


class BasisMismatch(GeometricPhaseError, ValueError):
    pass


class UnsupportedTopology(GeometricPhaseError, ValueError):
    pass


class InvalidBeta(GeometricPhaseError, ValueError):
    pass
