"""Exception hierarchy.

Every error carries a stable ``exit_code`` so the command line can map a
failure to a distinct process status without a lookup table elsewhere.
"""


class GravHeightError(Exception):
    """Base class for all estimation failures."""

    exit_code = 1

    @property
    def name(self):
        return type(self).__name__


class ParseError(GravHeightError, ValueError):
    exit_code = 3


class NoFlightDetected(GravHeightError):
    exit_code = 4


class EmptyTrajectory(GravHeightError):
    exit_code = 5


class NoValidSamples(GravHeightError):
    exit_code = 6


class SegmentTooShort(GravHeightError):
    exit_code = 7


class DegenerateDesign(GravHeightError):
    exit_code = 8


class NoConsensus(GravHeightError):
    exit_code = 9


class NonPositiveAcceleration(GravHeightError, ValueError):
    exit_code = 10


class ZeroDuration(GravHeightError, ValueError):
    exit_code = 11


class BehindCamera(GravHeightError, ValueError):
    exit_code = 12


class NoDetections(GravHeightError, ValueError):
    exit_code = 13


class EmptyInput(GravHeightError, ValueError):
    exit_code = 14


EXIT_CODES = {
    cls.__name__: cls.exit_code
    for cls in (
        GravHeightError,
        ParseError,
        NoFlightDetected,
        EmptyTrajectory,
        NoValidSamples,
        SegmentTooShort,
        DegenerateDesign,
        NoConsensus,
        NonPositiveAcceleration,
        ZeroDuration,
        BehindCamera,
        NoDetections,
        EmptyInput,
    )
}
