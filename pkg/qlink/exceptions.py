class QLinkError(Exception):
    """Base class for every error raised by qlink."""


class BelowHorizonError(QLinkError):
    """A satellite sits at or below the local horizon, so the link does not exist."""

    horizon_msg = "The satellite is below the local horizon for a ground arc of {arc_km} km."


class InvalidElevationError(QLinkError, ValueError):
    """An elevation angle outside (0, pi/2] was used for an atmospheric path."""

    elevation_msg = "Elevation must lie in (0, pi/2] radians, got {elevation}."


class DegenerateInputError(QLinkError):
    """A closed-form time or rate diverges for the given inputs."""

    diverging_msg = "The {quantity} diverges because {factor} is zero."


class DomainError(QLinkError, ValueError):
    """A probability-valued argument fell outside [0, 1]."""


class ParseError(QLinkError):
    """A scenario file could not be parsed."""


class ValidationError(QLinkError, ValueError):
    """A configuration value violates one of its invariants."""


class UnknownFigureError(QLinkError):
    """An unknown preset or figure identifier was requested."""

    unknown_msg = "Unknown preset or figure '{name}'. Known: {known}."


# Errors that turn a single sweep point into a missing value instead of aborting the sweep.
SWEEP_ERRORS = (BelowHorizonError, DegenerateInputError, InvalidElevationError)
