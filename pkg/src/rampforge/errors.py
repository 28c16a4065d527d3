"""Exception types shared across the package."""


class RampforgeError(Exception):
    """Base class for all domain errors (CLI maps these to exit code 2)."""


class HexParseError(RampforgeError, ValueError):
    """A string is not a valid #RRGGBB color."""


class OutOfGamutError(RampforgeError, ValueError):
    """A CIELAB color has no sRGB representation."""


class InvalidRampError(RampforgeError, ValueError):
    """A ramp violates structural preconditions (too short, degenerate)."""


class InvalidEditError(RampforgeError, ValueError):
    """An affine edit has invalid parameters (e.g. non-positive scale)."""


class FeatureError(RampforgeError, ValueError):
    """A curve is too degenerate to compute features on."""


class ClusteringError(RampforgeError, ValueError):
    """Clustering preconditions violated or no valid configuration found."""


class CorpusError(RampforgeError, ValueError):
    """Corpus file malformed; message carries the offending line number."""


class ModelBookError(RampforgeError, ValueError):
    """Model book file malformed, wrong version, or build preconditions unmet."""


class LightnessRangeError(RampforgeError, ValueError):
    """Seeding pushed L* outside [0, 100]; pick another model or seed."""
