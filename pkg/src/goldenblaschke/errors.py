"""Exception hierarchy. Each class carries a stable ``code`` for CLI output."""


class GeometryError(ValueError):
    code = "GeometryError"


class NumericFailure(GeometryError):
    """An iterative solve failed; the CLI maps these to exit status 1."""

    code = "NumericFailure"


class NonConvergence(NumericFailure):
    """Iteration budget exhausted without meeting tolerance."""

    code = "NonConvergence"


class CoincidentPreimages(NumericFailure):
    """Two circle preimages merged within tolerance."""

    code = "CoincidentPreimages"


class FociOutsideDisc(NumericFailure):
    code = "FociOutsideDisc"


class FactorZeroOutsideDisc(NumericFailure):
    """A composition factor produced a zero outside the disc."""

    code = "FactorZeroOutsideDisc"


class DegreeZero(GeometryError):
    code = "DegreeZero"


class BracketInvalid(GeometryError):
    """Function has the same sign at both bracket ends."""

    code = "BracketInvalid"


class PoleProximity(GeometryError):
    code = "PoleProximity"


class NotUnimodular(GeometryError):
    """Point is not on the unit circle."""

    code = "NotUnimodular"


class InvalidBlaschke(GeometryError):
    """Prefactor not unimodular, or a zero outside the open disc."""

    code = "InvalidBlaschke"


class SizeMismatch(GeometryError):
    code = "SizeMismatch"


class NotInterspersed(GeometryError):
    code = "NotInterspersed"


class NotOnSegment(GeometryError):
    code = "NotOnSegment"


class ZeroCenter(GeometryError):
    code = "ZeroCenter"


class ZeroOrCoincidentFoci(GeometryError):
    code = "ZeroOrCoincidentFoci"


class DegenerateEllipse(GeometryError):
    """String length does not exceed the focal distance."""

    code = "DegenerateEllipse"


class DegenerateChord(GeometryError):
    code = "DegenerateChord"


class DegenerateTriangle(GeometryError):
    code = "DegenerateTriangle"


class DegenerateRadicand(GeometryError):
    code = "DegenerateRadicand"


class ViewportOverflow(GeometryError):
    code = "ViewportOverflow"
