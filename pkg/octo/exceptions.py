"""
Error Hierarchy

Every failure raised by the algebra and geometry layers derives from
OctoGaussError and from the builtin exception a caller would naturally catch.
"""


class OctoGaussError(Exception):
    """Base class for all OctoGauss errors"""


class LevelMismatchError(OctoGaussError, ValueError):
    """Operands live at different Cayley-Dickson levels"""


class InvalidLevelError(OctoGaussError, ValueError):
    """Level out of range or coefficient vector of the wrong length"""


class ZeroInverseError(OctoGaussError, ZeroDivisionError):
    """Inverse of the zero element requested"""


class NonTangentError(OctoGaussError, ValueError):
    """Point not on the unit sphere or vector not tangent at that point"""


class DegenerateChartError(OctoGaussError, ValueError):
    """Chart Jacobian lost rank, so frame or normal is undefined"""


class StencilDomainError(OctoGaussError, ValueError):
    """A finite-difference stencil left the chart's domain box"""


class SingularSetError(OctoGaussError, ValueError):
    """Representative too close to the set where a0^2 + a1^2 vanishes"""


class ZeroFieldError(OctoGaussError, ValueError):
    """The zero vector field has no Hopf normalization"""


class InvalidComplexError(OctoGaussError, ValueError):
    """Simplicial complex with a missing face or a bad vertex index"""


class EmptySampleError(OctoGaussError, ValueError):
    """A sample-based check received no samples"""
