"""Exception hierarchy shared by all tropabel modules."""


class TropabelError(Exception):
    """Base class; carries a stable machine-readable code."""

    code = "error"


class SingularMatrixError(TropabelError):
    code = "singular_matrix"


class NotSymmetricError(TropabelError):
    code = "not_symmetric"


class NotHermitianError(TropabelError):
    code = "not_hermitian"


class NonIntegralDegreeError(TropabelError):
    code = "non_integral_degree"


class WallDegeneracyError(TropabelError):
    code = "wall_degeneracy"


class NotTrivalentError(TropabelError):
    code = "not_trivalent"


class FlatVertexError(TropabelError):
    code = "flat_vertex"


class NotDivisibleError(TropabelError):
    code = "not_divisible"


class InvalidCurveError(TropabelError):
    code = "invalid_curve"


class NoTropicalPolarizationError(TropabelError):
    code = "no_tropical_polarization"


class DegenerateDegreeError(TropabelError):
    code = "degenerate_degree"


class NonIntegralExponentsError(TropabelError):
    code = "non_integral_exponents"


class DegreeMismatchError(TropabelError):
    code = "degree_mismatch"


class UnsupportedGenusError(TropabelError):
    code = "unsupported_genus"


class NonGenericConfigError(TropabelError):
    code = "non_generic_config"


class BoundsUnstableError(TropabelError):
    code = "bounds_unstable"


class MissingPrimitiveValueError(TropabelError):
    code = "missing_primitive_value"


class SchemaError(TropabelError):
    code = "schema"
