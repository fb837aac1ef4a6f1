"""Exception hierarchy for weighted_minimal."""


class WeightedMinimalError(Exception):
    """Base class for all package errors."""


class InvalidParams(WeightedMinimalError, ValueError):
    pass


class UseVerticalPlane(InvalidParams):
    """Raised for a vertical director, which belongs to the vertical-plane constructor."""


class DegenerateSurface(WeightedMinimalError, ValueError):
    def __init__(self, u, v, norm):
        self.u = u
        self.v = v
        self.norm = norm
        super().__init__(
            f"surface not regular at (u, v) = ({u:.12g}, {v:.12g}): |Xu ^ Xv| = {norm:.3g}"
        )


class DerivativeMismatch(WeightedMinimalError, ValueError):
    pass


class NormalizationViolation(WeightedMinimalError, ValueError):
    def __init__(self, condition, u, error):
        self.condition = condition
        self.u = u
        self.error = error
        super().__init__(
            f"ruled surface normalization '{condition}' violated: worst u = {u:.12g}, "
            f"deviation {error:.3g}; reparametrize the directrix/director"
        )


class NonConstantGradient(WeightedMinimalError, ValueError):
    pass


class InvalidInit(WeightedMinimalError, ValueError):
    pass


class PoleAt(WeightedMinimalError, ValueError):
    def __init__(self, u):
        self.u = u
        super().__init__(f"profile has a pole at u = {u:.12g}")


class NotRuledForm(WeightedMinimalError, ValueError):
    pass


class NoSignChange(WeightedMinimalError, ValueError):
    pass


class NonConstantCurvature(WeightedMinimalError, ValueError):
    """Weighted mean curvature is not constant over a surface assumed symmetric."""


class InvalidMesh(WeightedMinimalError, ValueError):
    pass


class Theorem2Violation(WeightedMinimalError, AssertionError):
    """A minimal translation surface with two non-affine summands was found."""
