"""Exception types shared across the package."""


class CentralConfigError(Exception):
    """Base class for errors raised by this package."""


class OutsideDomainError(CentralConfigError):
    """The radial point violates the admissible-region inequalities."""

    def __init__(self, message, membership=None):
        super().__init__(message)
        self.membership = membership


class BracketCollapseError(CentralConfigError):
    """The cosine bracket has non-positive width (boundary or exterior point)."""


class FaceMismatchError(CentralConfigError):
    """The point does not lie on the requested boundary face."""


class OutOfProjectionError(CentralConfigError):
    """The (a, b) pair falls outside the projected footprint of the region."""


class NonConvergenceError(CentralConfigError):
    """The angle solver hit its iteration cap without converging."""


class DegenerateGeometryError(CentralConfigError):
    """Coincident or collinear bodies make the requested quantity undefined."""


class DegenerateDenominatorError(CentralConfigError):
    """All redundant multiplier expressions are 0/0."""


class NonPositiveMassError(CentralConfigError):
    """Mass recovery produced a zero or negative mass."""


class MassFormulasDegenerateError(CentralConfigError):
    """Every mass-ratio formula is ill-conditioned (vertex-adjacent point)."""


class CentralityViolationError(CentralConfigError):
    """The configuration/mass pair fails the rigid-rotation alignment check."""


class CloseEncounterError(CentralConfigError):
    """Two bodies approached closer than the minimum allowed separation."""

    def __init__(self, message, trajectory=None, step=None):
        super().__init__(message)
        self.trajectory = trajectory
        self.step = step
