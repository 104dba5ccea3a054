"""Convex four-body central configurations.

Radial coordinates (a, b, c) plus the diagonal angle parameterize every
convex central configuration of four positive masses.  This package
implements the admissible region, the unique-angle solver, mass recovery,
special-class detection and dynamical verification, with a CLI in
``ccfour.cli``.
"""

from .domain import (
    AngleBracket,
    BOUNDARY,
    DomainMembership,
    Face,
    FACE_VERTICES,
    INTERIOR,
    OUTSIDE,
    ProjectionInterval,
    Vertex,
    angle_bracket,
    boundary_theta,
    constraint_residuals,
    contains,
    cosine_bounds,
    projection_bounds,
    projection_lower_edge,
    sample,
    vertices,
)
from .classify import (
    ClassificationReport,
    LABELS,
    MeshNode,
    SurfaceMesh,
    SurfaceOrder,
    assigned_labels,
    class_residuals,
    classify,
    geometric_witness,
    surface_mesh,
    surface_order,
)
from .dynamics import (
    SimulationState,
    Trajectory,
    alignment_residual,
    angular_velocity,
    integrate,
    moment,
    potential,
    relative_equilibrium_ic,
)
from .errors import (
    BracketCollapseError,
    CentralConfigError,
    CentralityViolationError,
    CloseEncounterError,
    DegenerateDenominatorError,
    DegenerateGeometryError,
    FaceMismatchError,
    MassFormulasDegenerateError,
    NonConvergenceError,
    NonPositiveMassError,
    OutOfProjectionError,
    OutsideDomainError,
)
from .geometry import (
    CrossRatio,
    MutualDistances,
    PlanarConfiguration,
    RadialPoint,
    SignedAreas,
    cayley_menger,
    cross_ratio,
    mutual_distances,
    positions,
    signed_areas,
)
from .masses import (
    LambdaPrime,
    MassDistribution,
    centrality_residual,
    gravitational_accelerations,
    lambda_prime,
    mass_ratios,
    rhombus_ratio,
)
from .solver import (
    AngleSolution,
    dc_coefficients,
    dtheta_dc,
    dziobek_residual,
    dziobek_residual_dc,
    dziobek_residual_dtheta,
    solve_theta,
)

__version__ = "0.1.0"
