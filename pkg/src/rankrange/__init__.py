"""Higher-rank numerical ranges of matrices.

The rank-k numerical range of an n x n matrix T is the set of mu for which
P T P = mu P holds for some rank-k orthogonal projection P. It is convex
and equals the intersection over theta of the half-planes

    Re(e^{i theta} mu) <= lambda_k(e^{i theta} T + e^{-i theta} T^*) / 2,

which is how :func:`rank_range` computes it. Closed forms for shifts,
Hermitian and normal matrices live in :mod:`rankrange.oracles`, and
:mod:`rankrange.dilation` models nilpotent contractions as compressions
of copies of the adjoint shift.
"""

from .dilation import (
    ContainmentReport,
    DilationModel,
    build_dilation,
    defect_operator,
    radius_bound_report,
    telescoping_residual,
    containment_report,
    containment_reports,
    verify_dilation,
)
from .engine import (
    DEFAULT_THETA_SAMPLES,
    RankRangeResult,
    affine_map_region,
    conjugate_region,
    direct_sum,
    numerical_radius,
    rank_range,
    rank_ranges,
    support_table,
    support_value,
)
from .errors import (
    ConvergenceError,
    HypothesisError,
    NotContractionError,
    NotHermitianError,
    NotNilpotentError,
    NotPSDError,
)
from .geometry import (
    ConvexRegion,
    DiscRegion,
    HalfPlane,
    contains_point,
    convex_hull,
    disc_polygon,
    hausdorff,
    intersect_half_planes,
    is_subset,
    polygon_intersection,
)
from .linalg import (
    hermitian_eigenvalues,
    kronecker,
    nilpotency_index,
    numerical_rank,
    operator_norm,
    psd_sqrt,
    rotated_hermitian_part,
    shift_matrix,
)
from .oracles import (
    IntervalRegion,
    char_det,
    hermitian_range,
    nilpotent_bound,
    normal_range,
    replicated_kth_largest,
    rho,
    shift_range,
    tridiag_eigenvalue,
)

__version__ = "0.1.0"
