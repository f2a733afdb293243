"""Signal recovery from frame coefficients with erasures via duals of the reduced frame."""
from .dual_construction import (
    AxzMatrix,
    IterationTrace,
    StatementReport,
    build_axz,
    canonical_dual,
    check_statements,
    dual_from_perturbation,
    perturbation_orthogonal_class,
    perturbation_supported_on_E,
    random_dual,
    rank_one_inverse,
    reduced_canonical_dual,
    reduced_dual_iterative,
    reduced_dual_matrix,
    reduced_dual_operator,
)
from .erasure_recovery import ErasedCoefficients, duality_error, erase, reconstruct, recover
from .estimator import ErasureRecovery
from .exceptions import (
    DimensionMismatch,
    FrameError,
    IterationStopped,
    MrcUnattainable,
    NotAFrame,
    SingularAxz,
    SingularOperator,
)
from .frame_core import (
    DEFAULT_TOL,
    BesselPerturbation,
    DualPair,
    ErasureSet,
    Frame,
    analysis,
    frame_bounds,
    frame_operator,
    is_frame,
    mrc_check,
    read_frame,
    spectral_norm,
    synthesis,
    write_frame,
)

__version__ = "0.1.0"
