"""Minimum-error discrimination between two subsets of pure states in a plane."""

from ._backend import BACKEND
from .ensemble import (
    Ensemble,
    OverlapMatrix,
    PureState2D,
    RawState,
    embed_raw,
    gram,
    random_ensemble,
    validate_ensemble,
)
from .errors import (
    DegenerateBasisError,
    DomainError,
    IoError,
    LengthMismatch,
    NormalizationError,
    NotRealError,
    PartitionError,
    QFilterError,
    RankError,
    SchemaError,
    ShapeError,
)
from .families import (
    SymmetricFamilyPoint,
    filter_error,
    individual_error,
    make_symmetric,
    make_trine,
    ratio_sweep,
)
from .io import load_ensemble
from .montecarlo import SimConfig, SimResult, estimate_objective, simulate
from .oracle import OracleReport, cross_check, grid_maximize, helstrom_bound
from .solver import (
    DetectionPair,
    FilterSolution,
    GuessMeasurement,
    detection_pair,
    objective,
    solve,
    solve_real,
    solve_three,
)
