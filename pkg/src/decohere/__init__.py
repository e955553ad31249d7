"""Collisional dephasing of multiqubit states and its entanglement cost.

The library builds GHZ, W, and linear-cluster states, decoheres them with
per-qubit collision channels (microscopic controlled-unitary form or the
reduced dephasing map), and measures what survives via partial-transpose
negativity across every bipartite cut — exact eigensolver oracle alongside
the closed forms available for each family.
"""

from .channel import (
    AggregateDephasing,
    CollisionParams,
    CollisionSchedule,
    MicroCollisionSpec,
    apply_dephasing,
    apply_microscopic_collision,
    build_collision_unitary,
    collision_params,
    perp_ket,
    schedule_aggregate,
)
from .errors import (
    BracketError,
    CapacityError,
    ConfigError,
    DecohereError,
    FormulaUnavailableError,
    InvalidPartitionError,
    InvalidSizeError,
    NormalizationError,
    SymmetryViolationError,
)
from .experiment import (
    ExperimentConfig,
    ResultRow,
    load_config,
    parse_config,
    run_single,
    run_sweep,
    write_csv,
)
from .linalg import (
    DensityMatrix,
    QubitSubset,
    dagger,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
)
from .negativity import (
    BipartiteCut,
    DistillabilityVerdict,
    NegativityReport,
    cluster_negativity_formula,
    critical_gamma,
    distillability_check,
    enumerate_cuts,
    ghz_negativity_formula,
    negativity_oracle,
    w_negativity_formula,
)
from .states import Family, StateFamily, make_cluster, make_ghz, make_state, make_w, to_density
from .tolerances import DEFAULT, MAX_QUBITS, Tolerances

__version__ = "0.1.0"
