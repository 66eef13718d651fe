"""Simulator for bipartite qudit state purification built on the hermitian
generalized XOR gate."""

from .qlinalg import (
    DensityMatrix,
    HilbertShape,
    Ket,
    MultiIndex,
    Operator,
    ZeroProbabilityError,
    conjugate_by,
    partial_trace,
    project_renormalize,
    pure_fidelity,
    tensor,
)
from .gates import BellLabel, bell_state, disentangle, fourier, gxor, mod_sub, teleport_check
from .nonlinear_map import MapConfig, MapOutcome, apply_map, apply_map_oracle
from .purification import (
    IterationRecord,
    ProtocolKind,
    ProtocolRun,
    WernerSpec,
    convergence_radius,
    depolarize_to_werner,
    efficiency_sweep,
    lambda_of_fidelity,
    protocol_step,
    purify,
    twirl_fourier,
    werner,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
