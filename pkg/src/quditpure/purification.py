"""Iterative purification of bipartite qudit Werner states.

Two protocols share the same nonlinear-map step (projecting the target pair
onto |ii> for every i) and differ in the restoring operation applied
afterwards:

  GXOR_TWIRL          local Fourier twirl F (x) F*
  HORODECKI_BASELINE  depolarize back to the Werner state with the same fidelity

The driver keeps Eq.-of-motion-free efficiency accounting: each step halves
the ensemble and multiplies by the step's success probability.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .qlinalg import (
    DensityMatrix,
    Ket,
    Operator,
    ShapeMismatchError,
    ZeroProbabilityError,
    conjugate_by,
    pure_fidelity,
    qudits,
    tensor,
)
from .gates import BellLabel, bell_state, fourier
from .nonlinear_map import MapConfig, apply_map

SHIFT_COVARIANCE_TOL = 1e-8
OUTCOME_AGREEMENT_TOL = 1e-8


class ShiftCovarianceError(ValueError):
    """State is not invariant under the simultaneous shift |i>|i> -> |i+1>|i+1>."""


class ProtocolKind(enum.Enum):
    GXOR_TWIRL = "gxor"
    HORODECKI_BASELINE = "horodecki"


@dataclass(frozen=True)
class WernerSpec:
    """Werner family: lambda |psi_00><psi_00| + (1 - lambda) 1/D^2."""

    D: int
    lam: float

    def __post_init__(self):
        if self.D < 2:
            raise ValueError("dimension must be >= 2")
        lo = -1.0 / (self.D**2 - 1)
        if not lo <= self.lam <= 1.0:
            raise ValueError(f"lambda={self.lam} outside [{lo}, 1]")

    @property
    def fidelity(self) -> float:
        return self.lam + (1.0 - self.lam) / self.D**2

    @classmethod
    def from_fidelity(cls, F: float, D: int) -> "WernerSpec":
        return cls(D, lambda_of_fidelity(F, D))


@dataclass(frozen=True)
class IterationRecord:
    step: int
    fidelity: float
    success_probability: float
    cumulative_efficiency: float


@dataclass(frozen=True)
class ProtocolRun:
    spec: WernerSpec
    kind: ProtocolKind
    target_fidelity: float
    records: tuple[IterationRecord, ...]
    converged: bool

    @property
    def steps(self) -> int:
        return len(self.records)

    @property
    def final_fidelity(self) -> float:
        return self.records[-1].fidelity if self.records else self.spec.fidelity

    @property
    def efficiency(self) -> float:
        return self.records[-1].cumulative_efficiency if self.records else 1.0


@lru_cache(maxsize=None)
def _psi00(D: int) -> Ket:
    return bell_state(BellLabel(0, 0, D))


@lru_cache(maxsize=None)
def _twirl_unitary(D: int) -> Operator:
    f = fourier(D)
    return tensor(f, Operator(f.shape, f.entries.conj()))


@lru_cache(maxsize=None)
def _pair_shift(D: int) -> np.ndarray:
    """Permutation matrix for the simultaneous shift |i>|j> -> |i+1>|j+1>."""
    s = np.zeros((D, D))
    for i in range(D):
        s[(i + 1) % D, i] = 1.0
    return np.kron(s, s)


def werner(spec: WernerSpec) -> DensityMatrix:
    D = spec.D
    psi = _psi00(D)
    m = spec.lam * psi.projector().entries + (1.0 - spec.lam) * np.eye(D * D) / D**2
    return DensityMatrix(Operator(qudits(D, 2), m))


def lambda_of_fidelity(F: float, D: int) -> float:
    """Invert F = lambda + (1 - lambda)/D^2."""
    lo = 1.0 / D**2
    if not lo - 1e-12 <= F <= 1.0 + 1e-12:
        raise ValueError(f"fidelity {F} outside [1/D^2, 1] for D={D}")
    return (F - lo) / (1.0 - lo)


def twirl_fourier(sigma: DensityMatrix) -> DensityMatrix:
    """Local twirl F (x) F*; leaves |psi_00><psi_00| invariant."""
    dims = sigma.shape.local_dims
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ShapeMismatchError(f"expected two equal-dimension qudits, got {dims}")
    return conjugate_by(sigma, _twirl_unitary(dims[0]))


def depolarize_to_werner(sigma: DensityMatrix) -> DensityMatrix:
    """Replace sigma by the Werner state with the same |psi_00> fidelity."""
    dims = sigma.shape.local_dims
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ShapeMismatchError(f"expected two equal-dimension qudits, got {dims}")
    D = dims[0]
    F = pure_fidelity(sigma, _psi00(D))
    if F < 1.0 / D**2 - 1e-12:
        raise ValueError(f"fidelity {F} below 1/D^2; no Werner state matches")
    return werner(WernerSpec(D, lambda_of_fidelity(min(F, 1.0), D)))


def _check_shift_covariance(sigma: DensityMatrix, D: int) -> None:
    s = _pair_shift(D)
    drift = np.max(np.abs(s @ sigma.entries @ s.T - sigma.entries))
    if drift > SHIFT_COVARIANCE_TOL:
        raise ShiftCovarianceError(
            f"state deviates from shift covariance by {drift:.3e}"
        )


def protocol_step(
    sigma: DensityMatrix,
    kind: ProtocolKind,
    baseline_single_outcome: bool = False,
) -> tuple[DensityMatrix, float]:
    """One iteration: nonlinear map aggregated over all |ii> outcomes, then the
    protocol's restoring operation.

    Requires a shift-covariant input, which guarantees that all D outcomes
    coincide (asserted).  The reported success probability is the sum over the
    D accepted outcomes, or the single p=(0,0) outcome when
    `baseline_single_outcome` restricts the baseline's accounting.
    """
    dims = sigma.shape.local_dims
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ShapeMismatchError(f"expected two equal-dimension qudits, got {dims}")
    D = dims[0]
    _check_shift_covariance(sigma, D)

    outcomes = []
    probs = []
    for i in range(D):
        result = apply_map(sigma, MapConfig.of(D, 2, 1, [(i, i)]))
        outcomes.append(result.output)
        probs.append(result.success_probability)

    ref = outcomes[0].entries
    for i in range(1, D):
        if np.max(np.abs(outcomes[i].entries - ref)) > OUTCOME_AGREEMENT_TOL:
            raise ValueError(f"outcome {i} deviates from outcome 0 beyond tolerance")
        if abs(probs[i] - probs[0]) > OUTCOME_AGREEMENT_TOL:
            raise ValueError(f"outcome {i} probability deviates beyond tolerance")

    total_p = float(sum(probs))
    if total_p > 1.0 + 1e-10:
        raise ValueError(f"aggregated success probability {total_p} exceeds 1")

    if kind is ProtocolKind.GXOR_TWIRL:
        state = twirl_fourier(outcomes[0])
    else:
        state = depolarize_to_werner(outcomes[0])
        if baseline_single_outcome:
            total_p = probs[0]
    return state, total_p


def purify(
    spec: WernerSpec,
    kind: ProtocolKind,
    target_fidelity: float,
    max_steps: int,
    baseline_single_outcome: bool = False,
) -> ProtocolRun:
    """Iterate protocol_step from a Werner state until the target fidelity is
    reached (converged) or max_steps is exhausted.

    At least one step is always performed; convergence is checked after each
    step.  Efficiency follows eta_n = 2^{-n} prod_l p_l.
    """
    if not 1.0 / spec.D < target_fidelity <= 1.0:
        raise ValueError(f"target fidelity {target_fidelity} outside (1/D, 1]")
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")

    psi = _psi00(spec.D)
    state = werner(spec)
    eta = 1.0
    records = []
    converged = False
    for n in range(1, max_steps + 1):
        try:
            state, p = protocol_step(state, kind, baseline_single_outcome)
        except ZeroProbabilityError:
            break
        eta *= p / 2.0
        fid = pure_fidelity(state, psi)
        records.append(IterationRecord(n, fid, p, eta))
        if fid >= target_fidelity:
            converged = True
            break
    return ProtocolRun(spec, kind, target_fidelity, tuple(records), converged)


def convergence_radius(
    D: int,
    kind: ProtocolKind,
    target_fidelity: float,
    max_steps: int = 500,
    tol: float = 1e-4,
    baseline_single_outcome: bool = False,
) -> float:
    """Smallest initial Werner fidelity (within tol) from which purify converges.

    Bisection on the bracket [1/D, 1]; the upper end must converge, the lower
    end is the separability edge and is never evaluated.
    """
    if tol < 1e-5:
        raise ValueError("tol must be >= 1e-5")

    def converges(F: float) -> bool:
        spec = WernerSpec.from_fidelity(F, D)
        run = purify(spec, kind, target_fidelity, max_steps, baseline_single_outcome)
        return run.converged

    lo, hi = 1.0 / D, 1.0
    if not converges(hi):
        raise RuntimeError("purification from a pure input did not converge")
    for _ in range(60):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if converges(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class SweepRow:
    kind: ProtocolKind
    initial_fidelity: float
    converged: bool
    steps: int
    efficiency: float


def efficiency_sweep(
    D: int,
    kinds,
    F_grid,
    target_fidelity: float,
    max_steps: int,
    baseline_single_outcome: bool = False,
) -> list[SweepRow]:
    """One purify run per (kind, initial fidelity), rows in grid order."""
    rows = []
    for kind in kinds:
        for F in F_grid:
            if not 1.0 / D < F <= 1.0:
                raise ValueError(f"grid fidelity {F} outside (1/D, 1]")
            run = purify(
                WernerSpec.from_fidelity(F, D),
                kind,
                target_fidelity,
                max_steps,
                baseline_single_outcome,
            )
            rows.append(
                SweepRow(kind, F, run.converged, run.steps, run.efficiency)
            )
    return rows
