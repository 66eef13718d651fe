"""The GXOR-induced nonlinear map on density matrices.

Entangling a control state with N identical target copies via GXOR gates and
projecting the targets onto fixed basis states multiplies density-matrix
elements at shifted index pairs:

    out[I, J]  ~  sigma[I, J] * prod_a sigma[I - p_a, J - p_a]   (mod D, digitwise)

`apply_map` evaluates this closed index formula directly; `apply_map_oracle`
builds the full multi-qudit tensor, applies every GXOR as an explicit unitary
and projects, for cross-validation at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .qlinalg import (
    DensityMatrix,
    HilbertShape,
    MultiIndex,
    Operator,
    ShapeMismatchError,
    ZeroProbabilityError,
    ZERO_PROBABILITY_TOL,
    partial_trace,
    qudits,
    tensor,
)
from .gates import gxor

MAP_MATCH_TOL = 1e-10


class OracleSizeError(ValueError):
    """Requested configuration exceeds the brute-force oracle's size limits."""


@dataclass(frozen=True)
class MapConfig:
    """One application of the nonlinear map.

    D: qudit dimension; M: qudits per system; N: number of target copies;
    projections: the basis multi-index each target copy is projected onto.
    """

    D: int
    M: int
    N: int
    projections: tuple[MultiIndex, ...]

    def __post_init__(self):
        if self.D < 2 or self.M < 1 or self.N < 1:
            raise ValueError("need D >= 2, M >= 1, N >= 1")
        if len(self.projections) != self.N:
            raise ValueError(f"expected {self.N} projection indices")
        for p in self.projections:
            if p.base != self.D or len(p.digits) != self.M:
                raise ValueError(f"projection {p} does not match D={self.D}, M={self.M}")

    @classmethod
    def of(cls, D: int, M: int, N: int, projections) -> "MapConfig":
        """Convenience constructor from plain digit tuples."""
        return cls(D, M, N, tuple(MultiIndex(tuple(p), D) for p in projections))

    @property
    def control_shape(self) -> HilbertShape:
        return qudits(self.D, self.M)


@dataclass(frozen=True)
class MapOutcome:
    output: DensityMatrix
    success_probability: float


def _shift_permutation(p: MultiIndex, D: int, M: int) -> np.ndarray:
    """perm[L] = linear index of I - p (digitwise mod D) for linear index L = I."""
    idx = np.arange(D**M)
    out = np.zeros_like(idx)
    for digit in reversed(range(M)):
        shifted = (idx % D - p.digits[digit]) % D
        out += shifted * D ** (M - 1 - digit)
        idx //= D
    return out


def apply_map(sigma: DensityMatrix, cfg: MapConfig) -> MapOutcome:
    """Closed-form evaluation of the nonlinear map for identical copies.

    The unnormalized output entry (I, J) is sigma[I, J] times the product over
    target copies of sigma[I - p_a, J - p_a]; the success probability is its
    trace.  Never materializes the composite tensor.
    """
    if sigma.shape.local_dims != cfg.control_shape.local_dims:
        raise ShapeMismatchError(
            f"state shape {sigma.shape.local_dims} does not match config "
            f"D={cfg.D}, M={cfg.M}"
        )
    arr = sigma.entries
    out = arr.copy()
    for p in cfg.projections:
        perm = _shift_permutation(p, cfg.D, cfg.M)
        out = out * arr[np.ix_(perm, perm)]
    prob = float(np.trace(out).real)
    if prob < ZERO_PROBABILITY_TOL:
        raise ZeroProbabilityError("nonlinear map outcome has zero probability")
    # Hermitian in exact arithmetic; symmetrize so roundoff asymmetry cannot
    # compound over long protocol iterations.
    out = (out + out.conj().T) / (2.0 * prob)
    return MapOutcome(DensityMatrix(Operator(cfg.control_shape, out)), prob)


_ORACLE_LIMITS = "D=2 with M<=2, N<=2, or D in {3,4,5} with M=N=1"


def _embed_two_qudit(gate: np.ndarray, D: int, n: int, a: int, b: int) -> np.ndarray:
    """Lift a two-qudit gate onto qudits (a, b) of an n-qudit register."""
    rest = [i for i in range(n) if i not in (a, b)]
    big = np.kron(gate, np.eye(D ** len(rest), dtype=complex))
    dims = (D,) * n
    big = big.reshape(dims + dims)
    order = [a, b] + rest
    inv = np.argsort(order)
    perm = list(inv) + [n + i for i in inv]
    return big.transpose(perm).reshape(D**n, D**n)


def apply_map_oracle(sigma: DensityMatrix, cfg: MapConfig) -> MapOutcome:
    """Brute-force tensor realization of the map, for cross-validation.

    Builds sigma^{tensor (1+N)}, applies each GXOR between corresponding
    control/target qudits as a full unitary, projects every target copy onto
    its basis state, traces the targets out and renormalizes.
    """
    allowed = (cfg.D == 2 and cfg.M <= 2 and cfg.N <= 2) or (
        cfg.D in (3, 4, 5) and cfg.M == 1 and cfg.N == 1
    )
    if not allowed:
        raise OracleSizeError(f"oracle restricted to {_ORACLE_LIMITS}")
    if sigma.shape.local_dims != cfg.control_shape.local_dims:
        raise ShapeMismatchError("state shape does not match config")

    D, M, N = cfg.D, cfg.M, cfg.N
    n = (1 + N) * M
    full = reduce(np.kron, [sigma.entries] * (1 + N))

    gate = gxor(D).entries
    for i in range(N):
        for j in range(M):
            control = j
            target = (1 + i) * M + j
            u = _embed_two_qudit(gate, D, n, control, target)
            full = u @ full @ u.conj().T

    proj = np.ones((1, 1))
    for p in cfg.projections:
        block = np.zeros((D**M, D**M))
        block[p.linear, p.linear] = 1.0
        proj = np.kron(proj, block)
    proj_full = np.kron(np.eye(D**M), proj)

    sub = proj_full @ full @ proj_full
    prob = float(np.trace(sub).real)
    if prob < ZERO_PROBABILITY_TOL:
        raise ZeroProbabilityError("nonlinear map outcome has zero probability")
    normalized = DensityMatrix(Operator(qudits(D, n), sub / prob))
    control_state = partial_trace(normalized, keep=range(M))
    return MapOutcome(control_state, prob)
