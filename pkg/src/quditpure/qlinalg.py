"""Dense complex linear algebra over composite finite-dimensional Hilbert spaces.

States and operators carry an explicit list of local subsystem dimensions so
that tensor products, partial traces and multi-index bookkeeping stay
unambiguous.  Everything is double-precision dense numpy; matrices in this
project never exceed a few hundred rows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
UNITARITY_TOL = 1e-10
PROJECTOR_TOL = 1e-10
ZERO_PROBABILITY_TOL = 1e-14
PSD_TOL = -1e-10


class ShapeMismatchError(ValueError):
    """Operands live on incompatible Hilbert spaces."""


class ZeroProbabilityError(ValueError):
    """A selective measurement outcome has (numerically) zero probability."""


class NotUnitaryError(ValueError):
    """Conjugation was requested with a matrix that is not unitary."""


class NotProjectorError(ValueError):
    """Projection was requested with a matrix that is not a hermitian projector."""


@dataclass(frozen=True)
class HilbertShape:
    """Ordered local dimensions of a composite Hilbert space."""

    local_dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "local_dims", tuple(int(d) for d in self.local_dims))
        if not self.local_dims:
            raise ValueError("need at least one subsystem")
        if any(d < 2 for d in self.local_dims):
            raise ValueError(f"local dimensions must be >= 2, got {self.local_dims}")

    @property
    def total_dim(self) -> int:
        return math.prod(self.local_dims)

    @property
    def num_subsystems(self) -> int:
        return len(self.local_dims)

    def __mul__(self, other: "HilbertShape") -> "HilbertShape":
        return HilbertShape(self.local_dims + other.local_dims)


def qudit(D: int) -> HilbertShape:
    """Shape of a single D-level system."""
    return HilbertShape((D,))


def qudits(D: int, n: int) -> HilbertShape:
    """Shape of n identical D-level systems."""
    return HilbertShape((D,) * n)


@dataclass(frozen=True)
class MultiIndex:
    """Digit string (i_1, ..., i_M) addressing a basis state of M base-D qudits.

    Big-endian: the first digit is the most significant, matching the
    left-to-right ket ordering |i_1 i_2 ...>.
    """

    digits: tuple[int, ...]
    base: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if any(not 0 <= d < self.base for d in self.digits):
            raise ValueError(f"digits {self.digits} out of range for base {self.base}")

    @property
    def linear(self) -> int:
        value = 0
        for d in self.digits:
            value = value * self.base + d
        return value

    @classmethod
    def from_linear(cls, value: int, base: int, length: int) -> "MultiIndex":
        if not 0 <= value < base**length:
            raise ValueError(f"linear index {value} out of range")
        digits = []
        for _ in range(length):
            digits.append(value % base)
            value //= base
        return cls(tuple(reversed(digits)), base)

    def mod_sub(self, other: "MultiIndex") -> "MultiIndex":
        """Componentwise difference modulo the base."""
        if other.base != self.base or len(other.digits) != len(self.digits):
            raise ValueError("mismatched multi-indices")
        return MultiIndex(
            tuple((a - b) % self.base for a, b in zip(self.digits, other.digits)),
            self.base,
        )


@dataclass(frozen=True)
class Ket:
    """Normalized pure state over a composite Hilbert space."""

    shape: HilbertShape
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.shape.total_dim,):
            raise ShapeMismatchError(
                f"amplitude vector of length {amps.shape} does not match "
                f"total dimension {self.shape.total_dim}"
            )
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def normalized(cls, shape: HilbertShape, amplitudes) -> "Ket":
        amps = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(shape, amps / norm)

    @classmethod
    def basis(cls, shape: HilbertShape, index: int) -> "Ket":
        amps = np.zeros(shape.total_dim, dtype=complex)
        amps[index] = 1.0
        return cls(shape, amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def tensor(self, other: "Ket") -> "Ket":
        return Ket(self.shape * other.shape, np.kron(self.amplitudes, other.amplitudes))

    def projector(self) -> "Operator":
        return Operator(self.shape, np.outer(self.amplitudes, self.amplitudes.conj()))

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.projector())


@dataclass(frozen=True)
class Operator:
    """Square matrix acting on a composite Hilbert space."""

    shape: HilbertShape
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=complex)
        n = self.shape.total_dim
        if entries.shape != (n, n):
            raise ShapeMismatchError(
                f"matrix of shape {entries.shape} does not match total dimension {n}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def identity(cls, shape: HilbertShape) -> "Operator":
        return cls(shape, np.eye(shape.total_dim, dtype=complex))

    @property
    def dag(self) -> "Operator":
        return Operator(self.shape, self.entries.conj().T)

    def __matmul__(self, other: "Operator") -> "Operator":
        if other.shape.total_dim != self.shape.total_dim:
            raise ShapeMismatchError("operator dimensions differ")
        return Operator(self.shape, self.entries @ other.entries)

    def apply(self, psi: Ket) -> Ket:
        if psi.shape.total_dim != self.shape.total_dim:
            raise ShapeMismatchError("operator and ket dimensions differ")
        return Ket(psi.shape, self.entries @ psi.amplitudes)

    def is_unitary(self, tol: float = UNITARITY_TOL) -> bool:
        n = self.shape.total_dim
        return bool(
            np.max(np.abs(self.entries.conj().T @ self.entries - np.eye(n))) <= tol
        )

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= tol)

    def is_projector(self, tol: float = PROJECTOR_TOL) -> bool:
        return self.is_hermitian(tol) and bool(
            np.max(np.abs(self.entries @ self.entries - self.entries)) <= tol
        )


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace operator.  Positivity is checked on demand only."""

    operator: Operator

    def __post_init__(self):
        m = self.operator.entries
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise ValueError("density matrix is not hermitian within tolerance")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
            raise ValueError("density matrix trace differs from 1")

    @classmethod
    def from_matrix(cls, shape: HilbertShape, entries) -> "DensityMatrix":
        return cls(Operator(shape, entries))

    @classmethod
    def maximally_mixed(cls, shape: HilbertShape) -> "DensityMatrix":
        n = shape.total_dim
        return cls(Operator(shape, np.eye(n, dtype=complex) / n))

    @property
    def shape(self) -> HilbertShape:
        return self.operator.shape

    @property
    def entries(self) -> np.ndarray:
        return self.operator.entries

    def purity(self) -> float:
        return float(np.trace(self.entries @ self.entries).real)

    def is_positive_semidefinite(self, tol: float = PSD_TOL) -> bool:
        """Diagnostic eigenvalue check; not enforced per operation."""
        return bool(np.min(np.linalg.eigvalsh(self.entries)) >= tol)


def tensor(a: Operator, b: Operator) -> Operator:
    """Kronecker product; the result lives on the concatenated shape."""
    return Operator(a.shape * b.shape, np.kron(a.entries, b.entries))


def tensor_density(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    return DensityMatrix(tensor(a.operator, b.operator))


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Trace out every subsystem not listed in `keep`.

    Kept subsystems retain their original relative order.
    """
    dims = rho.shape.local_dims
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("keep set must be nonempty")
    if keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep set {keep} out of range for {n} subsystems")

    t = rho.entries.reshape(dims + dims)
    row = list(range(n))
    col = [i + n if i in keep else i for i in range(n)]
    out_idx = keep + [i + n for i in keep]
    reduced = np.einsum(t, row + col, out_idx)
    kept_shape = HilbertShape(tuple(dims[i] for i in keep))
    m = kept_shape.total_dim
    return DensityMatrix(Operator(kept_shape, reduced.reshape(m, m)))


def project_renormalize(rho: DensityMatrix, P: Operator) -> tuple[DensityMatrix, float]:
    """Selective measurement: return (P rho P / Tr[P rho P], Tr[P rho P])."""
    if P.shape.total_dim != rho.shape.total_dim:
        raise ShapeMismatchError("projector and state dimensions differ")
    if not P.is_projector():
        raise NotProjectorError("P is not a hermitian projector within tolerance")
    sub = P.entries @ rho.entries @ P.entries
    prob = float(np.trace(sub).real)
    if prob < ZERO_PROBABILITY_TOL:
        raise ZeroProbabilityError("outcome has zero probability")
    return DensityMatrix(Operator(rho.shape, sub / prob)), prob


def pure_fidelity(rho: DensityMatrix, psi: Ket) -> float:
    """Overlap <psi| rho |psi>."""
    if psi.shape.total_dim != rho.shape.total_dim:
        raise ShapeMismatchError("state and ket dimensions differ")
    value = psi.amplitudes.conj() @ rho.entries @ psi.amplitudes
    if abs(value.imag) > 1e-12:
        raise ValueError(f"fidelity has imaginary residue {value.imag}")
    return float(value.real)


def conjugate_by(rho: DensityMatrix, U: Operator) -> DensityMatrix:
    """Unitary conjugation U rho U^dagger."""
    if U.shape.total_dim != rho.shape.total_dim:
        raise ShapeMismatchError("unitary and state dimensions differ")
    if not U.is_unitary():
        raise NotUnitaryError("U is not unitary within tolerance")
    out = U.entries @ rho.entries @ U.entries.conj().T
    out = (out + out.conj().T) / 2.0
    out /= np.trace(out).real
    return DensityMatrix(Operator(rho.shape, out))
