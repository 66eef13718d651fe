"""Qudit gates: the hermitian generalized XOR, the discrete Fourier gate, the
generalized Bell basis they induce, and the teleportation correction operators.

All gates act on D-level systems with basis labels taken modulo D.  The key
object is the hermitian GXOR gate |i>|j> -> |i>|i - j mod D>, which is its own
inverse for every D (unlike the naive additive generalization).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qlinalg import (
    HilbertShape,
    Ket,
    Operator,
    ShapeMismatchError,
    qudit,
    qudits,
)


def _check_dim(D: int) -> None:
    if D < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {D}")


def mod_sub(i: int, j: int, D: int) -> int:
    """Difference i - j modulo D; zero exactly when i == j."""
    _check_dim(D)
    if not (0 <= i < D and 0 <= j < D):
        raise ValueError(f"labels ({i}, {j}) out of range for dimension {D}")
    return (i - j) % D


@dataclass(frozen=True)
class BellLabel:
    """Label (l, m) of a generalized Bell state in dimension D."""

    l: int
    m: int
    dim: int

    def __post_init__(self):
        _check_dim(self.dim)
        if not (0 <= self.l < self.dim and 0 <= self.m < self.dim):
            raise ValueError(
                f"Bell label ({self.l}, {self.m}) out of range for dimension {self.dim}"
            )


def gxor(D: int) -> Operator:
    """Hermitian generalized XOR: |i>|j> -> |i>|i - j mod D>.

    A D^2 x D^2 permutation matrix that is simultaneously unitary, hermitian
    and self-inverse.
    """
    _check_dim(D)
    m = np.zeros((D * D, D * D))
    for i in range(D):
        for j in range(D):
            m[i * D + mod_sub(i, j, D), i * D + j] = 1.0
    return Operator(qudits(D, 2), m)


def gxor_additive(D: int) -> Operator:
    """Naive additive variant |i>|j> -> |i>|i + j mod D>.

    Unitary but not hermitian for D > 2; kept as a test reference only.
    """
    _check_dim(D)
    m = np.zeros((D * D, D * D))
    for i in range(D):
        for j in range(D):
            m[i * D + (i + j) % D, i * D + j] = 1.0
    return Operator(qudits(D, 2), m)


def fourier(D: int) -> Operator:
    """Discrete Fourier gate with entry (k, l) = exp(i 2 pi l k / D) / sqrt(D)."""
    _check_dim(D)
    k = np.arange(D)
    m = np.exp(2j * np.pi * np.outer(k, k) / D) / np.sqrt(D)
    return Operator(qudit(D), m)


def bell_state(label: BellLabel) -> Ket:
    """Generalized Bell state: GXOR applied to (F|l>) tensor |m>."""
    D = label.dim
    f_l = fourier(D).entries[:, label.l]
    sep = np.kron(f_l, _basis_vec(D, label.m))
    return Ket(qudits(D, 2), gxor(D).entries @ sep)


def _basis_vec(D: int, i: int) -> np.ndarray:
    v = np.zeros(D, dtype=complex)
    v[i] = 1.0
    return v


def disentangle(psi: Ket) -> Ket:
    """Apply GXOR (its own inverse) to a two-qudit state.

    Maps bell_state(l, m) back to the factorized (F|l>) tensor |m>.
    """
    dims = psi.shape.local_dims
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ShapeMismatchError(f"expected two equal-dimension qudits, got {dims}")
    return gxor(dims[0]).apply(psi)


def teleport_correction(l: int, m: int, j: int, k: int, D: int) -> Operator:
    """Correction operator U_lm: |n> -> exp(-i 2 pi n (l - j) / D) |n - k - m mod D>.

    (j, k) label the shared entangled pair, (l, m) the Bell measurement outcome.
    """
    _check_dim(D)
    for name, value in (("l", l), ("m", m), ("j", j), ("k", k)):
        if not 0 <= value < D:
            raise ValueError(f"label {name}={value} out of range for dimension {D}")
    u = np.zeros((D, D), dtype=complex)
    for n in range(D):
        u[(n - k - m) % D, n] = np.exp(-2j * np.pi * n * (l - j) / D)
    return Operator(qudit(D), u)


def teleport_check(chi: Ket, j: int, k: int) -> float:
    """Exhaustively verify the D-dimensional teleportation identity.

    Builds |chi> |psi_jk>, expands the first two qudits in the Bell basis,
    undoes U_lm for each of the D^2 outcomes and returns the worst-case
    recovered fidelity |<chi|recovered>|^2 (1.0 up to roundoff when the
    identity holds).  Raises if any outcome probability deviates from 1/D^2.
    """
    if chi.shape.num_subsystems != 1:
        raise ShapeMismatchError("chi must be a single-qudit state")
    if abs(chi.norm - 1.0) > 1e-12:
        raise ValueError("chi must be normalized")
    D = chi.shape.local_dims[0]
    pair = bell_state(BellLabel(j, k, D))
    full = np.kron(chi.amplitudes, pair.amplitudes).reshape(D * D, D)

    worst = 1.0
    for l in range(D):
        for m in range(D):
            bra = bell_state(BellLabel(l, m, D)).amplitudes.conj()
            bob = bra @ full
            prob = float(np.vdot(bob, bob).real)
            if abs(prob - 1.0 / D**2) > 1e-10:
                raise ValueError(
                    f"outcome ({l},{m}) probability {prob} deviates from 1/D^2"
                )
            u = teleport_correction(l, m, j, k, D)
            recovered = u.entries.conj().T @ (bob / np.sqrt(prob))
            fid = abs(np.vdot(chi.amplitudes, recovered)) ** 2
            worst = min(worst, fid)
    return worst


def random_ket(D: int, rng: np.random.Generator) -> Ket:
    """Haar-uniform pure state: normalized standard complex Gaussian vector."""
    amps = rng.standard_normal(D) + 1j * rng.standard_normal(D)
    return Ket.normalized(qudit(D), amps)
