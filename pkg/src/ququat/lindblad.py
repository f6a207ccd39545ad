"""Markovian generators and propagator gates.

Two routes are provided.  The single-qubit route takes Hamiltonian
coefficients H_k and a Hermitian coefficient matrix C_kl and assembles
the real 4x4 generator

    dP_mu/dt = sum_nu L[mu, nu] P_nu,
    A[k, l] = 2 H_m eps(k,m,l) + (C[k,l] + C[l,k])/8 - delta(k,l) Tr(C)/4,
    B[k]    = -1/4 eps(i,j,k) Im C[i,j],

with L = [[0, 0], [B, A]]; its propagator is the trace-preserving gate
[[1, 0], [T, R]] with R = expm(tau A) and T the integral of expm(s A) B,
computed through an augmented block exponential so singular A needs no
inversion.  The general-n route builds the Liouvillian superoperator from
a Hamiltonian and jump operators V_j.

Ordering note: the source derivation writes the dissipator anticommutator
with V_j V_j^dagger.  That ordering does not preserve the trace for
non-normal V (and contradicts the displayed single-qubit generator, whose
top row vanishes), so the standard Lindblad form

    sum_j ( V_j rho V_j^dagger - 1/2 {V_j^dagger V_j, rho} )

is implemented; both coincide for normal jump operators.  The displayed
A and B formulas above match the standard form exactly.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .config import tolerances
from .errors import NumericContractError
from .gates import GateMatrix, TRACE_PRESERVING
from .liouville import PauliVector, pauli_basis

__all__ = [
    "GKSModel",
    "GeneratorMatrix",
    "LiouvillianSuperop",
    "gks_matrix",
    "gks_propagator",
    "liouvillian_superop",
    "propagate",
    "IndefiniteCoefficientWarning",
]


class IndefiniteCoefficientWarning(UserWarning):
    """The coefficient matrix C is not positive semidefinite."""


_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_j, _i, _k] = -1.0
_EPS.setflags(write=False)


@dataclass(frozen=True)
class GKSModel:
    """Single-qubit model: Hamiltonian coefficients H_k and matrix C_kl."""

    h: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        h = np.array(self.h, dtype=float)
        c = np.array(self.c, dtype=complex)
        if h.shape != (3,):
            raise NumericContractError("H must be a 3-vector of real coefficients")
        if c.shape != (3, 3):
            raise NumericContractError("C must be a 3x3 matrix")
        h.setflags(write=False)
        c.setflags(write=False)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "c", c)

    def is_hermitian(self, tol: float | None = None) -> bool:
        tol = tolerances.algebra if tol is None else tol
        return float(np.max(np.abs(self.c - self.c.conj().T))) <= tol

    def is_positive(self) -> bool:
        """Positivity of the Hermitian form (eigenvalue test, equivalent to
        the leading-minors criterion but numerically sturdier)."""
        return float(np.linalg.eigvalsh((self.c + self.c.conj().T) / 2)[0]) >= -tolerances.psd


@dataclass(frozen=True)
class GeneratorMatrix:
    """Real 4x4 single-qubit generator with vanishing top row."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=float)
        if matrix.shape != (4, 4):
            raise NumericContractError("generator matrix must be 4x4")
        if np.max(np.abs(matrix[0])) > tolerances.algebra:
            raise NumericContractError("generator top row must vanish (trace preservation)")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def a(self) -> np.ndarray:
        return self.matrix[1:, 1:]

    @property
    def b(self) -> np.ndarray:
        return self.matrix[1:, 0]


def gks_matrix(model: GKSModel, tol: float | None = None) -> GeneratorMatrix:
    """Assemble the single-qubit generator from (H, C).

    Raises on non-Hermitian C; an indefinite C only triggers an
    :class:`IndefiniteCoefficientWarning`.  Real C gives B = 0 exactly,
    hence a unital propagator.
    """
    if not model.is_hermitian(tol):
        raise NumericContractError("C must be Hermitian")
    if not model.is_positive():
        warnings.warn(
            "C is not positive semidefinite; the semigroup may not be positive",
            IndefiniteCoefficientWarning,
            stacklevel=2,
        )
    c = model.c
    trc = float(np.trace(c).real)
    a = np.zeros((3, 3))
    for k in range(3):
        for l in range(3):
            a[k, l] = (
                2.0 * float(np.dot(model.h, _EPS[k, :, l]))
                + (c[k, l] + c[l, k]).real / 8.0
            )
        a[k, k] -= trc / 4.0
    b = np.array(
        [-0.25 * float(np.sum(_EPS[:, :, k] * c.imag)) for k in range(3)]
    )
    matrix = np.zeros((4, 4))
    matrix[1:, 1:] = a
    matrix[1:, 0] = b
    return GeneratorMatrix(matrix)


def gks_propagator(gen: GeneratorMatrix, tau: float) -> GateMatrix:
    """Propagator gate of a fixed generator over time tau.

    R = expm(tau A); T = (integral_0^tau expm(s A) ds) B via the augmented
    exponential expm(tau [[A, B], [0, 0]]), well defined for singular A.
    B = 0 yields T = 0 exactly at assembly.
    """
    if tau < 0:
        raise NumericContractError("tau must be nonnegative")
    a = gen.a
    b = gen.b
    r = expm(tau * a)
    entries = np.zeros((4, 4))
    entries[0, 0] = 1.0
    entries[1:, 1:] = r
    if np.any(b != 0.0):
        aug = np.zeros((4, 4))
        aug[:3, :3] = a
        aug[:3, 3] = b
        entries[1:, 0] = expm(tau * aug)[:3, 3]
    return GateMatrix(1, 1, entries, TRACE_PRESERVING)


@dataclass(frozen=True)
class LiouvillianSuperop:
    """Liouvillian over the operator basis |k,l), with its ingredients.

    ``matrix`` acts on the row-major flattening of the density matrix
    (the coefficients over |k,l)).  Converting to the Pauli basis yields
    a real matrix with vanishing top row.
    """

    n: int
    matrix: np.ndarray
    hamiltonian: np.ndarray
    jump_ops: tuple[np.ndarray, ...]

    def to_pauli_generator(self, tol: float | None = None) -> np.ndarray:
        """Real generator of dP/dt = L P over Pauli coefficient vectors."""
        tol = tolerances.algebra if tol is None else tol
        basis = pauli_basis(self.n)
        q = basis.reshape(basis.shape[0], -1).T / np.sqrt(2**self.n)
        gen = q.conj().T @ self.matrix @ q
        resid = float(np.max(np.abs(gen.imag)))
        if resid > tol:
            raise NumericContractError(f"Pauli-basis generator not real: residual {resid:.3e}")
        gen = gen.real
        row0 = float(np.max(np.abs(gen[0])))
        if row0 > tol:
            raise NumericContractError(
                f"generator does not preserve trace: top row residual {row0:.3e}"
            )
        return gen


def liouvillian_superop(h: np.ndarray, v: list | tuple = ()) -> LiouvillianSuperop:
    """Liouvillian of dp/dt = -i[H, p] + sum_j (V_j p V_j^dag - 1/2 {V_j^dag V_j, p}).

    With no jump operators this is -i(L_H - R_H) and expm(L t) equals the
    gate of expm(-i H t).
    """
    h = np.asarray(h, dtype=complex)
    d = h.shape[0]
    n = int(round(np.log2(d)))
    if h.shape != (d, d) or 2**n != d:
        raise NumericContractError(f"H must be square 2**n x 2**n, got {h.shape}")
    if np.max(np.abs(h - h.conj().T)) > tolerances.algebra:
        raise NumericContractError("H must be Hermitian")
    eye = np.eye(d)
    mat = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    ops = []
    for j, vj in enumerate(v):
        vj = np.asarray(vj, dtype=complex)
        if vj.shape != (d, d):
            raise NumericContractError(f"jump operator {j} has shape {vj.shape}, expected {h.shape}")
        ops.append(vj)
        vdv = vj.conj().T @ vj
        mat += np.kron(vj, vj.conj()) - 0.5 * np.kron(vdv, eye) - 0.5 * np.kron(eye, vdv.T)
    return LiouvillianSuperop(n=n, matrix=mat, hamiltonian=h, jump_ops=tuple(ops))


def propagate(liouvillian: LiouvillianSuperop, t: float, pvec: PauliVector) -> PauliVector:
    """Evolve a state for time t under a fixed Liouvillian."""
    if t < 0:
        raise NumericContractError("t must be nonnegative")
    if pvec.n != liouvillian.n:
        raise NumericContractError(
            f"state has n={pvec.n}, Liouvillian expects n={liouvillian.n}"
        )
    gen = liouvillian.to_pauli_generator()
    return PauliVector(pvec.n, expm(t * gen) @ pvec.P)
