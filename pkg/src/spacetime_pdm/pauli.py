"""Fixed-size complex linear algebra over the one- and two-qubit Pauli basis.

Matrices are plain ``numpy`` arrays of shape (2, 2) or (4, 4). In two-qubit
operators subsystem A is the major (left) tensor factor, so the basis index
of |a b> is ``2 * a + b``.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidArgument, PreconditionViolation

HERMITIAN_TOL = 1e-10
SPECTRAL_TOL = 1e-9


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


I2 = _frozen(np.eye(2))
X = _frozen([[0, 1], [1, 0]])
Y = _frozen([[0, -1j], [1j, 0]])
Z = _frozen([[1, 0], [0, -1]])
SIGMA = (I2, X, Y, Z)

I4 = _frozen(np.eye(4))
SWAP = _frozen(np.eye(4)[[0, 2, 1, 3]])

# PAULI_PRODUCTS[i, j] = sigma_i (x) sigma_j
PAULI_PRODUCTS = np.array([[np.kron(a, b) for b in SIGMA] for a in SIGMA])
PAULI_PRODUCTS.setflags(write=False)


def as_matrix(m, dims=(2, 4)) -> np.ndarray:
    """Coerce ``m`` to a square complex array whose size is in ``dims``."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise InvalidArgument(f"expected a square matrix of size {dims}, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    a = as_matrix(a, (2,))
    b = as_matrix(b, (2,))
    return np.kron(a, b)


def anticommutator(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise InvalidArgument(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b + b @ a


def partial_transpose_A(m) -> np.ndarray:
    """Transpose over the first qubit: (2i+j, 2k+l) <- (2k+j, 2i+l)."""
    m = as_matrix(m, (4,))
    return m.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3).reshape(4, 4)


def partial_trace_B(m) -> np.ndarray:
    m = as_matrix(m, (4,))
    return np.einsum("ajbj->ab", m.reshape(2, 2, 2, 2))


def partial_trace_A(m) -> np.ndarray:
    m = as_matrix(m, (4,))
    return np.einsum("iaib->ab", m.reshape(2, 2, 2, 2))


def hermiticity_deviation(m) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)))


def require_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(m)
    dev = hermiticity_deviation(m)
    if dev > tol:
        raise PreconditionViolation("matrix is not Hermitian", dev)
    return m


def _eig2(m: np.ndarray) -> np.ndarray:
    # closed form for a 2x2 Hermitian matrix
    a = m[0, 0].real
    d = m[1, 1].real
    half_tr = 0.5 * (a + d)
    r = np.hypot(0.5 * (a - d), abs(m[0, 1]))
    return np.array([half_tr - r, half_tr + r])


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending real spectrum of a Hermitian 2x2 or 4x4 matrix."""
    m = require_hermitian(m)
    if m.shape[0] == 2:
        return _eig2(m)
    # symmetrise away sub-tolerance skew parts before the solve
    return np.linalg.eigvalsh(0.5 * (m + m.conj().T))


def trace_norm(m) -> float:
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def pauli_decompose(m) -> np.ndarray:
    """Real 4x4 table T[i, j] = Tr[(sigma_i (x) sigma_j) m]."""
    m = require_hermitian(as_matrix(m, (4,)))
    return np.einsum("ijab,ba->ij", PAULI_PRODUCTS, m).real


def pauli_reconstruct(table) -> np.ndarray:
    t = np.asarray(table)
    if t.shape != (4, 4):
        raise InvalidArgument(f"Pauli table must be 4x4, got {t.shape}")
    if np.iscomplexobj(t):
        if np.max(np.abs(t.imag)) > HERMITIAN_TOL:
            raise PreconditionViolation("Pauli table has imaginary entries", float(np.max(np.abs(t.imag))))
        t = t.real
    return 0.25 * np.einsum("ij,ijab->ab", t.astype(float), PAULI_PRODUCTS)


def bloch_vector(rho) -> np.ndarray:
    rho = require_hermitian(as_matrix(rho, (2,)))
    return np.array([np.trace(s @ rho).real for s in SIGMA[1:]])


def from_bloch(r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    return 0.5 * (I2 + r[0] * X + r[1] * Y + r[2] * Z)
