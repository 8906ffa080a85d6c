"""Two-point pseudo-density matrices (PDMs) and their causal/entanglement measures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .channels import Channel, _check_weights, apply_to_B
from .errors import InvalidArgument, PreconditionViolation, ValidationError
from .geometry import CorrVec3
from .pauli import (
    HERMITIAN_TOL,
    I2,
    PAULI_PRODUCTS,
    SIGMA,
    SWAP,
    anticommutator,
    as_matrix,
    bloch_vector,
    from_bloch,
    hermitian_eigenvalues,
    hermiticity_deviation,
    partial_transpose_A,
    pauli_decompose,
    pauli_reconstruct,
    trace_norm,
)

PSD_TOL = 1e-10
TABLE_TOL = 1e-9
CHOI_PSD_TOL = 1e-9
F_TR_CLAMP = -1e-12


def _readonly(a) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class QubitState:
    matrix: np.ndarray
    bloch: np.ndarray

    @classmethod
    def from_matrix(cls, rho) -> "QubitState":
        rho = as_matrix(rho, (2,))
        dev = hermiticity_deviation(rho)
        if dev > HERMITIAN_TOL:
            raise PreconditionViolation("state is not Hermitian", dev)
        if abs(np.trace(rho) - 1) > PSD_TOL:
            raise ValidationError(f"state trace is {np.trace(rho).real}, expected 1")
        if hermitian_eigenvalues(rho)[0] < -PSD_TOL:
            raise ValidationError("state is not positive semidefinite")
        return cls(_readonly(rho), _readonly(bloch_vector(rho)))

    @classmethod
    def from_bloch(cls, r) -> "QubitState":
        r = np.asarray(r, dtype=float)
        if r.shape != (3,):
            raise InvalidArgument(f"Bloch vector needs three components, got shape {r.shape}")
        if np.linalg.norm(r) > 1 + TABLE_TOL:
            raise ValidationError(f"Bloch vector has length {np.linalg.norm(r):.6g} > 1")
        return cls(_readonly(from_bloch(r)), _readonly(r))

    @classmethod
    def maximally_mixed(cls) -> "QubitState":
        return cls.from_bloch((0.0, 0.0, 0.0))


def _as_state(rho) -> QubitState:
    return rho if isinstance(rho, QubitState) else QubitState.from_matrix(rho)


@dataclass(frozen=True, eq=False)
class PDM:
    """Hermitian unit-trace 4x4 operator plus its cached Pauli correlation table.

    Negative eigenvalues are allowed; they signal temporal structure.
    """

    matrix: np.ndarray
    table: np.ndarray

    @classmethod
    def from_matrix(cls, m) -> "PDM":
        m = as_matrix(m, (4,))
        dev = hermiticity_deviation(m)
        if dev > HERMITIAN_TOL:
            raise PreconditionViolation("PDM is not Hermitian", dev)
        tr = np.trace(m)
        if abs(tr - 1) > HERMITIAN_TOL:
            raise ValidationError(f"PDM trace is {tr.real:.12g}, expected 1")
        table = pauli_decompose(m)
        if np.max(np.abs(table)) > 1 + TABLE_TOL:
            raise ValidationError("a Pauli correlation exceeds unit magnitude")
        return cls(_readonly(m), _readonly(table))

    def correlation(self, i: int, j: int) -> float:
        return correlation(self, i, j)

    @property
    def corr(self) -> CorrVec3:
        return corr_vec3(self)

    @property
    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)


# -- constructions -----------------------------------------------------------------------------------


def pdm_temporal(rho, eps: Channel) -> PDM:
    """``(id (x) eps) {rho (x) I/2, SWAP}``."""
    state = _as_state(rho)
    sym = anticommutator(np.kron(state.matrix, I2 / 2), SWAP)
    return PDM.from_matrix(apply_to_B(eps, sym))


def _apply_general(eps: Channel, x: np.ndarray) -> np.ndarray:
    # linear extension to non-Hermitian inputs
    if eps.kraus is not None:
        return sum(k @ x @ k.conj().T for k in eps.kraus)
    coeffs = np.array([np.trace(s @ x) for s in SIGMA])
    out = eps.ptm @ coeffs
    return 0.5 * sum(out[i] * SIGMA[i] for i in range(4))


def jamiolkowski_operator(eps: Channel) -> np.ndarray:
    """``E_AB = sum_ij |i><j| (x) eps(|j><i|)``."""
    e = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            unit = np.zeros((2, 2), dtype=complex)
            unit[j, i] = 1.0
            outer = np.zeros((2, 2), dtype=complex)
            outer[i, j] = 1.0
            e += np.kron(outer, _apply_general(eps, unit))
    return e


def pdm_jordan(rho, eps: Channel) -> PDM:
    """Jordan-product form ``{rho (x) I/2, E_AB}``."""
    state = _as_state(rho)
    return PDM.from_matrix(anticommutator(np.kron(state.matrix, I2 / 2), jamiolkowski_operator(eps)))


def pdm_spatial(rho_ab) -> PDM:
    rho_ab = as_matrix(rho_ab, (4,))
    pdm = PDM.from_matrix(rho_ab)
    if pdm.eigenvalues[0] < -PSD_TOL:
        raise ValidationError("spatial PDM must be a density matrix (found a negative eigenvalue)")
    return pdm


def pdm_from_correlations(t) -> PDM:
    t = np.asarray(t, dtype=float)
    if t.shape != (4, 4):
        raise InvalidArgument(f"correlation table must be 4x4, got {t.shape}")
    if abs(t[0, 0] - 1) > TABLE_TOL:
        raise InvalidArgument(f"table[0][0] must be 1, got {t[0, 0]}")
    if np.max(np.abs(t)) > 1 + TABLE_TOL:
        raise InvalidArgument("correlations must lie in [-1, 1]")
    return PDM.from_matrix(pauli_reconstruct(t))


def mix_pdm(pdms: Sequence[PDM], weights) -> PDM:
    w = _check_weights(weights, len(pdms))
    return PDM.from_matrix(sum(wi * p.matrix for wi, p in zip(w, pdms)))


# -- queries ------------------------------------------------------------------------------------------


def correlation(r: PDM, i: int, j: int) -> float:
    if i not in (0, 1, 2, 3) or j not in (0, 1, 2, 3):
        raise InvalidArgument(f"Pauli indices must be in 0..3, got ({i}, {j})")
    return float(r.table[i, j])


def corr_vec3(r: PDM) -> CorrVec3:
    t = r.table
    return CorrVec3(float(t[1, 1]), float(t[2, 2]), float(t[3, 3]))


def diagonal_correlations(bloch, ptm) -> CorrVec3:
    """Fast path for <sigma_k sigma_k> of a temporal PDM from the channel PTM.

    ``<s_k s_k> = Tr[<s_k>_rho eps(I) s_k + eps(s_k) s_k] / 2``.
    """
    r = np.asarray(bloch, dtype=float)
    p = np.asarray(ptm, dtype=float)
    return CorrVec3(*(float(p[k, k] + r[k - 1] * p[k, 0]) for k in (1, 2, 3)))


def causality_f_tr(r: PDM) -> float:
    value = trace_norm(r.matrix) - 1.0
    return max(value, 0.0) if value >= F_TR_CLAMP else value


def negativity(rho_ab) -> float:
    rho_ab = as_matrix(rho_ab, (4,))
    if hermitian_eigenvalues(rho_ab)[0] < -PSD_TOL:
        raise ValidationError("negativity requires a positive semidefinite state")
    return max(0.5 * (trace_norm(partial_transpose_A(rho_ab)) - 1.0), 0.0)


def pt_negativity(m) -> float:
    """``(||m^PT||_tr - 1) / 2`` without a positivity precondition."""
    return max(0.5 * (trace_norm(partial_transpose_A(m)) - 1.0), 0.0)


class ChoiResult(NamedTuple):
    matrix: np.ndarray
    premise_holds: bool
    min_eigenvalue: float


def choi_of_pdm(r: PDM) -> ChoiResult:
    """Partial transpose over A; the channel's Choi matrix when the input state was I/2.

    ``premise_holds`` is False when the result is not PSD, i.e. the PDM cannot
    have come from a maximally mixed input.
    """
    choi = partial_transpose_A(r.matrix)
    lo = float(hermitian_eigenvalues(choi)[0])
    return ChoiResult(choi, lo >= -CHOI_PSD_TOL, lo)


# -- vectorised paths for Monte Carlo ------------------------------------------------------------------

_I_HALF = np.eye(2) / 2


def temporal_pdm_batch(rhos: np.ndarray, kraus: np.ndarray) -> np.ndarray:
    """Temporal PDMs for stacked states ``(N, 2, 2)`` and Kraus sets ``(N, K, 2, 2)``."""
    rhos = np.asarray(rhos, dtype=complex)
    kraus = np.asarray(kraus, dtype=complex)
    a = np.einsum("nab,cd->nacbd", rhos, _I_HALF).reshape(-1, 4, 4)
    sym = a @ SWAP + SWAP @ a
    big = np.einsum("ab,nkcd->nkacbd", I2, kraus).reshape(kraus.shape[0], kraus.shape[1], 4, 4)
    return np.einsum("nkab,nbc,nkdc->nad", big, sym, big.conj())


def tables_batch(ms: np.ndarray) -> np.ndarray:
    return np.einsum("ijab,nba->nij", PAULI_PRODUCTS, ms).real


def corr_batch(ms: np.ndarray) -> np.ndarray:
    t = tables_batch(ms)
    return np.stack([t[:, 1, 1], t[:, 2, 2], t[:, 3, 3]], axis=1)


def f_tr_batch(ms: np.ndarray) -> np.ndarray:
    ev = np.linalg.eigvalsh(0.5 * (ms + np.conj(np.swapaxes(ms, -1, -2))))
    return np.maximum(np.abs(ev).sum(axis=-1) - 1.0, 0.0)
