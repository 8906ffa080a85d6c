"""Qubit channels held as synchronized Kraus / Pauli-transfer / Choi data.

Conventions
-----------
* ``ptm[i, j] = Tr[sigma_i eps(sigma_j)] / 2`` (Schroedinger picture).
* The Choi matrix has unit trace:
  ``choi = sum_ab |a><b| (x) eps(|a><b|) / 2``, input on the first factor.
* Stored Kraus operators satisfy ``sum_k K^dag K = I`` and act as
  ``eps(rho) = sum_k K rho K^dag``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgument, RepresentationError, ValidationError
from .pauli import I2, SIGMA, X, Y, Z, as_matrix, partial_trace_B, require_hermitian

CPTP_TOL = 1e-9
WEIGHT_TOL = 1e-12
_KRAUS_CUTOFF = 1e-14

_SIGMA_T = tuple(s.T for s in SIGMA)


# -- raw conversions -----------------------------------------------------------------------------


def kraus_to_choi(kraus: Sequence[np.ndarray]) -> np.ndarray:
    if kraus is None:
        raise RepresentationError("no Kraus representation available")
    choi = np.zeros((4, 4), dtype=complex)
    for k in kraus:
        # (I (x) K) sum_a |aa>  has component K[b, a] at index 2a + b
        vec = as_matrix(k, (2,)).T.reshape(4)
        choi += np.outer(vec, vec.conj())
    return 0.5 * choi


def kraus_to_ptm(kraus: Sequence[np.ndarray]) -> np.ndarray:
    if kraus is None:
        raise RepresentationError("no Kraus representation available")
    ks = np.asarray(kraus, dtype=complex)
    images = [np.einsum("kab,bc,kdc->ad", ks, s, ks.conj()) for s in SIGMA]
    return np.array([[0.5 * np.trace(si @ img).real for img in images] for si in SIGMA])


def choi_to_ptm(choi: np.ndarray) -> np.ndarray:
    if choi is None:
        raise RepresentationError("no Choi representation available")
    choi = as_matrix(choi, (4,))
    return np.array(
        [[np.trace(np.kron(_SIGMA_T[j], SIGMA[i]) @ choi).real for j in range(4)] for i in range(4)]
    )


def ptm_to_choi(ptm: np.ndarray) -> np.ndarray:
    if ptm is None:
        raise RepresentationError("no Pauli-transfer representation available")
    ptm = np.asarray(ptm, dtype=float)
    if ptm.shape != (4, 4):
        raise InvalidArgument(f"PTM must be 4x4, got {ptm.shape}")
    return 0.25 * sum(ptm[i, j] * np.kron(_SIGMA_T[j], SIGMA[i]) for i in range(4) for j in range(4))


def choi_to_kraus(choi: np.ndarray, tol: float = CPTP_TOL) -> tuple[np.ndarray, ...]:
    """Canonical (orthogonal) Kraus set from the Choi spectrum."""
    choi = require_hermitian(as_matrix(choi, (4,)))
    w, v = np.linalg.eigh(0.5 * (choi + choi.conj().T))
    if w[0] < -tol:
        raise ValidationError(f"Choi matrix is not PSD (min eigenvalue {w[0]:.3e})")
    kraus = [math.sqrt(2 * lam) * v[:, n].reshape(2, 2).T for n, lam in enumerate(w) if lam > _KRAUS_CUTOFF]
    return tuple(kraus[::-1])


# -- channel value type --------------------------------------------------------------------------


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Channel:
    """A qubit map; any one representation suffices, the rest are derived.

    ``kraus`` stays ``None`` for maps that are not completely positive.
    """

    kraus: tuple | None = None
    ptm: np.ndarray | None = None
    choi: np.ndarray | None = None

    def __post_init__(self):
        kraus, ptm, choi = self.kraus, self.ptm, self.choi
        if kraus is None and ptm is None and choi is None:
            raise RepresentationError("a channel needs at least one representation")
        if kraus is not None:
            kraus = tuple(_readonly(as_matrix(k, (2,))) for k in kraus)
            derived = kraus_to_choi(kraus)
            if choi is not None and np.max(np.abs(derived - choi)) > CPTP_TOL:
                raise ValidationError("Kraus and Choi representations disagree")
            choi = derived
        elif choi is None:
            choi = ptm_to_choi(ptm)
        choi = as_matrix(choi, (4,))
        derived_ptm = choi_to_ptm(choi)
        if ptm is not None and np.max(np.abs(derived_ptm - np.asarray(ptm))) > CPTP_TOL:
            raise ValidationError("PTM disagrees with the other representations")
        if kraus is None and np.linalg.eigvalsh(0.5 * (choi + choi.conj().T))[0] >= -CPTP_TOL:
            kraus = tuple(_readonly(k) for k in choi_to_kraus(choi))
        object.__setattr__(self, "kraus", kraus)
        object.__setattr__(self, "ptm", _readonly(derived_ptm))
        object.__setattr__(self, "choi", _readonly(choi))

    @classmethod
    def from_kraus(cls, kraus) -> "Channel":
        return cls(kraus=tuple(kraus))

    @classmethod
    def from_ptm(cls, ptm) -> "Channel":
        return cls(ptm=np.asarray(ptm, dtype=float))

    @classmethod
    def from_choi(cls, choi) -> "Channel":
        return cls(choi=np.asarray(choi, dtype=complex))

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)


@dataclass(frozen=True)
class CPTPReport:
    min_eigenvalue: float
    tp_residual: float
    is_cp: bool
    is_tp: bool

    @property
    def passed(self) -> bool:
        return self.is_cp and self.is_tp


def validate_cptp(c: Channel, tol: float = CPTP_TOL) -> CPTPReport:
    choi = c.choi
    min_eig = float(np.linalg.eigvalsh(0.5 * (choi + choi.conj().T))[0])
    # unit-trace Choi: the input marginal must be I/2
    residual = float(np.max(np.abs(2 * partial_trace_B(choi) - I2)))
    return CPTPReport(min_eig, residual, min_eig >= -tol, residual <= tol)


def is_unital(c: Channel, tol: float = CPTP_TOL) -> bool:
    return bool(np.max(np.abs(c.ptm[:, 0] - (1.0, 0.0, 0.0, 0.0))) <= tol)


def _check_weights(weights, n: int) -> np.ndarray:
    w = np.asarray(weights, dtype=float)
    if w.shape != (n,) or n == 0:
        raise InvalidArgument(f"expected {n} weights, got shape {w.shape}")
    if np.any(w < 0) or abs(w.sum() - 1.0) > WEIGHT_TOL:
        raise InvalidArgument("weights must be nonnegative and sum to one")
    return w


def mix(channels: Sequence[Channel], weights) -> Channel:
    w = _check_weights(weights, len(channels))
    if len(channels) == 1:
        return channels[0]
    return Channel(choi=sum(wi * c.choi for wi, c in zip(w, channels)))


def apply(c: Channel, rho) -> np.ndarray:
    rho = require_hermitian(as_matrix(rho, (2,)))
    if c.kraus is not None:
        return sum(k @ rho @ k.conj().T for k in c.kraus)
    coeffs = np.array([np.trace(s @ rho) for s in SIGMA])
    out = c.ptm @ coeffs
    return 0.5 * sum(out[i] * SIGMA[i] for i in range(4))


def apply_to_B(c: Channel, m) -> np.ndarray:
    """``(id (x) eps)`` applied to a two-qubit operator."""
    m = as_matrix(m, (4,))
    if c.kraus is not None:
        out = np.zeros((4, 4), dtype=complex)
        for k in c.kraus:
            big = np.kron(I2, k)
            out += big @ m @ big.conj().T
        return out
    # eps(|c><d|)[j, l] = 2 choi[(c, j), (d, l)]
    choi = 2 * c.choi.reshape(2, 2, 2, 2)
    return np.einsum("acbd,cjdl->ajbl", m.reshape(2, 2, 2, 2), choi).reshape(4, 4)


# -- named channels -----------------------------------------------------------------------------


def _check_unit(name: str, p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise InvalidArgument(f"{name} must lie in [0, 1], got {p}")
    return float(p)


def identity() -> Channel:
    return Channel(kraus=(I2,))


def pauli_unitary(k: int) -> Channel:
    if k not in (0, 1, 2, 3):
        raise InvalidArgument(f"Pauli index must be 0..3, got {k}")
    return Channel(kraus=(SIGMA[k],))


def unitary(u) -> Channel:
    u = as_matrix(u, (2,))
    if np.max(np.abs(u.conj().T @ u - I2)) > CPTP_TOL:
        raise InvalidArgument("matrix is not unitary")
    return Channel(kraus=(u,))


def depolarizing(p: float) -> Channel:
    """rho -> (1 - p) rho + p I/2."""
    p = _check_unit("p", p)
    return Channel(kraus=(math.sqrt(1 - 0.75 * p) * I2,) + tuple(math.sqrt(p / 4) * s for s in (X, Y, Z)))


def dephasing(p: float) -> Channel:
    p = _check_unit("p", p)
    return Channel(kraus=(math.sqrt(1 - p / 2) * I2, math.sqrt(p / 2) * Z))


def amplitude_damping(gamma: float) -> Channel:
    """Decay towards |0> with probability ``gamma``."""
    g = _check_unit("gamma", gamma)
    k0 = np.array([[1, 0], [0, math.sqrt(1 - g)]], dtype=complex)
    k1 = np.array([[0, math.sqrt(g)], [0, 0]], dtype=complex)
    return Channel(kraus=(k0, k1))


def pauli_channel(probs) -> Channel:
    """Random-Pauli channel ``sum_k p_k sigma_k rho sigma_k``."""
    p = _check_weights(probs, 4)
    return Channel(kraus=tuple(math.sqrt(pk) * s for pk, s in zip(p, SIGMA) if pk > 0))


def fully_depolarizing() -> Channel:
    return depolarizing(1.0)


def transpose_map() -> Channel:
    """Not completely positive; useful as a validation counterexample."""
    return Channel(ptm=np.diag([1.0, 1.0, -1.0, 1.0]))


STANDARD_CHANNELS = {
    "identity": identity,
    "pauli": pauli_unitary,
    "depolarizing": depolarizing,
    "dephasing": dephasing,
    "amplitude-damping": amplitude_damping,
}


def standard_channels() -> dict:
    """Name -> constructor for the built-in channel families."""
    return dict(STANDARD_CHANNELS)


# -- extremal trigonometric family ---------------------------------------------------------------

PERMUTATIONS = tuple(itertools.permutations((1, 2, 3)))


@dataclass(frozen=True)
class ExtremalParams:
    u: float
    v: float
    axis_permutation: tuple = (1, 2, 3)

    def __post_init__(self):
        if not (0.0 <= self.u <= 2 * math.pi):
            raise InvalidArgument(f"u must lie in [0, 2pi], got {self.u}")
        if not (0.0 <= self.v <= math.pi):
            raise InvalidArgument(f"v must lie in [0, pi], got {self.v}")
        perm = tuple(int(a) for a in self.axis_permutation)
        if sorted(perm) != [1, 2, 3]:
            raise InvalidArgument(f"axis_permutation must permute (1, 2, 3), got {self.axis_permutation}")
        object.__setattr__(self, "axis_permutation", perm)


def extremal_kraus(u: float, v: float) -> tuple[np.ndarray, np.ndarray]:
    """Kraus pair of the unpermuted extremal map.

    Adjoints of the textbook pair ``K+ = cos(v/2)cos(u/2) I + sin(v/2)sin(u/2) Z``,
    ``K- = sin(v/2)cos(u/2) X - i cos(v/2)sin(u/2) Y`` so that
    ``eps(I) = I + sin u sin v Z``, ``eps(X) = cos u X``, ``eps(Y) = cos v Y``
    and ``eps(Z) = cos u cos v Z``.
    """
    cu, su = math.cos(u / 2), math.sin(u / 2)
    cv, sv = math.cos(v / 2), math.sin(v / 2)
    k_plus = cv * cu * I2 + sv * su * Z
    k_minus = sv * cu * X - 1j * cv * su * Y
    return k_plus.conj().T, k_minus.conj().T


def permutation_rotation(perm: Sequence[int]) -> np.ndarray:
    """Proper 3x3 rotation Q with Q @ D @ Q.T == P @ D @ P.T for diagonal D and Q e3 == P e3.

    P sends axis k to axis perm[k-1]; odd permutations are corrected by
    flipping axis 1 first, which leaves diagonal maps and z-shifts alone.
    """
    P = np.zeros((3, 3))
    for k, pk in enumerate(perm):
        P[pk - 1, k] = 1.0
    if np.linalg.det(P) < 0:
        P = P @ np.diag([-1.0, 1.0, 1.0])
    return P


def _rotation_unitary(q: np.ndarray) -> np.ndarray:
    # conjugation by U has PTM 1 (+) Q; its Choi matrix is rank one, |U>><<U| / 2
    ptm = np.eye(4)
    ptm[1:, 1:] = q
    w, v = np.linalg.eigh(ptm_to_choi(ptm))
    return math.sqrt(2 * w[-1]) * v[:, -1].reshape(2, 2).T


PERMUTATION_UNITARIES = {perm: _rotation_unitary(permutation_rotation(perm)) for perm in PERMUTATIONS}


def extremal_channel(p: ExtremalParams) -> Channel:
    if not isinstance(p, ExtremalParams):
        raise InvalidArgument("extremal_channel expects ExtremalParams")
    kraus = extremal_kraus(p.u, p.v)
    if p.axis_permutation != (1, 2, 3):
        U = PERMUTATION_UNITARIES[p.axis_permutation]
        kraus = tuple(U @ k @ U.conj().T for k in kraus)
    return Channel(kraus=kraus)


def extremal_ptm(u: float, v: float, perm: Sequence[int] = (1, 2, 3)) -> np.ndarray:
    """Closed-form PTM of the extremal map (the four action lines, permuted)."""
    base = np.diag([1.0, math.cos(u), math.cos(v), math.cos(u) * math.cos(v)])
    base[3, 0] = math.sin(u) * math.sin(v)
    P = np.eye(4)
    for k, pk in enumerate(perm, start=1):
        P[:, k] = 0.0
        P[pk, k] = 1.0
    return P @ base @ P.T
