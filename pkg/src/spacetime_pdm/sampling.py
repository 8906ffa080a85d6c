"""Seeded Monte Carlo clouds of states, channels and PDMs.

Every family draws from its own SplitMix64 streams (see ``rng``) with a fixed
number of draws per sample, so results depend only on the seed and the sample
index. Batch functions return stacked numpy arrays; the ``sample_*``
functions wrap the same draws into value objects.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .channels import PERMUTATIONS, PERMUTATION_UNITARIES, Channel, ExtremalParams, pauli_unitary
from .errors import InvalidArgument
from .pauli import I2, SIGMA, X, Y, Z
from .pdm import PDM, QubitState, corr_batch, pdm_spatial, pdm_temporal, temporal_pdm_batch

FAMILIES = ("extremal-channel", "mixed-channel", "random-cptp", "spatial-dm", "cube-mixture")
TEMPORAL_FAMILIES = ("extremal-channel", "mixed-channel", "random-cptp")

# stream tags
_T_STATE, _T_EXTREMAL, _T_MIXED, _T_CPTP, _T_SPATIAL, _T_CUBE, _T_VOLUME = range(1, 8)

ENV_DIM = 4
MIXED_COMPONENTS = 3
SPATIAL_COMPONENTS = 4


@dataclass(frozen=True)
class SampleSpec:
    count: int
    seed: int
    family: str
    fixed_state: QubitState | None = None

    def __post_init__(self):
        if int(self.count) < 1:
            raise InvalidArgument(f"count must be positive, got {self.count}")
        if self.family not in FAMILIES:
            raise InvalidArgument(f"unknown family {self.family!r}; choose from {FAMILIES}")


def _require(spec: SampleSpec, family: str):
    if spec.family != family:
        raise InvalidArgument(f"expected a {family!r} spec, got {spec.family!r}")


# -- elementary draws ---------------------------------------------------------------------------------


def pure_blochs(seed: int, count: int, tag: int = _T_STATE) -> np.ndarray:
    """Uniform points on the Bloch sphere (inverse CDF in z and azimuth)."""
    u = rng.uniforms(seed, tag, count, 2)
    z = 1.0 - 2.0 * u[:, 0]
    phi = 2.0 * math.pi * u[:, 1]
    s = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=1)


def ball_blochs(seed: int, count: int, tag: int = _T_STATE) -> np.ndarray:
    """Uniform points in the Bloch ball."""
    u = rng.uniforms(seed, tag, count, 3)
    z = 1.0 - 2.0 * u[:, 0]
    phi = 2.0 * math.pi * u[:, 1]
    r = np.cbrt(u[:, 2])
    s = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return r[:, None] * np.stack([s * np.cos(phi), s * np.sin(phi), z], axis=1)


def density_matrices(blochs: np.ndarray) -> np.ndarray:
    b = np.asarray(blochs, dtype=float)
    return 0.5 * (I2 + np.einsum("nk,kab->nab", b, np.array([X, Y, Z])))


def dirichlet_ones(u: np.ndarray) -> np.ndarray:
    """Flat Dirichlet weights from uniforms via exponential spacings."""
    e = -np.log(u)
    return e / e.sum(axis=-1, keepdims=True)


def _gram_schmidt_isometries(g: np.ndarray) -> np.ndarray:
    # g: (N, d, 2) complex; orthonormalise the two columns
    v0 = g[:, :, 0]
    v0 = v0 / np.linalg.norm(v0, axis=1, keepdims=True)
    v1 = g[:, :, 1]
    v1 = v1 - np.einsum("nd,nd->n", v0.conj(), v1)[:, None] * v0
    v1 = v1 / np.linalg.norm(v1, axis=1, keepdims=True)
    return np.stack([v0, v1], axis=2)


# -- channels -------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalBatch:
    u: np.ndarray
    v: np.ndarray
    perm_index: np.ndarray
    kraus: np.ndarray  # (N, 2, 2, 2)

    def params(self, i: int) -> ExtremalParams:
        return ExtremalParams(float(self.u[i]), float(self.v[i]), PERMUTATIONS[int(self.perm_index[i])])


def _extremal_kraus_batch(u, v, perm_index) -> np.ndarray:
    cu, su = np.cos(u / 2), np.sin(u / 2)
    cv, sv = np.cos(v / 2), np.sin(v / 2)
    k_plus = (cv * cu)[:, None, None] * I2 + (sv * su)[:, None, None] * Z
    k_minus = (sv * cu)[:, None, None] * X - 1j * (cv * su)[:, None, None] * Y
    kraus = np.stack([k_plus, k_minus], axis=1).conj().swapaxes(-1, -2)
    units = np.array([PERMUTATION_UNITARIES[p] for p in PERMUTATIONS])[perm_index]
    return np.einsum("nab,nkbc,ndc->nkad", units, kraus, units.conj())


def extremal_batch(seed: int, count: int, tag: int = _T_EXTREMAL) -> ExtremalBatch:
    """u ~ U[0, 2pi], v ~ U[0, pi], axis permutation uniform over all six."""
    d = rng.uniforms(seed, tag, count, 3)
    u = 2.0 * math.pi * d[:, 0]
    v = math.pi * d[:, 1]
    perm_index = np.minimum((6.0 * d[:, 2]).astype(np.int64), 5)
    return ExtremalBatch(u, v, perm_index, _extremal_kraus_batch(u, v, perm_index))


def random_cptp_kraus(seed: int, count: int, tag: int = _T_CPTP) -> np.ndarray:
    """Kraus sets ``(N, 4, 2, 2)`` read off Haar-random isometries C^2 -> C^2 (x) C^4."""
    dim = 2 * ENV_DIM
    g = rng.normals(seed, tag, count, 4 * dim)
    cplx = (g[:, : 2 * dim] + 1j * g[:, 2 * dim :]).reshape(count, dim, 2)
    iso = _gram_schmidt_isometries(cplx)
    return iso.reshape(count, ENV_DIM, 2, 2)


def mixed_channel_kraus(seed: int, count: int, tag: int = _T_MIXED) -> np.ndarray:
    """Dirichlet-weighted mixtures of ``MIXED_COMPONENTS`` extremal maps, ``(N, 2m, 2, 2)``."""
    m = MIXED_COMPONENTS
    d = rng.uniforms(seed, tag, count, 4 * m)
    u = 2.0 * math.pi * d[:, 0:m].reshape(-1)
    v = math.pi * d[:, m : 2 * m].reshape(-1)
    perm_index = np.minimum((6.0 * d[:, 2 * m : 3 * m]).astype(np.int64), 5).reshape(-1)
    w = dirichlet_ones(d[:, 3 * m :])
    kraus = _extremal_kraus_batch(u, v, perm_index).reshape(count, m, 2, 2, 2)
    kraus = np.sqrt(w)[:, :, None, None, None] * kraus
    return kraus.reshape(count, 2 * m, 2, 2)


def sample_extremal(spec: SampleSpec) -> list[tuple[ExtremalParams, Channel]]:
    _require(spec, "extremal-channel")
    batch = extremal_batch(spec.seed, spec.count)
    return [(batch.params(i), Channel(kraus=tuple(batch.kraus[i]))) for i in range(spec.count)]


def sample_random_cptp(spec: SampleSpec) -> list[Channel]:
    _require(spec, "random-cptp")
    return [Channel(kraus=tuple(k)) for k in random_cptp_kraus(spec.seed, spec.count)]


def sample_mixed_channel(spec: SampleSpec) -> list[Channel]:
    _require(spec, "mixed-channel")
    return [Channel(kraus=tuple(k)) for k in mixed_channel_kraus(spec.seed, spec.count)]


def channel_kraus(spec: SampleSpec) -> np.ndarray:
    if spec.family == "extremal-channel":
        return extremal_batch(spec.seed, spec.count).kraus
    if spec.family == "random-cptp":
        return random_cptp_kraus(spec.seed, spec.count)
    if spec.family == "mixed-channel":
        return mixed_channel_kraus(spec.seed, spec.count)
    raise InvalidArgument(f"{spec.family!r} is not a channel family")


# -- temporal clouds ---------------------------------------------------------------------------------------


@dataclass(frozen=True)
class TemporalCloud:
    blochs: np.ndarray
    kraus: np.ndarray
    matrices: np.ndarray
    corr: np.ndarray


def input_blochs(spec: SampleSpec, states: str = "pure") -> np.ndarray:
    if spec.fixed_state is not None:
        return np.tile(np.asarray(spec.fixed_state.bloch, dtype=float), (spec.count, 1))
    if states == "pure":
        return pure_blochs(spec.seed, spec.count)
    if states == "ball":
        return ball_blochs(spec.seed, spec.count)
    if states == "maximally-mixed":
        return np.zeros((spec.count, 3))
    raise InvalidArgument(f"unknown state distribution {states!r}")


def temporal_cloud(spec: SampleSpec, states: str = "pure") -> TemporalCloud:
    """Temporal PDMs pairing per-sample input states with per-sample channels."""
    blochs = input_blochs(spec, states)
    kraus = channel_kraus(spec)
    mats = temporal_pdm_batch(density_matrices(blochs), kraus)
    return TemporalCloud(blochs, kraus, mats, corr_batch(mats))


def sample_temporal(spec: SampleSpec, states: str = "pure") -> list[PDM]:
    blochs = input_blochs(spec, states)
    kraus = channel_kraus(spec)
    return [pdm_temporal(QubitState.from_bloch(b), Channel(kraus=tuple(k))) for b, k in zip(blochs, kraus)]


# -- spatial and mixed clouds --------------------------------------------------------------------------------

_S2 = 1.0 / math.sqrt(2.0)
BELL_VECTORS = {
    "phi-plus": np.array([_S2, 0, 0, _S2], dtype=complex),
    "phi-minus": np.array([_S2, 0, 0, -_S2], dtype=complex),
    "psi-plus": np.array([0, _S2, _S2, 0], dtype=complex),
    "psi-minus": np.array([0, _S2, -_S2, 0], dtype=complex),
}
BELL_STATES = {k: np.outer(v, v.conj()) for k, v in BELL_VECTORS.items()}


def spatial_batch(seed: int, count: int, tag: int = _T_SPATIAL) -> np.ndarray:
    """Two-qubit density matrices: 1-4 Haar pure states mixed with flat Dirichlet weights."""
    k = SPATIAL_COMPONENTS
    g = rng.normals(seed, tag, count, 8 * k)
    u = rng.uniforms(seed, tag + 100, count, k + 1)
    amps = (g[:, : 4 * k] + 1j * g[:, 4 * k :]).reshape(count, k, 4)
    amps /= np.linalg.norm(amps, axis=2, keepdims=True)
    n_used = 1 + np.minimum((k * u[:, 0]).astype(np.int64), k - 1)
    w = -np.log(u[:, 1:])
    w[np.arange(k)[None, :] >= n_used[:, None]] = 0.0
    w /= w.sum(axis=1, keepdims=True)
    return np.einsum("nk,nka,nkb->nab", w, amps, amps.conj())


def sample_spatial(spec: SampleSpec) -> list[PDM]:
    _require(spec, "spatial-dm")
    return [pdm_spatial(m) for m in spatial_batch(spec.seed, spec.count)]


def temporal_vertex_matrices() -> np.ndarray:
    """PDMs of I/2 sent through the four Pauli unitaries: the even-parity vertices."""
    mixed = QubitState.maximally_mixed()
    return np.array([pdm_temporal(mixed, pauli_unitary(k)).matrix for k in range(4)])


def spatial_vertex_matrices() -> np.ndarray:
    return np.array([BELL_STATES[k] for k in ("phi-plus", "phi-minus", "psi-plus", "psi-minus")])


def cube_mixture(spatial_weights, temporal_weights, p: float) -> np.ndarray:
    """``p * (Bell-diagonal state) + (1 - p) * (Pauli-channel temporal PDM)``."""
    s = np.tensordot(np.asarray(spatial_weights, dtype=float), spatial_vertex_matrices(), axes=1)
    t = np.tensordot(np.asarray(temporal_weights, dtype=float), temporal_vertex_matrices(), axes=1)
    return p * s + (1.0 - p) * t


def cube_batch(seed: int, count: int, tag: int = _T_CUBE) -> np.ndarray:
    u = rng.uniforms(seed, tag, count, 9)
    ws = dirichlet_ones(u[:, 0:4])
    wt = dirichlet_ones(u[:, 4:8])
    p = u[:, 8]
    s = np.einsum("nk,kab->nab", ws, spatial_vertex_matrices())
    t = np.einsum("nk,kab->nab", wt, temporal_vertex_matrices())
    return p[:, None, None] * s + (1.0 - p)[:, None, None] * t


def sample_cube(spec: SampleSpec) -> list[PDM]:
    _require(spec, "cube-mixture")
    return [PDM.from_matrix(m) for m in cube_batch(spec.seed, spec.count)]


def pauli_channel_kraus(seed: int, count: int, tag: int) -> np.ndarray:
    """Random-Pauli channels with flat Dirichlet probabilities, ``(N, 4, 2, 2)``."""
    w = dirichlet_ones(rng.uniforms(seed, tag, count, 4))
    return np.sqrt(w)[:, :, None, None] * np.array(SIGMA)[None]


# -- volume estimates ------------------------------------------------------------------------------------------


def cube_points(seed: int, count: int, start: int = 0, tag: int = _T_VOLUME) -> np.ndarray:
    return 2.0 * rng.uniforms(seed, tag, count, 3, start=start) - 1.0


def volume_estimate(predicate, seed: int, count: int, chunk: int = 250_000) -> float:
    """Rejection estimate of a region's volume inside [-1, 1]^3."""
    hits = 0
    for start in range(0, count, chunk):
        n = min(chunk, count - start)
        hits += int(np.count_nonzero(predicate(cube_points(seed, n, start))))
    return 8.0 * hits / count
