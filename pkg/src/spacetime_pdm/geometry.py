"""Membership, distances and projections in the space of diagonal two-point
correlations (<XX>, <YY>, <ZZ>).

All predicates accept a single triple or an ``(N, 3)`` array and treat the
regions as closed. Facet margins are ``1 - n . c`` (nonnegative inside).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidArgument
from .pauli import SIGMA

GEOM_TOL = 1e-9

SPATIAL_VERTICES = np.array([(1, 1, -1), (1, -1, 1), (-1, 1, 1), (-1, -1, -1)], dtype=float)
TEMPORAL_VERTICES = np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float)
OCTAHEDRON_VERTICES = np.array(
    [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], dtype=float
)
CUBE_VERTICES = np.array([(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], dtype=float)

# outward facet normals; each tetrahedron's facets face away from the opposite-parity vertices
SPATIAL_NORMALS = TEMPORAL_VERTICES.copy()
TEMPORAL_NORMALS = SPATIAL_VERTICES.copy()


class CorrVec3(NamedTuple):
    x: float
    y: float
    z: float


def _pts(c) -> np.ndarray:
    return np.asarray(c, dtype=float)


def tetra_s_margins(c) -> np.ndarray:
    return 1.0 - _pts(c) @ SPATIAL_NORMALS.T


def tetra_t_margins(c) -> np.ndarray:
    return 1.0 - _pts(c) @ TEMPORAL_NORMALS.T


def in_tetra_s(c, tol: float = GEOM_TOL):
    return np.all(tetra_s_margins(c) >= -tol, axis=-1)


def in_tetra_t(c, tol: float = GEOM_TOL):
    return np.all(tetra_t_margins(c) >= -tol, axis=-1)


def in_octahedron(c, tol: float = GEOM_TOL):
    return np.sum(np.abs(_pts(c)), axis=-1) <= 1.0 + tol


def in_cube(c, tol: float = GEOM_TOL):
    return np.all(np.abs(_pts(c)) <= 1.0 + tol, axis=-1)


def elliptope_defect(c):
    """``1 + 2xyz - x^2 - y^2 - z^2``: zero on the boundary surface, >= 0 inside."""
    p = _pts(c)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    return 1.0 + 2.0 * x * y * z - x * x - y * y - z * z


def in_elliptope(c, tol: float = GEOM_TOL):
    return in_cube(c, tol) & (elliptope_defect(c) >= -tol)


def project_l1_ball(c, radius: float = 1.0) -> np.ndarray:
    """Exact Euclidean projection onto the l1 ball (sort and soft-threshold)."""
    p = _pts(c)
    flat = np.atleast_2d(p)
    a = np.abs(flat)
    inside = a.sum(axis=1) <= radius
    mu = -np.sort(-a, axis=1)
    cums = np.cumsum(mu, axis=1)
    ks = np.arange(1, flat.shape[1] + 1)
    active = mu - (cums - radius) / ks > 0
    rho = flat.shape[1] - 1 - np.argmax(active[:, ::-1], axis=1)
    theta = (cums[np.arange(len(flat)), rho] - radius) / (rho + 1)
    proj = np.sign(flat) * np.maximum(a - theta[:, None], 0.0)
    proj[inside] = flat[inside]
    return proj.reshape(p.shape)


def dist_to_octahedron(c):
    p = _pts(c)
    d = np.linalg.norm(p - project_l1_ball(p), axis=-1)
    return float(d) if d.ndim == 0 else d


def d_s(f_n: float) -> float:
    """Distance of a Bell-diagonal state's correlations from the separable octahedron."""
    if f_n < 0:
        raise InvalidArgument(f"negativity must be nonnegative, got {f_n}")
    return 4.0 * f_n / math.sqrt(3.0)


def d_t(f_tr: float) -> float:
    if f_tr < 0:
        raise InvalidArgument(f"causality measure must be nonnegative, got {f_tr}")
    return 2.0 * f_tr / math.sqrt(3.0)


def surface_point(u: float, v: float) -> CorrVec3:
    if not (0.0 <= u <= 2 * math.pi and 0.0 <= v <= math.pi):
        raise InvalidArgument(f"need u in [0, 2pi] and v in [0, pi], got ({u}, {v})")
    return CorrVec3(math.cos(u), math.cos(v), math.cos(u - v))


def surface_mesh(n_u: int, n_v: int) -> np.ndarray:
    """Rows (u, v, x, y, z) over a closed ``n_u x n_v`` parameter grid."""
    u = np.linspace(0.0, 2 * math.pi, n_u)
    v = np.linspace(0.0, math.pi, n_v)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    return np.stack([uu, vv, np.cos(uu), np.cos(vv), np.cos(uu - vv)], axis=-1).reshape(-1, 5)


@dataclass(frozen=True)
class RegionReport:
    point: CorrVec3
    in_Ts: bool
    in_Tt: bool
    in_octahedron: bool
    in_elliptope: bool
    in_cube: bool
    dist_octahedron: float
    elliptope_defect: float
    margins_Ts: tuple
    margins_Tt: tuple

    def as_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["point"] = list(self.point)
        d["margins_Ts"] = list(self.margins_Ts)
        d["margins_Tt"] = list(self.margins_Tt)
        return d


def classify(c, tol: float = GEOM_TOL) -> RegionReport:
    p = CorrVec3(*(float(a) for a in c))
    ms = tetra_s_margins(p)
    mt = tetra_t_margins(p)
    in_s = bool(np.all(ms >= -tol))
    in_t = bool(np.all(mt >= -tol))
    # T_t is an exact subset of the elliptope; keep the flags nested even when
    # the tolerance bands of the two tests disagree on the boundary
    return RegionReport(
        point=p,
        in_Ts=in_s,
        in_Tt=in_t,
        in_octahedron=bool(in_octahedron(p, tol)) and in_s and in_t,
        in_elliptope=bool(in_elliptope(p, tol)) or in_t,
        in_cube=bool(in_cube(p, tol)) or in_s or in_t,
        dist_octahedron=dist_to_octahedron(p),
        elliptope_defect=float(elliptope_defect(p)),
        margins_Ts=tuple(float(m) for m in ms),
        margins_Tt=tuple(float(m) for m in mt),
    )


# -- two-dimensional projections of general PDM components ----------------------------------------


@dataclass(frozen=True)
class ProjectionType:
    label: str
    two_identity_anticommuting: bool = False


def _factor_anticommutes(a: int, b: int) -> bool:
    return a != 0 and b != 0 and a != b


def observables_commute(p1, p2) -> bool:
    (a1, b1), (a2, b2) = p1, p2
    flips = _factor_anticommutes(a1, a2) + _factor_anticommutes(b1, b2)
    return flips % 2 == 0


def projection_type(p1, p2) -> ProjectionType:
    """Type of the plane spanned by <sigma_A1 sigma_B1> and <sigma_A2 sigma_B2>.

    ``a``: the two tensor observables commute. ``b``: they anticommute and
    exactly one of the four factors is the identity. ``c``: everything else;
    the anticommuting case with two identity factors is flagged.
    """
    labels = tuple(p1) + tuple(p2)
    if len(labels) != 4 or any(l not in (0, 1, 2, 3) for l in labels):
        raise InvalidArgument(f"Pauli pairs must hold labels in 0..3, got {p1}, {p2}")
    if observables_commute(p1, p2):
        return ProjectionType("a")
    n_identity = labels.count(0)
    if n_identity == 1:
        return ProjectionType("b")
    return ProjectionType("c", two_identity_anticommuting=n_identity == 2)


def tensor_observable(pair) -> np.ndarray:
    a, b = pair
    return np.kron(SIGMA[a], SIGMA[b])


def admissible_2d(t: ProjectionType | str, point, kind: str, tol: float = GEOM_TOL) -> bool:
    label = t.label if isinstance(t, ProjectionType) else t
    if kind not in ("spatial", "temporal"):
        raise InvalidArgument(f"kind must be 'spatial' or 'temporal', got {kind!r}")
    p1, p2 = (abs(float(a)) for a in point)
    square = p1 <= 1.0 + tol and p2 <= 1.0 + tol
    disc = p1 * p1 + p2 * p2 <= 1.0 + tol
    if label == "a":
        return square
    if label == "b":
        return square if kind == "temporal" else disc
    if label == "c":
        return disc
    raise InvalidArgument(f"unknown projection type {label!r}")
