"""Compare dist_to_octahedron(corr) with 2 f_tr / sqrt(3) for maximally mixed
input across channel families.

Pauli channels satisfy the relation to rounding; general CPTP and unital maps
do not, because off-diagonal PTM entries raise f_tr without moving the
diagonal correlations.
"""
import argparse
import math

import numpy as np

from spacetime_pdm import geometry as geo
from spacetime_pdm import sampling as S
from spacetime_pdm.pdm import corr_batch, f_tr_batch, temporal_pdm_batch


def unital_kraus(seed, count, components=4):
    g = S.rng.normals(seed, 101, count, 8 * components)
    w = S.dirichlet_ones(S.rng.uniforms(seed, 102, count, components))
    a = (g[:, : 4 * components] + 1j * g[:, 4 * components :]).reshape(-1, 2, 2)
    q, r = np.linalg.qr(a)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    units = (q * (d / np.abs(d))[:, None, :]).reshape(count, components, 2, 2)
    return np.sqrt(w)[:, :, None, None] * units


def errors(kraus):
    mats = temporal_pdm_batch(np.tile(np.eye(2) / 2, (len(kraus), 1, 1)), kraus)
    return np.abs(geo.dist_to_octahedron(corr_batch(mats)) - 2 * f_tr_batch(mats) / math.sqrt(3))


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=10_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    families = {
        "pauli": S.pauli_channel_kraus(args.seed, args.count, 103),
        "unital": unital_kraus(args.seed, args.count),
        "extremal": S.extremal_batch(args.seed, args.count).kraus,
        "random-cptp": S.random_cptp_kraus(args.seed, args.count),
    }
    for name, kraus in families.items():
        e = errors(kraus)
        print(f"{name:12s} max_err={e.max():.3e} median_err={np.median(e):.3e}")
