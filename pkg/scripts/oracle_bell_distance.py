"""Dense-mesh minimum distance from the odd-parity cube vertices to the
boundary surface (cos u, cos v, cos(u - v)) of the temporal correlation body.

The body is the convex closure of that surface, so the nearest point of the
body to an outside vertex lies on the surface.
"""
import argparse

import numpy as np

ODD_VERTICES = np.array([(1, 1, -1), (1, -1, 1), (-1, 1, 1), (-1, -1, -1)], dtype=float)


def min_distances(n_u: int, n_v: int) -> np.ndarray:
    u = np.linspace(0.0, 2 * np.pi, n_u)
    v = np.linspace(0.0, np.pi, n_v)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    pts = np.stack([np.cos(uu), np.cos(vv), np.cos(uu - vv)], axis=-1).reshape(-1, 3)
    out = []
    for vert in ODD_VERTICES:
        out.append(np.sqrt(((pts - vert) ** 2).sum(axis=1)).min())
    return np.array(out)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--nu", type=int, default=4001)
    ap.add_argument("--nv", type=int, default=2001)
    args = ap.parse_args()
    d = min_distances(args.nu, args.nv)
    for vert, dist in zip(ODD_VERTICES, d):
        print(f"vertex {tuple(int(c) for c in vert)}: min distance {dist:.9f}")
    print(f"sqrt(3)/2 = {np.sqrt(3) / 2:.9f}")
