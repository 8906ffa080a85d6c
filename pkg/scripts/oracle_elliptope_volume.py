"""Independent Monte Carlo estimate of the elliptope volume.

Uses numpy's PCG64 stream (not the package generator) so the frozen
acceptance value does not share a code path with the code under test.
"""
import argparse

import numpy as np


def estimate(total: int, seed: int, chunk: int = 10_000_000) -> tuple[float, float]:
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < total:
        n = min(chunk, total - done)
        x, y, z = rng.uniform(-1.0, 1.0, size=(3, n))
        hits += int(np.count_nonzero(1 + 2 * x * y * z - x * x - y * y - z * z >= 0))
        done += n
    frac = hits / total
    return 8.0 * frac, 8.0 * np.sqrt(frac * (1 - frac) / total)


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=200_000_000)
    ap.add_argument("--seed", type=int, default=20170713)
    args = ap.parse_args()
    vol, err = estimate(args.points, args.seed)
    print(f"elliptope volume ~ {vol:.6f} +/- {err:.6f}  (pi^2/2 = {np.pi**2 / 2:.6f})")
