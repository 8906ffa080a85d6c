"""Data files behind the three correlation-geometry figures (no plotting)."""
from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import geometry as geo
from .pdm import corr_batch, tables_batch, temporal_pdm_batch
from .sampling import (
    SampleSpec,
    cube_batch,
    density_matrices,
    extremal_batch,
    pure_blochs,
    random_cptp_kraus,
    spatial_batch,
    temporal_cloud,
)
from .errors import InvalidArgument

SURFACE_TOL = 1e-12

# representative Pauli pairs ((A1, B1), (A2, B2)) for each projection type
PROJECTION_PAIRS = {
    "a": ((1, 1), (2, 2)),
    "b": ((1, 1), (2, 0)),
    "c": ((1, 1), (1, 2)),
}


@dataclass
class FigureSummary:
    figure: int
    files: list = field(default_factory=list)
    rows: dict = field(default_factory=dict)
    violations: int = 0

    def line(self) -> str:
        rows = " ".join(f"{k}={v}" for k, v in self.rows.items())
        return f"figure={self.figure} files={len(self.files)} {rows} violations={self.violations}"


def fmt(x: float, precision: int = 12) -> str:
    return f"{float(x):.{precision}g}"


def write_csv(path: Path, header, rows, precision: int = 12) -> int:
    n = 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(x, precision) if isinstance(x, (float, np.floating)) else x for x in row])
            n += 1
    return n


def figure1(out: Path, resolution: int, precision: int = 12) -> FigureSummary:
    mesh = geo.surface_mesh(resolution, resolution)
    summary = FigureSummary(1)
    path = out / "fig1_surface.csv"
    summary.rows["mesh"] = write_csv(path, ["u", "v", "x", "y", "z"], mesh.tolist(), precision)
    summary.files.append(str(path))
    summary.violations = int(np.count_nonzero(np.abs(geo.elliptope_defect(mesh[:, 2:])) > SURFACE_TOL))
    return summary


def figure2(out: Path, resolution: int, seed: int, count: int, precision: int = 12) -> FigureSummary:
    bodies = {
        "tetra_s": geo.SPATIAL_VERTICES.tolist(),
        "tetra_t": geo.TEMPORAL_VERTICES.tolist(),
        "octahedron": geo.OCTAHEDRON_VERTICES.tolist(),
        "cube": geo.CUBE_VERTICES.tolist(),
        "elliptope_surface_resolution": resolution,
    }
    summary = FigureSummary(2)
    jpath = out / "fig2_bodies.json"
    jpath.write_text(json.dumps(bodies, indent=2) + "\n")
    summary.files.append(str(jpath))

    clouds = {
        "spatial": (corr_batch(spatial_batch(seed, count)), geo.in_tetra_s),
        "temporal-maximally-mixed": (
            temporal_cloud(SampleSpec(count, seed, "random-cptp"), "maximally-mixed").corr,
            geo.in_tetra_t,
        ),
        "temporal-general": (temporal_cloud(SampleSpec(count, seed, "extremal-channel"), "pure").corr, geo.in_elliptope),
        "cube-mixture": (corr_batch(cube_batch(seed, count)), geo.in_cube),
    }
    rows = []
    for label, (pts, member) in clouds.items():
        summary.violations += int(np.count_nonzero(~member(pts)))
        rows.extend([label, *p] for p in pts.tolist())
        summary.rows[label] = len(pts)
    cpath = out / "fig2_clouds.csv"
    write_csv(cpath, ["label", "x", "y", "z"], rows, precision)
    summary.files.append(str(cpath))
    return summary


def _boundary(label: str, kind: str, resolution: int) -> np.ndarray:
    square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (0.0, 0.0)]
    if label == "a" or (label == "b" and kind == "temporal"):
        return np.array(square)
    theta = np.linspace(0.0, math.pi / 2, resolution)
    arc = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    return np.vstack([[(0.0, 0.0)], arc, [(0.0, 0.0)]])


def projected(tables: np.ndarray, pair) -> np.ndarray:
    (a1, b1), (a2, b2) = pair
    return np.stack([tables[:, a1, b1], tables[:, a2, b2]], axis=1)


def figure3(out: Path, resolution: int, seed: int, count: int, precision: int = 12) -> FigureSummary:
    summary = FigureSummary(3)
    brows = []
    for label in PROJECTION_PAIRS:
        for kind in ("spatial", "temporal"):
            brows.extend([label, kind, i, *p] for i, p in enumerate(_boundary(label, kind, resolution).tolist()))
    bpath = out / "fig3_boundaries.csv"
    summary.rows["boundary"] = write_csv(bpath, ["type", "kind", "vertex", "p1", "p2"], brows, precision)
    summary.files.append(str(bpath))

    spatial_tables = tables_batch(spatial_batch(seed, count))
    # general temporal PDMs: pure inputs through extremal and generic channels
    half = count // 2
    kraus_e = extremal_batch(seed, half).kraus
    kraus_r = random_cptp_kraus(seed, count - half)
    rhos = density_matrices(pure_blochs(seed, count))
    temporal_tables = np.concatenate(
        [
            tables_batch(temporal_pdm_batch(rhos[:half], kraus_e)),
            tables_batch(temporal_pdm_batch(rhos[half:], kraus_r)),
        ]
    )
    crows = []
    for label, pair in PROJECTION_PAIRS.items():
        for kind, tables in (("spatial", spatial_tables), ("temporal", temporal_tables)):
            pts = projected(tables, pair)
            ok = [geo.admissible_2d(label, p, kind) for p in pts]
            summary.violations += ok.count(False)
            crows.extend([label, kind, *p] for p in pts.tolist())
    cpath = out / "fig3_clouds.csv"
    summary.rows["cloud"] = write_csv(cpath, ["type", "kind", "p1", "p2"], crows, precision)
    summary.files.append(str(cpath))
    return summary


def emit_figure_data(figure: int, resolution: int, out_dir, seed: int = 0, count: int = 2000, precision: int = 12):
    if resolution < 2:
        raise InvalidArgument(f"resolution must be at least 2, got {resolution}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if figure == 1:
        return figure1(out, resolution, precision)
    if figure == 2:
        return figure2(out, resolution, seed, count, precision)
    if figure == 3:
        return figure3(out, resolution, seed, count, precision)
    raise InvalidArgument(f"figure must be 1, 2 or 3, got {figure}")
