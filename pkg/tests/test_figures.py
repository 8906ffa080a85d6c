import csv
import json

import numpy as np
import pytest

from spacetime_pdm import geometry as geo
from spacetime_pdm.errors import InvalidArgument
from spacetime_pdm.figures import emit_figure_data


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_figure1_mesh_on_surface(tmp_path):
    s = emit_figure_data(1, 40, tmp_path)
    rows = read_rows(s.files[0])
    assert len(rows) == 40 * 40
    pts = np.array([[float(r[k]) for k in "xyz"] for r in rows])
    assert np.max(np.abs(geo.elliptope_defect(pts))) <= 1e-10
    assert s.violations == 0


def test_figure2_bodies_and_clouds(tmp_path):
    s = emit_figure_data(2, 10, tmp_path, seed=3, count=500)
    bodies = json.loads((tmp_path / "fig2_bodies.json").read_text())
    assert sorted(map(tuple, bodies["octahedron"])) == sorted(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )
    assert len(bodies["tetra_s"]) == len(bodies["tetra_t"]) == 4 and len(bodies["cube"]) == 8
    rows = read_rows(tmp_path / "fig2_clouds.csv")
    assert {r["label"] for r in rows} == {"spatial", "temporal-maximally-mixed", "temporal-general", "cube-mixture"}
    assert s.violations == 0


def test_figure3_type_b_extra_temporal_region(tmp_path):
    s = emit_figure_data(3, 50, tmp_path, seed=1, count=2000)
    assert s.violations == 0
    rows = read_rows(tmp_path / "fig3_clouds.csv")
    b = [(r["kind"], float(r["p1"]), float(r["p2"])) for r in rows if r["type"] == "b"]
    temporal = np.array([(p, q) for k, p, q in b if k == "temporal"])
    spatial = np.array([(p, q) for k, p, q in b if k == "spatial"])
    assert np.any((temporal**2).sum(1) > 1)
    assert np.all((spatial**2).sum(1) <= 1 + 1e-9)
    bounds = read_rows(tmp_path / "fig3_boundaries.csv")
    assert {(r["type"], r["kind"]) for r in bounds} == {(t, k) for t in "abc" for k in ("spatial", "temporal")}


def test_figure_arguments(tmp_path):
    with pytest.raises(InvalidArgument):
        emit_figure_data(1, 1, tmp_path)
    with pytest.raises(InvalidArgument):
        emit_figure_data(4, 10, tmp_path)
