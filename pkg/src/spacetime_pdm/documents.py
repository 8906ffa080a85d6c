"""JSON documents for states, PDMs, channels and correlation tables.

Layout::

    {"kind": "state" | "pdm" | "channel" | "correlations", "payload": {...}}

Complex scalars are ``[re, im]`` pairs and matrices are row-major nested
lists. Kind-specific validation runs on load.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .channels import Channel, validate_cptp
from .errors import ValidationError
from .pdm import PDM, QubitState, causality_f_tr, corr_vec3, pdm_from_correlations

KINDS = ("state", "pdm", "channel", "correlations")


class DocumentError(ValidationError):
    pass


def _num(x: float, precision: int | None) -> float:
    x = float(x)
    return x if precision is None else float(f"{x:.{precision}g}")


def encode_matrix(m, precision: int | None = None) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[_num(z.real, precision), _num(z.imag, precision)] for z in row] for row in m]


def decode_matrix(data, size: int) -> np.ndarray:
    try:
        a = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"matrix is not a nested numeric array: {exc}") from None
    if a.shape != (size, size, 2):
        raise DocumentError(f"expected a {size}x{size} matrix of [re, im] pairs, got shape {a.shape}")
    return a[..., 0] + 1j * a[..., 1]


def _real_table(data, shape=(4, 4)) -> np.ndarray:
    try:
        a = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"table is not numeric: {exc}") from None
    if a.shape != shape:
        raise DocumentError(f"expected a table of shape {shape}, got {a.shape}")
    return a


def _reals(xs, precision):
    return [_num(x, precision) for x in np.ravel(xs)]


def state_document(state: QubitState, precision: int | None = None) -> dict:
    return {
        "kind": "state",
        "payload": {"matrix": encode_matrix(state.matrix, precision), "bloch": _reals(state.bloch, precision)},
    }


def pdm_document(r: PDM, precision: int | None = None) -> dict:
    return {
        "kind": "pdm",
        "payload": {
            "matrix": encode_matrix(r.matrix, precision),
            "table": [_reals(row, precision) for row in r.table],
            "eigenvalues": _reals(r.eigenvalues, precision),
            "f_tr": _num(causality_f_tr(r), precision),
            "corr": _reals(corr_vec3(r), precision),
        },
    }


def channel_document(c: Channel, precision: int | None = None) -> dict:
    payload = {"ptm": [_reals(row, precision) for row in c.ptm], "choi": encode_matrix(c.choi, precision)}
    if c.kraus is not None:
        payload["kraus"] = [encode_matrix(k, precision) for k in c.kraus]
    return {"kind": "channel", "payload": payload}


def correlations_document(table, precision: int | None = None) -> dict:
    return {"kind": "correlations", "payload": {"table": [_reals(row, precision) for row in np.asarray(table)]}}


def parse_document(doc: dict):
    """Validate a decoded JSON document and return ``(kind, value)``."""
    if not isinstance(doc, dict) or "kind" not in doc or "payload" not in doc:
        raise DocumentError("document needs 'kind' and 'payload' fields")
    kind, payload = doc["kind"], doc["payload"]
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    if not isinstance(payload, dict):
        raise DocumentError("payload must be an object")
    if kind == "state":
        if "matrix" in payload:
            return kind, QubitState.from_matrix(decode_matrix(payload["matrix"], 2))
        return kind, QubitState.from_bloch(_real_table(payload.get("bloch"), (3,)))
    if kind == "pdm":
        return kind, PDM.from_matrix(decode_matrix(payload.get("matrix"), 4))
    if kind == "correlations":
        return kind, pdm_from_correlations(_real_table(payload.get("table")))
    # channel: first available representation wins, the CPTP check decides
    if "kraus" in payload:
        ch = Channel(kraus=tuple(decode_matrix(k, 2) for k in payload["kraus"]))
    elif "choi" in payload:
        ch = Channel(choi=decode_matrix(payload["choi"], 4))
    elif "ptm" in payload:
        ch = Channel(ptm=_real_table(payload["ptm"]))
    else:
        raise DocumentError("channel payload needs one of 'kraus', 'choi', 'ptm'")
    report = validate_cptp(ch)
    if not report.passed:
        raise DocumentError(
            f"channel is not CPTP (min Choi eigenvalue {report.min_eigenvalue:.3e}, "
            f"trace residual {report.tp_residual:.3e})"
        )
    return kind, ch


def load_document(path) -> tuple:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path}: not valid JSON ({exc})") from None
    return parse_document(doc)


def dump_document(doc: dict, path=None) -> str:
    text = json.dumps(doc, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
