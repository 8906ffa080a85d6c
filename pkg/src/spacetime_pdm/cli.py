"""Command-line entry point: build, analyze, classify, sample, figures.

Exit codes: 0 success, 2 input validation, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import channels as chans
from . import geometry as geo
from .documents import dump_document, load_document, pdm_document
from .errors import RepresentationError
from .figures import emit_figure_data, fmt, write_csv
from .inference import infer_causal
from .pdm import (
    PDM,
    QubitState,
    causality_f_tr,
    corr_vec3,
    pdm_jordan,
    pdm_spatial,
    pdm_temporal,
    pt_negativity,
)
from .sampling import (
    BELL_STATES,
    TEMPORAL_FAMILIES,
    SampleSpec,
    cube_batch,
    extremal_batch,
    spatial_batch,
    temporal_cloud,
)
from .pdm import corr_batch, f_tr_batch

OUTDIR_ENV = "SPACETIME_PDM_OUTDIR"
EXIT_OK, EXIT_INPUT, EXIT_IO = 0, 2, 3

SPATIAL_NAMES = {
    "bell-phi-plus": BELL_STATES["phi-plus"],
    "bell-phi-minus": BELL_STATES["phi-minus"],
    "bell-psi-plus": BELL_STATES["psi-plus"],
    "bell-psi-minus": BELL_STATES["psi-minus"],
    "singlet": BELL_STATES["psi-minus"],
    "maximally-mixed": np.eye(4) / 4,
}


class InputError(Exception):
    pass


def _floats(text: str, n: int | None = None) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise InputError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def parse_state(tokens: list[str]) -> QubitState:
    head = tokens[0]
    if head == "maximally-mixed":
        return QubitState.maximally_mixed()
    if head == "bloch":
        if len(tokens) != 2:
            raise InputError("usage: --state bloch x,y,z")
        return QubitState.from_bloch(_floats(tokens[1], 3))
    kind, value = load_document(head)
    if kind != "state":
        raise InputError(f"{head}: expected a state document, got {kind!r}")
    return value


def parse_channel(tokens: list[str]) -> chans.Channel:
    head = tokens[0]
    if head == "extremal":
        if len(tokens) != 2:
            raise InputError("usage: --channel extremal u,v[,perm]  (radians; perm like 231)")
        parts = tokens[1].split(",")
        u, v = _floats(",".join(parts[:2]), 2)
        perm = (1, 2, 3)
        if len(parts) == 3:
            perm = tuple(int(c) for c in parts[2])
        elif len(parts) > 3:
            raise InputError(f"bad extremal spec {tokens[1]!r}")
        return chans.extremal_channel(chans.ExtremalParams(u, v, perm))
    name, _, param = head.partition(":")
    if name in chans.STANDARD_CHANNELS:
        ctor = chans.STANDARD_CHANNELS[name]
        if name == "identity":
            return ctor()
        if not param:
            raise InputError(f"channel {name!r} needs a parameter, e.g. {name}:0.5")
        return ctor(int(param) if name == "pauli" else float(param))
    if name == "fully-depolarizing":
        return chans.fully_depolarizing()
    if Path(head).exists():
        kind, value = load_document(head)
        if kind != "channel":
            raise InputError(f"{head}: expected a channel document, got {kind!r}")
        return value
    raise InputError(f"unknown channel {head!r}")


def parse_spatial(token: str) -> PDM:
    if token in SPATIAL_NAMES:
        return pdm_spatial(SPATIAL_NAMES[token])
    kind, value = load_document(token)
    if kind == "state":
        raise InputError("--spatial needs a two-qubit document")
    return pdm_spatial(value.matrix)


# -- commands ------------------------------------------------------------------------------------------------


def cmd_build(args) -> int:
    if args.spatial:
        r = parse_spatial(args.spatial)
    elif args.correlations:
        kind, r = load_document(args.correlations)
        if kind not in ("correlations", "pdm"):
            raise InputError(f"{args.correlations}: expected a correlations document, got {kind!r}")
    else:
        if not args.state or not args.channel:
            raise InputError("build needs --state and --channel, or --spatial, or --correlations")
        state = parse_state(args.state)
        channel = parse_channel(args.channel)
        r = (pdm_jordan if args.jordan else pdm_temporal)(state, channel)
    text = dump_document(pdm_document(r, args.precision), args.output)
    if args.output is None:
        sys.stdout.write(text)
    else:
        c = corr_vec3(r)
        print(f"wrote {args.output}: f_tr={fmt(causality_f_tr(r), args.precision or 12)} "
              f"corr=({', '.join(fmt(x, args.precision or 12) for x in c)})")
    return EXIT_OK


def analysis(r: PDM, tol: float) -> dict:
    c = corr_vec3(r)
    f_tr = causality_f_tr(r)
    f_n = pt_negativity(r.matrix)
    region = geo.classify(c, tol)
    return {
        "f_tr": f_tr,
        "eigenvalues": list(r.eigenvalues),
        "pt_negativity": f_n,
        "corr": list(c),
        "d_t": geo.d_t(f_tr),
        "d_s": geo.d_s(f_n),
        "region": region.as_dict(),
        "hypothesis": infer_causal(c, tol).as_dict(),
    }


def _round(obj, precision: int):
    if isinstance(obj, dict):
        return {k: _round(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v, precision) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt(obj, precision))
    return obj


def _text_report(d: dict, precision: int, indent: str = "") -> str:
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text_report(v, precision, indent + "  "))
        elif isinstance(v, list):
            lines.append(f"{indent}{k}: " + ", ".join(fmt(x, precision) for x in v))
        elif isinstance(v, bool):
            lines.append(f"{indent}{k}: {str(v).lower()}")
        else:
            lines.append(f"{indent}{k}: {fmt(v, precision)}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    kind, r = load_document(args.pdm)
    if kind not in ("pdm", "correlations"):
        raise InputError(f"{args.pdm}: expected a pdm document, got {kind!r}")
    report = _round(analysis(r, args.tol), args.precision)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(_text_report(report, args.precision))
    return EXIT_OK


def cmd_classify(args) -> int:
    point = _floats(args.point, 3)
    out = {
        "region": geo.classify(point, args.tol).as_dict(),
        "hypothesis": infer_causal(point, args.tol).as_dict(),
    }
    print(json.dumps(_round(out, args.precision), indent=2))
    return EXIT_OK


def _output_dir(arg) -> Path:
    return Path(arg or os.environ.get(OUTDIR_ENV) or ".")


def cmd_sample(args) -> int:
    fixed = None
    states = args.state[0] if args.state else "pure"
    if states == "bloch":
        fixed = parse_state(args.state)
    elif states not in ("pure", "ball", "maximally-mixed"):
        raise InputError("--state must be pure, ball, maximally-mixed or 'bloch x,y,z'")
    spec = SampleSpec(args.count, args.seed, args.family, fixed)
    out = _output_dir(args.output)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{args.family}_seed{args.seed}_n{args.count}.csv"
    extra_header: list[str] = []
    extra: list[list] = [[] for _ in range(args.count)]
    if args.family in TEMPORAL_FAMILIES:
        cloud = temporal_cloud(spec, states)
        mats, pts = cloud.matrices, cloud.corr
        bad = ~geo.in_elliptope(pts)
        if states == "maximally-mixed":
            bad |= ~geo.in_tetra_t(pts)
        extra_header = ["r1", "r2", "r3"]
        extra = cloud.blochs.tolist()
        if args.family == "extremal-channel":
            b = extremal_batch(args.seed, args.count)
            extra_header += ["u", "v", "perm"]
            perms = ["".join(map(str, chans.PERMUTATIONS[i])) for i in b.perm_index]
            extra = [row + [u, v, p] for row, u, v, p in zip(extra, b.u.tolist(), b.v.tolist(), perms)]
    elif args.family == "spatial-dm":
        mats = spatial_batch(args.seed, args.count)
        pts = corr_batch(mats)
        bad = ~geo.in_tetra_s(pts)
    else:
        mats = cube_batch(args.seed, args.count)
        pts = corr_batch(mats)
        bad = ~geo.in_cube(pts)
    f_tr = f_tr_batch(mats)
    defect = geo.elliptope_defect(pts)
    rows = (
        [i, *p, f, d, *e]
        for i, (p, f, d, e) in enumerate(zip(pts.tolist(), f_tr.tolist(), defect.tolist(), extra))
    )
    header = ["index", "x", "y", "z", "f_tr", "elliptope_defect", *extra_header]
    n = write_csv(path, header, rows, args.precision)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    box = " ".join(f"[{fmt(a, 6)},{fmt(b, 6)}]" for a, b in zip(lo, hi))
    print(f"family={args.family} count={n} seed={args.seed} violations={int(bad.sum())} bbox={box} file={path}")
    return EXIT_OK


def cmd_figures(args) -> int:
    out = _output_dir(args.output)
    summary = emit_figure_data(args.figure, args.resolution, out, args.seed, args.count, args.precision)
    print(summary.line())
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="spacetime-pdm",
        description="Two-point pseudo-density matrices and space-time correlation geometry. "
        "All angles are in radians.",
        epilog=f"Output directories default to ${OUTDIR_ENV}, then the current directory.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, precision_default=12):
        sp.add_argument("--precision", type=int, default=precision_default,
                        help="significant digits in numeric output (default %(default)s)")

    b = sub.add_parser("build", help="construct a PDM document")
    b.add_argument("--state", nargs="+", metavar="SPEC",
                   help="maximally-mixed | bloch x,y,z | state document path")
    b.add_argument("--channel", nargs="+", metavar="SPEC",
                   help="identity | pauli:k | depolarizing:p | dephasing:p | amplitude-damping:g | "
                   "fully-depolarizing | extremal u,v[,perm] (radians) | channel document path")
    b.add_argument("--spatial", metavar="SPEC",
                   help="bell-phi-plus | bell-phi-minus | bell-psi-plus | bell-psi-minus | singlet | "
                   "maximally-mixed | two-qubit document path")
    b.add_argument("--correlations", metavar="FILE", help="correlations document")
    b.add_argument("--jordan", action="store_true", help="use the Jordan-product construction")
    b.add_argument("-o", "--output", help="output path (stdout if omitted)")
    b.add_argument("--precision", type=int, default=None,
                   help="round stored numbers to this many significant digits (default: lossless)")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="report measures and regions of a PDM document")
    a.add_argument("--pdm", required=True)
    a.add_argument("--format", choices=("text", "json"), default="text")
    a.add_argument("--tol", type=float, default=geo.GEOM_TOL)
    common(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", help="classify a correlation triple")
    c.add_argument("--point", required=True, metavar="X,Y,Z")
    c.add_argument("--tol", type=float, default=geo.GEOM_TOL)
    common(c)
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("sample", help="write a seeded correlation cloud as CSV")
    s.add_argument("--family", required=True,
                   choices=("extremal-channel", "mixed-channel", "random-cptp", "spatial-dm", "cube-mixture"))
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--state", nargs="+", metavar="SPEC",
                   help="input states for channel families: pure (default) | ball | maximally-mixed | bloch x,y,z")
    s.add_argument("-o", "--output", help="output directory")
    common(s)
    s.set_defaults(func=cmd_sample)

    f = sub.add_parser("figures", help="write figure data (1: surface, 2: bodies, 3: projections)")
    f.add_argument("--figure", type=int, required=True, choices=(1, 2, 3))
    f.add_argument("--resolution", type=int, default=100)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--count", type=int, default=2000, help="cloud size for figures 2 and 3")
    f.add_argument("-o", "--output", help="output directory")
    common(f)
    f.set_defaults(func=cmd_figures)
    return p


_NEG_VALUE = re.compile(r"^-[\d.]")


def _normalize_argv(argv: list[str]) -> list[str]:
    # let "--point -0.5,0.5,0.5" through argparse's negative-number heuristic
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEG_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        if tok in ("bloch", "extremal") and i + 1 < len(argv) and _NEG_VALUE.match(argv[i + 1]):
            out.extend([tok, " " + argv[i + 1]])
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_normalize_argv(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, ValueError, RepresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
