"""Causal hypotheses compatible with an observed correlation triple."""
from __future__ import annotations

from dataclasses import dataclass, field

from .geometry import GEOM_TOL, classify


@dataclass(frozen=True)
class CausalHypothesis:
    compatible_spatial: bool
    compatible_temporal_cptp: bool
    compatible_separable: bool
    requires_mixture: bool
    unphysical: bool
    witnesses: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "compatible_spatial": self.compatible_spatial,
            "compatible_temporal_cptp": self.compatible_temporal_cptp,
            "compatible_separable": self.compatible_separable,
            "requires_mixture": self.requires_mixture,
            "unphysical": self.unphysical,
            "witnesses": dict(self.witnesses),
        }


def infer_causal(c, tol: float = GEOM_TOL) -> CausalHypothesis:
    """Which scenarios could have produced the diagonal correlations ``c``.

    Spatial: a two-qubit state (tetrahedron T_s). Temporal: one qubit through a
    CPTP map, any input (elliptope). Separable: the octahedron. Points in the
    cube but outside both bodies need a probabilistic mix of the two.
    """
    rep = classify(c, tol)
    unphysical = not rep.in_cube
    witnesses = {
        "elliptope_defect": rep.elliptope_defect,
        "dist_octahedron": rep.dist_octahedron,
        "min_margin_Ts": min(rep.margins_Ts),
        "min_margin_Tt": min(rep.margins_Tt),
    }
    witnesses.update({f"margin_Ts_{i}": m for i, m in enumerate(rep.margins_Ts)})
    witnesses.update({f"margin_Tt_{i}": m for i, m in enumerate(rep.margins_Tt)})
    if unphysical:
        return CausalHypothesis(False, False, False, False, True, witnesses)
    return CausalHypothesis(
        compatible_spatial=rep.in_Ts,
        compatible_temporal_cptp=rep.in_elliptope,
        compatible_separable=rep.in_octahedron,
        requires_mixture=not rep.in_Ts and not rep.in_elliptope,
        unphysical=False,
        witnesses=witnesses,
    )
