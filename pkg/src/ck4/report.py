"""Classification reports: one dict per algebra, JSON- and markdown-ready.

Reports are deterministic (fixed key order, no timestamps) and round-trip
through JSON: rational scalars are rendered as 'p/q' strings, float data as
JSON numbers.  The orientation labels 'plus'/'minus' refer to the package
convention vol = e1^e2^e3^e4; because the labelling of the two sides is a
convention, the report also marks which side has vanishing Weyl block and
carries the unordered dimension pair.
"""

from __future__ import annotations

import json

from . import curvature as curv
from . import killing
from .linalg import is_zero_mat, max_abs, sym_eigenvalues
from .scalars import scalar_to_json


def _matrix_json(mat):
    return [[scalar_to_json(x) for x in row] for row in mat]


def _weyl_entry(block, eps, scale):
    return {
        "matrix": _matrix_json(block),
        "spectrum": sym_eigenvalues(block),
        "is_zero": is_zero_mat(block, eps, scale),
    }


def build_report(mla, cd=None):
    """Run the full pipeline on one algebra and assemble the report dict."""
    cd = cd if cd is not None else curv.riemann(mla)
    result = killing.classify(mla, cd)
    fl = result.flags
    scale = max(1, max_abs(cd.curv_op))
    dims_sorted = sorted(result.dims, reverse=True)
    report = {
        "label": mla.label,
        "backend": mla.backend,
        "parameters": {name: scalar_to_json(v) for name, v in mla.params},
        "flags": {
            "is_flat": fl.is_flat,
            "is_einstein": fl.is_einstein,
            "is_conf_flat": fl.is_conf_flat,
            "is_half_cf_plus": fl.is_half_cf_plus,
            "is_half_cf_minus": fl.is_half_cf_minus,
        },
        "scalar_curvature": scalar_to_json(cd.scal),
        "weyl": {
            "plus": _weyl_entry(cd.wplus, mla.eps, scale),
            "minus": _weyl_entry(cd.wminus, mla.eps, scale),
        },
        "ck_dims": {
            "plus": result.dims[0],
            "minus": result.dims[1],
            "unordered": dims_sorted,
            "weyl_vanishing_sides": list(result.weyl_vanishing_sides),
        },
        "case": result.case,
        "case_label": result.label,
        "lck_structures": [
            {
                "j": hit["j"],
                "side": hit["side"],
                "omega": [scalar_to_json(x) for x in hit["omega"]],
                "lee_form": [scalar_to_json(x) for x in hit["lee_form"]],
                "is_kahler": hit["is_kahler"],
            }
            for hit in result.lck_structures
        ],
        "warnings": list(result.warnings),
    }
    return report


def report_to_json(report):
    return json.dumps(report, indent=2) + "\n"


def _flag_str(report):
    fl = report["flags"]
    short = []
    if fl["is_flat"]:
        short.append("flat")
    if fl["is_einstein"]:
        short.append("einstein")
    if fl["is_conf_flat"]:
        short.append("conformally-flat")
    else:
        if fl["is_half_cf_plus"]:
            short.append("half-cf(+)")
        if fl["is_half_cf_minus"]:
            short.append("half-cf(-)")
    return ", ".join(short) if short else "generic"


def report_to_markdown(report):
    lines = [f"# {report['label']}", ""]
    if report["parameters"]:
        params = ", ".join(f"{k} = {v}" for k, v in report["parameters"].items())
        lines.append(f"- parameters: {params}")
    lines.append(f"- backend: {report['backend']}")
    lines.append(f"- flags: {_flag_str(report)}")
    lines.append(f"- scalar curvature: {report['scalar_curvature']}")
    for side in ("plus", "minus"):
        w = report["weyl"][side]
        tag = "zero block" if w["is_zero"] else "nonzero"
        spectrum = ", ".join(f"{v:.6g}" for v in w["spectrum"])
        lines.append(f"- weyl {side}: {tag} (spectrum {spectrum})")
    dims = report["ck_dims"]
    vanish = ", ".join(dims["weyl_vanishing_sides"]) if dims["weyl_vanishing_sides"] else "none"
    lines.append(
        f"- conformal Killing dimensions: plus = {dims['plus']}, minus = {dims['minus']}"
        f" (weyl vanishes on: {vanish})"
    )
    lines.append(f"- case: {report['case']} ({report['case_label']})")
    if report["lck_structures"]:
        lines.append("- invariant lcK structures:")
        for hit in report["lck_structures"]:
            lee = ", ".join(str(x) for x in hit["lee_form"])
            kah = ", Kaehler" if hit["is_kahler"] else ""
            lines.append(f"  - {hit['j']} (side {hit['side']}, lee form [{lee}]{kah})")
    else:
        lines.append("- invariant lcK structures: none found")
    if report["warnings"]:
        lines.append("- warnings:")
        for w in report["warnings"]:
            lines.append(f"  - {w}")
    return "\n".join(lines) + "\n"
