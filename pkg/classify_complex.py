#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys

from cli_common import add_common_arguments, build_config, cached_payload, emit, run_command, yes_no
from complex_io import complex_to_json, load_complex
from errors import SizeBoundExceeded
from golod import (
    PRODUCT_CRITERION,
    ConnectedSumProfile,
    WedgeProfile,
    connected_sum_profile,
    is_minimally_non_golod,
    maximal_face_order,
    wedge_profile,
)
from homology import CoefficientRing
from simplicial import SimplicialComplex, members


def classify_payload(K: SimplicialComplex, fields: list[CoefficientRing], *, workers: int = 1) -> dict:
    minimality = is_minimally_non_golod(K, fields, workers=workers)
    report = minimality.report
    profile = wedge_profile(K, workers=workers)
    summands = connected_sum_profile(K, minimality, workers=workers)
    try:
        order = maximal_face_order(K)
    except SizeBoundExceeded:
        # too many facets to search; classification stands without a witness
        order = None

    if profile is not None:
        wedge = {"kind": "spheres", "profile": profile.to_json()}
    elif report.is_flag:
        wedge = {"kind": "none", "reason": "one-skeleton not chordal"}
    elif report.golod_everywhere:
        wedge = {"kind": "not-concluded", "reason": "non-flag"}
    else:
        wedge = {"kind": "none", "reason": "nonzero products"}

    return {
        "complex": complex_to_json(K),
        "golod": report.to_json(),
        "minimally_non_golod": minimality.minimally_non_golod,
        "deletions": minimality.to_json()["deletions"],
        "wedge": wedge,
        "connected_sum": summands.to_json() if summands is not None else None,
        "maximal_face_order": [list(members(f)) for f in order] if order is not None else None,
    }


def _golod_verdict(golod: dict) -> str:
    verdicts = golod["golod"]
    if all(verdicts.values()):
        text = "yes"
    elif not any(verdicts.values()):
        text = "no"
    else:
        text = "mixed (" + ", ".join(f"{name}: {yes_no(v)}" for name, v in verdicts.items()) + ")"
    if golod["method"] == PRODUCT_CRITERION:
        text += " (product criterion)"
    return text


def render_classification(payload: dict) -> str:
    golod = payload["golod"]
    lines = [
        f"flag: {yes_no(golod['is_flag'])}, chordal: {yes_no(golod['chordal'])}",
        f"Golod: {_golod_verdict(golod)}; minimally non-Golod: {yes_no(payload['minimally_non_golod'])}",
    ]
    if golod["products_trivial"]:
        lines.append(
            "products trivial: "
            + ", ".join(f"{name} {yes_no(v)}" for name, v in golod["products_trivial"].items())
        )
    if golod["witness"]:
        w = golod["witness"]
        lines.append(
            f"witness over {w['field']}: classes on {w['alpha']['support']} (degree {w['alpha']['total_degree']})"
            f" and {w['beta']['support']} (degree {w['beta']['total_degree']}) multiply to a nonzero class"
        )
    if golod["caveat"]:
        lines.append(f"note: {golod['caveat']}")

    wedge = payload["wedge"]
    if wedge["kind"] == "spheres":
        counts = wedge["profile"]["sphere_counts"]
        profile = WedgeProfile(tuple(sorted((int(d), n) for d, n in counts.items())))
        lines.append(f"wedge: {profile.render()}")
    elif wedge["kind"] == "not-concluded":
        lines.append(f"wedge: not concluded ({wedge['reason']})")
    else:
        lines.append(f"wedge: none ({wedge['reason']})")

    summands = payload["connected_sum"]
    if summands is not None:
        products = tuple(((p["dims"][0], p["dims"][1]), p["count"]) for p in summands["products"])
        lines.append(f"connected sum: {ConnectedSumProfile(products, dim=summands['dim']).render()}")

    order = payload["maximal_face_order"]
    if order is not None:
        lines.append("gluing order: " + " ".join("{" + ",".join(map(str, f)) + "}" for f in order))
    return "\n".join(lines)


def main() -> int:
    parser = argparse.ArgumentParser(description="Golod / minimally non-Golod classification and wedge profile.")
    add_common_arguments(parser)
    args = parser.parse_args()
    config = build_config(args, "classify")
    if not config.fields:
        parser.error("classification needs at least one field (Q or Fp:<p>)")

    K = load_complex(config.input_path)
    payload = cached_payload(config, K, lambda: classify_payload(K, config.fields, workers=config.workers))
    emit(config, payload, render_classification)
    print(f"OK: classified {config.input_path}.", file=sys.stderr)
    return 0


if __name__ == "__main__":
    run_command(main)
