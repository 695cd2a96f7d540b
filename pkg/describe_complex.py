#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys

from cli_common import add_common_arguments, build_config, cached_payload, emit, run_command, yes_no
from complex_io import complex_to_json, load_complex
from golod import is_chordal
from simplicial import (
    SimplicialComplex,
    connected_components,
    dehn_sommerville_check,
    fh_vector,
    is_cycle,
    is_flag,
    members,
    missing_faces,
    one_skeleton,
)


def info_payload(K: SimplicialComplex) -> dict:
    fh = fh_vector(K)
    return {
        "complex": complex_to_json(K),
        "dim": K.dim,
        "f": list(fh.f),
        "h": list(fh.h),
        "flag": is_flag(K),
        "chordal": is_chordal(one_skeleton(K)),
        "missing_faces": [list(members(mf)) for mf in missing_faces(K)],
        "dehn_sommerville": dehn_sommerville_check(K),
        "components": len(connected_components(K)),
        "cycle": is_cycle(K),
    }


def _tuple(values: list[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _braces(vertices: list[int]) -> str:
    return "{" + ",".join(str(v) for v in vertices) + "}"


def render_info(payload: dict) -> str:
    complex_json = payload["complex"]
    lines = [
        f"m: {complex_json['m']}, dim: {payload['dim']}",
        "facets: " + " ".join(_braces(facet) for facet in complex_json["maximal_faces"]),
        f"flag: {yes_no(payload['flag'])}, chordal: {yes_no(payload['chordal'])}, "
        f"f={_tuple(payload['f'])}, h={_tuple(payload['h'])}",
        "missing faces: " + (" ".join(_braces(mf) for mf in payload["missing_faces"]) or "none"),
        f"Dehn-Sommerville: {'holds' if payload['dehn_sommerville'] else 'fails'}",
        f"components: {payload['components']}, cycle: {yes_no(payload['cycle'])}",
    ]
    return "\n".join(lines)


def main() -> int:
    parser = argparse.ArgumentParser(description="Describe a simplicial complex: f/h-vector, flagness, chordality.")
    add_common_arguments(parser)
    args = parser.parse_args()
    config = build_config(args, "info")

    K = load_complex(config.input_path)
    payload = cached_payload(config, K, lambda: info_payload(K))
    emit(config, payload, render_info)
    print(f"OK: described {config.input_path} (m={K.m}, {len(K.maximal_faces)} facets).", file=sys.stderr)
    return 0


if __name__ == "__main__":
    run_command(main)
