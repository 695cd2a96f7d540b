#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys

from cli_common import add_common_arguments, build_config, cached_payload, emit, run_command
from complex_io import complex_to_json, load_complex
from homology import CoefficientRing
from loops import (
    default_truncation,
    enumerate_commutator_generators,
    generator_count_check,
    golod_series_identity,
    loop_zk_series,
)
from simplicial import SimplicialComplex, require_flag


def loops_payload(K: SimplicialComplex, F: CoefficientRing, N: int | None, *, workers: int = 1) -> dict:
    require_flag(K, operation="loop homology")
    N = default_truncation(K) if N is None else N
    generators = enumerate_commutator_generators(K)
    identity = golod_series_identity(K, F, N, workers=workers)
    return {
        "complex": complex_to_json(K),
        "generators": [
            {"bracket": str(c), "degree": c.degree, **c.to_json()} for c in generators
        ],
        "generator_count_check": generator_count_check(K),
        "series": loop_zk_series(K, N).to_json(),
        "identity": {"field": str(F), **identity.to_json()},
        "truncation": N,
    }


def render_loops(payload: dict) -> str:
    generators = payload["generators"]
    lines = [f"generators ({len(generators)}):"]
    by_degree: dict[int, list[str]] = {}
    for g in generators:
        by_degree.setdefault(g["degree"], []).append(g["bracket"])
    for degree, brackets in sorted(by_degree.items()):
        lines.append(f"  degree {degree}: " + " ".join(brackets))
    lines.append(f"generator count check: {'holds' if payload['generator_count_check'] else 'fails'}")
    series = payload["series"]
    lines.append(f"loop series: {series['rational']}")
    lines.append(f"expansion to t^{payload['truncation']}: " + ", ".join(str(c) for c in series["expansion"]))
    identity = payload["identity"]
    if identity["holds"]:
        lines.append(f"Golod identity over {identity['field']}: holds")
    else:
        lines.append(
            f"Golod identity over {identity['field']}: fails "
            f"(first residual at t^{identity['first_residual_degree']})"
        )
    return "\n".join(lines)


def main() -> int:
    parser = argparse.ArgumentParser(
        description="Commutator generators and Poincaré series of the loop homology of Z_K (flag K)."
    )
    add_common_arguments(parser)
    args = parser.parse_args()
    config = build_config(args, "loops")
    if not config.fields:
        parser.error("the Golod identity needs a field (Q or Fp:<p>)")
    F = config.fields[0]

    K = load_complex(config.input_path)
    payload = cached_payload(config, K, lambda: loops_payload(K, F, config.truncation, workers=config.workers))
    emit(config, payload, render_loops)
    group_sizes: dict[int, int] = {}
    for g in payload["generators"]:
        group_sizes[g["degree"]] = group_sizes.get(g["degree"], 0) + 1
    print(f"OK: {len(payload['generators'])} generators by degree {group_sizes}.", file=sys.stderr)
    return 0


if __name__ == "__main__":
    run_command(main)
