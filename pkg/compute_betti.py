#!/usr/bin/env python3
from __future__ import annotations

import argparse
import sys

from cli_common import add_common_arguments, build_config, cached_payload, emit, run_command
from complex_io import complex_to_json, load_complex
from hochster import bigraded_betti, koszul_betti
from homology import CoefficientRing, HomologyGroup, boundary_matrices
from simplicial import SimplicialComplex


def betti_payload(
    K: SimplicialComplex,
    rings: list[CoefficientRing],
    *,
    verify_koszul: bool = False,
    dump_matrices: bool = False,
    workers: int = 1,
) -> dict:
    tables = []
    for R in rings:
        table = bigraded_betti(K, R, workers=workers)
        row = table.to_json()
        if R.is_field:
            row["betti"] = table.total_ranks()
        if verify_koszul:
            if R.is_field:
                agree = koszul_betti(K, R).field_part() == table.field_part()
                row["koszul"] = "agree" if agree else "disagree"
            else:
                row["koszul"] = "skipped (integral coefficients)"
        tables.append(row)
    payload = {"complex": complex_to_json(K), "tables": tables}
    if dump_matrices:
        payload["matrices"] = {str(R): [c.to_json() for c in boundary_matrices(K, R)] for R in rings}
    return payload


def _group(entry: dict, ring: CoefficientRing) -> str:
    return HomologyGroup(rank=entry["rank"], torsion=tuple(entry["torsion"])).render(ring)


def render_betti(payload: dict) -> str:
    lines: list[str] = []
    for table in payload["tables"]:
        ring = CoefficientRing.parse(table["ring"])
        lines.append(f"ring: {ring}")
        lines.append("  bigraded (-i,2j):")
        for entry in table["entries"]:
            lines.append(f"    ({-entry['i']},{entry['2j']}): {_group(entry, ring)}")
        lines.append("  total degree:")
        for entry in table["total"]:
            lines.append(f"    H^{entry['p']} = {_group(entry, ring)}")
        if "betti" in table:
            lines.append("  b=(" + ",".join(str(b) for b in table["betti"]) + ")")
        if "koszul" in table:
            lines.append(f"  koszul: {table['koszul']}")
    return "\n".join(lines)


def main() -> int:
    parser = argparse.ArgumentParser(description="Bigraded Betti numbers and cohomology groups of Z_K.")
    add_common_arguments(parser)
    parser.add_argument(
        "--verify-koszul",
        action="store_true",
        help="Recompute every field table from the Koszul complex and report agreement",
    )
    parser.add_argument(
        "--dump-matrices",
        action="store_true",
        help="Include the coboundary matrices of K in the JSON output",
    )
    args = parser.parse_args()
    config = build_config(args, "betti")

    K = load_complex(config.input_path)
    payload = cached_payload(
        config,
        K,
        lambda: betti_payload(
            K,
            config.rings,
            verify_koszul=args.verify_koszul,
            dump_matrices=args.dump_matrices,
            workers=config.workers,
        ),
        extra=f"koszul={args.verify_koszul};matrices={args.dump_matrices}",
    )
    emit(config, payload, render_betti)

    disagreeing = [t["ring"] for t in payload["tables"] if t.get("koszul") == "disagree"]
    if disagreeing:
        print(f"FAIL: Koszul complex disagrees over {', '.join(disagreeing)}", file=sys.stderr)
        return 1
    print(f"OK: Betti tables for {config.input_path} over {', '.join(map(str, config.rings))}.", file=sys.stderr)
    return 0


if __name__ == "__main__":
    run_command(main)
