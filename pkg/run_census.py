#!/usr/bin/env python3
"""
Walk all small complexes (or all flag complexes), classify each and write one
JSON line per complex. Rows that bear on open questions are flagged, never
decided:

  golod_with_torsion   Golod over every field yet H^*(Z_K; Z) has torsion
  mng_flag_non_cycle   flag, minimally non-Golod and not a polygon boundary
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import settings
from cli_common import dump_json, non_negative_int, positive_int, run_command
from complex_io import complex_to_json
from corpus import census_candidates
from errors import require_bound
from golod import is_minimally_non_golod
from hochster import bigraded_betti, default_fields
from homology import INTEGERS
from simplicial import SimplicialComplex, fh_vector, is_cycle, is_flag
from workers import ordered_map


def census_row(job) -> dict:
    K, flag_only = job
    fh = fh_vector(K)
    row = {
        "complex": complex_to_json(K),
        "m": K.m,
        "f": list(fh.f),
        "h": list(fh.h),
        "flag": is_flag(K),
        "cycle": is_cycle(K),
        "flags": [],
    }
    if flag_only:
        # chordal criterion only; the product sweep is the expensive part
        minimality = is_minimally_non_golod(K, default_fields(), verify_products=False)
    else:
        minimality = is_minimally_non_golod(K, default_fields())
        table = bigraded_betti(K, INTEGERS)
        total = table.total()
        row["integral"] = table.to_json()["total"]
        if minimality.report.golod_everywhere and any(g.torsion for g in total.values()):
            row["flags"].append("golod_with_torsion")
    row["golod"] = minimality.report.to_json()
    row["minimally_non_golod"] = minimality.minimally_non_golod
    if row["flag"] and minimality.minimally_non_golod and not row["cycle"]:
        row["flags"].append("mng_flag_non_cycle")
    return row


def run_census(
    max_m: int, *, flag_only: bool, samples: int, seed: int, workers: int = 1, min_m: int = 1
) -> list[dict]:
    bound, setting = (
        (settings.CENSUS_FLAG_MAX_M, "ZK_CENSUS_FLAG_MAX_M")
        if flag_only
        else (settings.CENSUS_MAX_M, "ZK_CENSUS_MAX_M")
    )
    require_bound(max_m, bound, what="census max_m", setting=setting)
    rows: list[dict] = []
    for m in range(min_m, max_m + 1):
        started = time.monotonic()
        mode, candidates = census_candidates(
            m,
            flag_only=flag_only,
            limit=settings.CENSUS_EXHAUSTIVE_LIMIT,
            samples=samples,
            seed=seed,
        )
        rows.extend(ordered_map(census_row, [(K, flag_only) for K in candidates], workers=workers))
        print(
            f"m={m}: {len(candidates)} complexes ({mode}) in {time.monotonic() - started:.1f}s",
            file=sys.stderr,
        )
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description="Census of small simplicial complexes (JSON lines).")
    parser.add_argument("--max-m", type=positive_int, required=True, help="Largest vertex count to enumerate")
    parser.add_argument("--min-m", type=positive_int, default=1, help="Smallest vertex count (default 1)")
    parser.add_argument("--flag-only", action="store_true", help="Only clique complexes of graphs")
    parser.add_argument(
        "--samples",
        type=non_negative_int,
        default=500,
        help="Sample size per m when the labelled candidates exceed ZK_CENSUS_EXHAUSTIVE_LIMIT",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=positive_int, default=settings.WORKERS)
    parser.add_argument("--output", default=None, help="Write JSON lines here instead of stdout")
    args = parser.parse_args()

    rows = run_census(
        args.max_m,
        flag_only=args.flag_only,
        samples=args.samples,
        seed=args.seed,
        workers=args.workers,
        min_m=args.min_m,
    )
    text = "".join(dump_json(row) + "\n" for row in rows)
    if args.output:
        out_path = Path(args.output)
        tmp_path = out_path.with_suffix(out_path.suffix + ".tmp")
        tmp_path.write_text(text, encoding="utf-8")
        tmp_path.replace(out_path)
    else:
        sys.stdout.write(text)

    flagged = [row for row in rows if row["flags"]]
    for row in flagged:
        print(f"FLAG: {','.join(row['flags'])}: {row['complex']}", file=sys.stderr)
    print(f"OK: census wrote {len(rows)} rows ({len(flagged)} flagged).", file=sys.stderr)
    return 0


if __name__ == "__main__":
    run_command(main)
