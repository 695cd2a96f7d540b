#!/usr/bin/env python3
"""
Full-size acceptance checks over the bundled corpus and seeded random
families. One OK:/FAIL: line per check; exit status 1 if any check fails.
"""

from __future__ import annotations

import argparse
import random
import time
from typing import Callable

import networkx as nx

import settings
from cli_common import dump_json, non_negative_int, positive_int, run_command
from classify_complex import classify_payload
from compute_betti import betti_payload
from compute_loops import loops_payload
from corpus import bundled, disjoint_points, load_named, polygon, seeded_flag_family, seeded_random_family
from describe_complex import info_payload
from errors import InvariantViolation
from golod import (
    connected_sum_profile,
    has_induced_cycle,
    is_chordal,
    is_golod,
    is_minimally_non_golod,
    wedge_profile,
)
from hochster import bigraded_betti, default_fields, has_trivial_products, koszul_betti
from homology import INTEGERS, RATIONALS, HomologyGroup, prime_field
from loops import (
    disjoint_points_profile,
    enumerate_commutator_generators,
    generator_count_check,
    golod_series_identity,
    group_by_degree,
    loop_zk_series,
)
from run_census import run_census
from simplicial import graph_from_edges, is_flag, one_skeleton
from workers import ordered_map


class CheckFailed(Exception):
    pass


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


PENTAGON_GENERATORS = {
    "[u3,u1]", "[u4,u1]", "[u4,u2]", "[u5,u2]", "[u5,u3]",
    "[u4,[u5,u2]]", "[u3,[u5,u2]]", "[u1,[u5,u3]]", "[u3,[u4,u1]]", "[u2,[u4,u1]]",
}


def check_rp2(args) -> str:
    total = bigraded_betti(load_named("rp2_6"), INTEGERS, workers=args.workers).total()
    expected = {
        0: HomologyGroup(rank=1),
        5: HomologyGroup(rank=10),
        6: HomologyGroup(rank=15),
        7: HomologyGroup(rank=6),
        9: HomologyGroup(torsion=(2,)),
    }
    expect(total == expected, f"got {total}")
    return "H^0=Z H^5=Z^10 H^6=Z^15 H^7=Z^6 H^9=Z/2"


def check_pentagon(args) -> str:
    K = load_named("pentagon")
    brackets = {str(c) for c in enumerate_commutator_generators(K)}
    expect(brackets == PENTAGON_GENERATORS, f"generators {sorted(brackets)}")
    series = loop_zk_series(K, 12)
    expect(series.render() == "1/(1-5t^2-5t^3+t^5)", series.render())
    expect(series.denominator == (1, 0, -5, -5, 0, 1), "denominator is not (1+t)^3(1-3t+t^2)")
    expect(bigraded_betti(K, RATIONALS).total_ranks() == [1, 0, 0, 5, 5, 0, 0, 1], "total Betti numbers")
    identity = golod_series_identity(K, RATIONALS, 12)
    expect(not identity.holds and identity.first_residual_degree == 5, f"first residual at {identity.first_residual_degree}")
    minimality = is_minimally_non_golod(K)
    report = minimality.report
    expect(report.is_flag and report.chordal is False and not report.golod_everywhere, "pentagon classification")
    expect(minimality.minimally_non_golod, "pentagon is not minimally non-Golod")
    return "10 brackets, 1/(1-5t^2-5t^3+t^5), residual at t^5"


def check_disjoint_points(args) -> str:
    for m in range(2, 7):
        profile = wedge_profile(disjoint_points(m))
        expect(profile == disjoint_points_profile(m), f"m={m}: {profile}")
    return "m=2..6"


def _koszul_case(K) -> str | None:
    for F in (RATIONALS, prime_field(2)):
        if koszul_betti(K, F).field_part() != bigraded_betti(K, F).field_part():
            return f"{K} over {F}"
    return None


def check_koszul(args) -> str:
    family = [K for _, K in bundled() if K.m <= 8]
    family += seeded_random_family(args.koszul_samples, 7, seed=args.seed)
    failures = [f for f in ordered_map(_koszul_case, family, workers=args.workers) if f]
    expect(not failures, "; ".join(failures[:3]))
    return f"{len(family)} complexes over Q and F2"


def _flag_case(job) -> str | None:
    K, N = job
    chordal = is_chordal(one_skeleton(K))
    certificate = has_trivial_products(K, [RATIONALS, prime_field(2), prime_field(3)])
    if any(trivial != chordal for trivial in certificate.by_field.values()):
        return f"{K}: chordal={chordal} products {certificate.by_field}"
    identity = golod_series_identity(K, RATIONALS, N)
    if identity.holds != chordal:
        return f"{K}: chordal={chordal} but series identity holds={identity.holds}"
    if chordal:
        profile = wedge_profile(K)
        if profile is None or profile.max_dim > K.m + 1:
            return f"{K}: bad wedge profile {profile}"
    if not generator_count_check(K):
        return f"{K}: generator counts differ from H̃^0 ranks"
    return None


def _flag_family(args):
    return seeded_flag_family(args.flag_instances, 8, seed=args.seed)


def check_flag_equivalence(args) -> str:
    family = _flag_family(args)
    jobs = [(K, 2 * K.m + 2) for K in family]
    failures = [f for f in ordered_map(_flag_case, jobs, workers=args.workers) if f]
    expect(not failures, "; ".join(failures[:3]))
    chordal = sum(1 for K in family if is_chordal(one_skeleton(K)))
    return f"{len(family)} flag complexes ({chordal} chordal)"


def check_identity_vs_golod(args) -> str:
    family = [K for _, K in bundled() if is_flag(K) and K.m <= 8]
    for K in family:
        verdict = is_golod(K, verify_products=False).golod_everywhere
        expect(golod_series_identity(K, RATIONALS).holds == verdict, str(K))
    return f"{len(family)} bundled flag complexes"


def check_generator_counts(args) -> str:
    family = [K for _, K in bundled() if is_flag(K) and K.m <= 8]
    for K in family:
        expect(generator_count_check(K), str(K))
    for m in range(2, 7):
        by_degree = group_by_degree(enumerate_commutator_generators(disjoint_points(m)))
        counts = {d: len(cs) for d, cs in by_degree.items()}
        expected = {d - 1: n for d, n in disjoint_points_profile(m).sphere_counts}
        expect(counts == expected, f"m={m}: {counts} != {expected}")
    return f"{len(family)} flag complexes, points m=2..6"


def check_polygons(args) -> str:
    for m in range(4, 9):
        minimality = is_minimally_non_golod(polygon(m))
        expect(minimality.minimally_non_golod, f"{m}-gon")
        expect(connected_sum_profile(polygon(m), minimality) is not None, f"{m}-gon connected sum")
    rows = run_census(args.census_max_m, flag_only=True, samples=args.samples, seed=args.seed, workers=args.workers)
    odd = [row for row in rows if "mng_flag_non_cycle" in row["flags"]]
    expect(not odd, f"flag minimally non-Golod non-cycles: {[row['complex'] for row in odd[:3]]}")
    mng = sum(1 for row in rows if row["minimally_non_golod"])
    return f"m-gons 4..8; flag census m<={args.census_max_m}: {len(rows)} rows, {mng} minimally non-Golod, all cycles"


def check_chordality(args) -> str:
    rng = random.Random(args.seed)
    for n in range(args.graphs):
        m = rng.randint(1, 8)
        G = nx.gnp_random_graph(m, rng.choice([0.3, 0.5, 0.7]), seed=args.seed * 7919 + n)
        g = graph_from_edges(m, [(i + 1, j + 1) for i, j in G.edges()])
        chordal = is_chordal(g)
        expect(chordal == (not has_induced_cycle(g)) == nx.is_chordal(G), f"graph {sorted(G.edges())} on {m}")
    return f"{args.graphs} graphs"


def _payloads(K, workers: int) -> str:
    fields = default_fields()
    out = [info_payload(K), betti_payload(K, [RATIONALS, INTEGERS], workers=workers)]
    out.append(classify_payload(K, fields, workers=workers))
    if is_flag(K):
        out.append(loops_payload(K, RATIONALS, None, workers=workers))
    return dump_json(out)


def check_determinism(args) -> str:
    family = [(name, K) for name, K in bundled() if K.m <= 8]
    for name, K in family:
        expect(_payloads(K, 1) == _payloads(K, 8), name)
    return f"{len(family)} bundled complexes, workers 1 vs 8"


CHECKS: list[tuple[str, Callable]] = [
    ("rp2-integral", check_rp2),
    ("pentagon", check_pentagon),
    ("disjoint-points", check_disjoint_points),
    ("koszul-oracle", check_koszul),
    ("flag-equivalence", check_flag_equivalence),
    ("identity-vs-golod", check_identity_vs_golod),
    ("generator-counts", check_generator_counts),
    ("polygons", check_polygons),
    ("chordality", check_chordality),
    ("determinism", check_determinism),
]


def main() -> int:
    parser = argparse.ArgumentParser(description="Run the corpus acceptance checks.")
    parser.add_argument("--only", action="append", choices=[name for name, _ in CHECKS], help="Run only these checks")
    parser.add_argument("--flag-instances", type=non_negative_int, default=500)
    parser.add_argument("--koszul-samples", type=non_negative_int, default=200)
    parser.add_argument("--graphs", type=non_negative_int, default=1000)
    parser.add_argument("--census-max-m", type=positive_int, default=6)
    parser.add_argument("--samples", type=non_negative_int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=positive_int, default=settings.WORKERS)
    args = parser.parse_args()

    failed = 0
    for number, (name, check) in enumerate(CHECKS, 1):
        if args.only and name not in args.only:
            continue
        started = time.monotonic()
        try:
            detail = check(args)
        except (CheckFailed, InvariantViolation) as e:
            failed += 1
            print(f"FAIL: [{number}] {name}: {e} ({time.monotonic() - started:.1f}s)")
            continue
        print(f"OK: [{number}] {name}: {detail} ({time.monotonic() - started:.1f}s)")
    return 1 if failed else 0


if __name__ == "__main__":
    run_command(main)
