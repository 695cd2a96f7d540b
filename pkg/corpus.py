"""
Bundled complexes (corpus/*.txt, corpus/*.json), standard families, seeded
random complexes and the candidate streams the census walks through.
"""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

import networkx as nx

from complex_io import load_complex
from simplicial import (
    SimplicialComplex,
    VertexSet,
    bit,
    clique_complex,
    from_maximal_faces,
    full_mask,
    graph_from_edges,
    is_flag,
    size,
    subsets_of,
    vertex_set,
)

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"


def bundled() -> list[tuple[str, SimplicialComplex]]:
    """Every bundled complex as (name, K), sorted by name."""
    out = []
    for path in sorted(CORPUS_DIR.iterdir()):
        if path.suffix in {".txt", ".json"}:
            out.append((path.stem, load_complex(path)))
    return out


def load_named(name: str) -> SimplicialComplex:
    for suffix in (".txt", ".json"):
        path = CORPUS_DIR / f"{name}{suffix}"
        if path.exists():
            return load_complex(path)
    raise FileNotFoundError(f"no bundled complex named {name!r} in {CORPUS_DIR}")


def polygon(m: int) -> SimplicialComplex:
    if m < 3:
        raise ValueError(f"a polygon needs at least 3 vertices, got {m}")
    return from_maximal_faces(m, [bit(i) | bit(i % m + 1) for i in range(1, m + 1)])


def disjoint_points(m: int) -> SimplicialComplex:
    return from_maximal_faces(m, [bit(i) for i in range(1, m + 1)])


def path(m: int) -> SimplicialComplex:
    if m == 1:
        return disjoint_points(1)
    return from_maximal_faces(m, [bit(i) | bit(i + 1) for i in range(1, m)])


def simplex(m: int) -> SimplicialComplex:
    return from_maximal_faces(m, [full_mask(m)])


def simplex_boundary(m: int) -> SimplicialComplex:
    return from_maximal_faces(m, [full_mask(m) & ~bit(i) for i in range(1, m + 1)])


def random_flag_complex(m: int, q: float, seed: int) -> SimplicialComplex:
    """Clique complex of a G(m, q) graph."""
    G = nx.gnp_random_graph(m, q, seed=seed)
    return clique_complex(graph_from_edges(m, [(i + 1, j + 1) for i, j in G.edges()]))


def random_complex(m: int, seed: int, *, max_facets: int | None = None) -> SimplicialComplex:
    """Closure of a random list of faces; sizes are drawn so that edges and triangles dominate."""
    rng = random.Random(seed)
    max_facets = max_facets if max_facets is not None else 2 * m
    faces = []
    for _ in range(rng.randint(1, max_facets)):
        k = rng.choice([2, 2, 3, 3, 3, 4])
        faces.append(vertex_set(rng.sample(range(1, m + 1), min(k, m))))
    return from_maximal_faces(m, faces + [bit(v) for v in range(1, m + 1)])


def seeded_flag_family(count: int, max_m: int, *, seed: int = 0, min_m: int = 3) -> list[SimplicialComplex]:
    rng = random.Random(seed)
    family = []
    for n in range(count):
        m = rng.randint(min_m, max_m)
        q = rng.choice([0.3, 0.5, 0.7])
        family.append(random_flag_complex(m, q, seed=seed * 100003 + n))
    return family


def seeded_random_family(count: int, max_m: int, *, seed: int = 0, min_m: int = 2) -> list[SimplicialComplex]:
    rng = random.Random(seed)
    return [random_complex(rng.randint(min_m, max_m), seed * 100003 + n) for n in range(count)]


def all_flag_complexes(m: int, limit: int) -> list[SimplicialComplex] | None:
    """Clique complexes of all labelled graphs on [m], or None if there are more than limit."""
    pairs = list(combinations(range(1, m + 1), 2))
    if 2 ** len(pairs) > limit:
        return None
    out = []
    for chosen in range(2 ** len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if chosen >> k & 1]
        out.append(clique_complex(graph_from_edges(m, edges)))
    return out


def all_complexes(m: int, limit: int) -> list[SimplicialComplex] | None:
    """
    Every labelled complex on [m] with all singletons as faces: one per antichain
    of subsets of size >= 2. None if there are more than limit.
    """
    candidates = [s for s in subsets_of(full_mask(m)) if size(s) >= 2]
    found: list[list[VertexSet]] = []
    chosen: list[VertexSet] = []

    def extend(start: int) -> bool:
        found.append(list(chosen))
        if len(found) > limit:
            return False
        for k in range(start, len(candidates)):
            c = candidates[k]
            if any(c & other in (c, other) for other in chosen):
                continue
            chosen.append(c)
            ok = extend(k + 1)
            chosen.pop()
            if not ok:
                return False
        return True

    if not extend(0):
        return None
    singletons = [bit(v) for v in range(1, m + 1)]
    return [from_maximal_faces(m, faces + singletons) for faces in found]


def census_candidates(
    m: int, *, flag_only: bool, limit: int, samples: int, seed: int
) -> tuple[str, list[SimplicialComplex]]:
    """
    ('exhaustive' | 'sampled', candidates) deduplicated by canonical facet list and
    sorted. A sample also carries the bundled complexes on m vertices.
    """
    everything = all_flag_complexes(m, limit) if flag_only else all_complexes(m, limit)
    mode = "exhaustive"
    if everything is None:
        mode = "sampled"
        if flag_only:
            everything = [random_flag_complex(m, 0.5, seed=seed * 100003 + n) for n in range(samples)]
        else:
            everything = [random_complex(m, seed * 100003 + n) for n in range(samples)]
        # random draws essentially never hit torsion or sphere triangulations
        everything += [K for _, K in bundled() if K.m == m and (is_flag(K) or not flag_only)]
    unique = {K.canonical_key(): K for K in everything}
    return mode, [unique[key] for key in sorted(unique)]
