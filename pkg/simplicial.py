"""
Finite simplicial complexes on [m] = {1, ..., m}, stored by their maximal faces.

Vertex sets are plain ints used as bitmasks: vertex i is bit i-1. Every list
this module returns is in canonical order (ascending bitmask unless stated).
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import networkx as nx
from sympy import Poly, symbols

import settings
from errors import HypothesisRefused, SizeBoundExceeded

VertexSet = int


class GhostVertexWarning(UserWarning):
    """A vertex of [m] appeared in no input face and was promoted to a singleton face."""


def bit(vertex: int) -> VertexSet:
    return 1 << (vertex - 1)


def full_mask(m: int) -> VertexSet:
    return (1 << m) - 1


def vertex_set(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        if v < 1:
            raise ValueError(f"vertex labels start at 1, got {v}")
        mask |= bit(v)
    return mask


def members(mask: VertexSet) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def size(mask: VertexSet) -> int:
    return mask.bit_count()


def lowest_vertex(mask: VertexSet) -> int:
    return (mask & -mask).bit_length()


def highest_vertex(mask: VertexSet) -> int:
    return mask.bit_length()


def subsets_of(mask: VertexSet) -> Iterable[VertexSet]:
    """All subsets of mask, the empty set included, in ascending order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def format_vertex_set(mask: VertexSet) -> str:
    return "{" + ",".join(str(v) for v in members(mask)) + "}"


def _maximal_only(masks: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    kept: list[VertexSet] = []
    for mask in sorted(set(masks), key=lambda s: (-size(s), s)):
        if not any(mask & other == mask for other in kept):
            kept.append(mask)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class SimplicialComplex:
    m: int
    maximal_faces: tuple[VertexSet, ...]
    # per-instance memo; recomputed redundantly under races, never inconsistent
    _memo: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def is_void(self) -> bool:
        """The complex with no vertices, only the empty face (result of restricting to I = ∅)."""
        return self.m == 0

    @cached_property
    def dim(self) -> int:
        if not self.maximal_faces:
            return -1
        return max(size(f) for f in self.maximal_faces) - 1

    @cached_property
    def faces(self) -> tuple[VertexSet, ...]:
        seen: set[VertexSet] = {0}
        for facet in self.maximal_faces:
            seen.update(subsets_of(facet))
        return tuple(sorted(seen))

    def faces_of_dim(self, d: int) -> tuple[VertexSet, ...]:
        by_dim = self._memo.get("faces_by_dim")
        if by_dim is None:
            by_dim = {}
            for face in self.faces:
                by_dim.setdefault(size(face) - 1, []).append(face)
            by_dim = {k: tuple(sorted(v, key=members)) for k, v in by_dim.items()}
            self._memo["faces_by_dim"] = by_dim
        return by_dim.get(d, ())

    def facets(self) -> list[list[int]]:
        return [list(members(f)) for f in self.maximal_faces]

    def canonical_key(self) -> str:
        return f"m={self.m};" + ";".join(",".join(map(str, f)) for f in self.facets())

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_key().encode("utf-8")).hexdigest()[:16]

    def __str__(self) -> str:
        return f"K(m={self.m}; " + " ".join(format_vertex_set(f) for f in self.maximal_faces) + ")"


VOID = SimplicialComplex(0, ())


def _check_width(m: int) -> None:
    if m > settings.MASK_WIDTH:
        raise SizeBoundExceeded(
            f"m = {m} exceeds the {settings.MASK_WIDTH}-bit vertex mask (set ZK_WIDE_MASKS=1)"
        )


def _canonical(m: int, masks: Iterable[VertexSet]) -> SimplicialComplex:
    singletons = [bit(v) for v in range(1, m + 1)]
    return SimplicialComplex(m, _maximal_only(list(masks) + singletons))


def from_maximal_faces(m: int, faces: Iterable[VertexSet]) -> SimplicialComplex:
    if m < 1:
        raise ValueError(f"a complex needs at least one vertex, got m = {m}")
    _check_width(m)
    faces = list(faces)
    covered = 0
    for face in faces:
        if face < 0 or face & ~full_mask(m):
            raise ValueError(
                f"vertex label out of range 1..{m} in face {format_vertex_set(face)}"
            )
        covered |= face
    ghosts = full_mask(m) & ~covered
    if ghosts:
        warnings.warn(
            f"vertices {format_vertex_set(ghosts)} are in no face; added as singletons",
            GhostVertexWarning,
            stacklevel=2,
        )
    return _canonical(m, faces)


def from_facet_lists(m: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    masks = []
    for facet in facets:
        labels = list(facet)
        bad = [v for v in labels if not 1 <= v <= m]
        if bad:
            raise ValueError(f"vertex label out of range 1..{m}: {bad}")
        masks.append(vertex_set(labels))
    return from_maximal_faces(m, masks)


def is_face(K: SimplicialComplex, I: VertexSet) -> bool:
    if I == 0:
        return True
    return any(I & facet == I for facet in K.maximal_faces)


def compress_mask(mask: VertexSet, vertices: tuple[int, ...]) -> VertexSet:
    """Relabel mask onto [len(vertices)], vertices[k] becoming k+1."""
    out = 0
    for k, v in enumerate(vertices):
        if mask & bit(v):
            out |= 1 << k
    return out


def expand_mask(mask: VertexSet, labels: tuple[int, ...]) -> VertexSet:
    return vertex_set(labels[k - 1] for k in members(mask))


def full_subcomplex(K: SimplicialComplex, I: VertexSet) -> tuple[SimplicialComplex, tuple[int, ...]]:
    """
    Restriction K_I relabelled onto [|I|] in ascending order.

    Returns (K_I, labels) where labels[k] is the original label of new vertex k+1.
    """
    if I == 0:
        return VOID, ()
    vertices = members(I)
    restricted = {compress_mask(facet & I, vertices) for facet in K.maximal_faces if facet & I}
    return _canonical(len(vertices), restricted), vertices


def vertex_deletion(K: SimplicialComplex, i: int) -> SimplicialComplex:
    if not 1 <= i <= K.m:
        raise ValueError(f"vertex {i} out of range 1..{K.m}")
    return full_subcomplex(K, full_mask(K.m) & ~bit(i))[0]


@dataclass(frozen=True)
class Graph:
    m: int
    # adjacency[v-1] is the neighbour mask of vertex v
    adjacency: tuple[VertexSet, ...]

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i - 1] & bit(j))

    def neighbours(self, v: int) -> VertexSet:
        return self.adjacency[v - 1]

    def edges(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(1, self.m + 1)
            for j in members(self.adjacency[i - 1])
            if i < j
        ]

    def induced(self, I: VertexSet) -> "Graph":
        """Subgraph induced on I, keeping the original labels (vertices outside I become isolated)."""
        return Graph(
            self.m,
            tuple((adj & I) if (bit(v) & I) else 0 for v, adj in enumerate(self.adjacency, 1)),
        )

    def to_networkx(self, within: VertexSet | None = None) -> nx.Graph:
        keep = full_mask(self.m) if within is None else within
        G = nx.Graph()
        G.add_nodes_from(members(keep))
        G.add_edges_from((i, j) for i, j in self.edges() if bit(i) & keep and bit(j) & keep)
        return G


def graph_from_edges(m: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if m < 1:
        raise ValueError(f"a graph needs at least one vertex, got m = {m}")
    adjacency = [0] * m
    for i, j in edges:
        if i == j:
            raise ValueError(f"loop at vertex {i}")
        if not (1 <= i <= m and 1 <= j <= m):
            raise ValueError(f"edge ({i}, {j}) out of range 1..{m}")
        adjacency[i - 1] |= bit(j)
        adjacency[j - 1] |= bit(i)
    return Graph(m, tuple(adjacency))


def one_skeleton(K: SimplicialComplex) -> Graph:
    cached = K._memo.get("one_skeleton")
    if cached is not None:
        return cached
    adjacency = [0] * K.m
    for facet in K.maximal_faces:
        for v in members(facet):
            adjacency[v - 1] |= facet & ~bit(v)
    graph = Graph(K.m, tuple(adjacency))
    K._memo["one_skeleton"] = graph
    return graph


def missing_faces(K: SimplicialComplex) -> list[VertexSet]:
    cached = K._memo.get("missing_faces")
    if cached is not None:
        return list(cached)
    found: set[VertexSet] = set()
    everything = full_mask(K.m)
    for face in K.faces:
        rest = everything & ~face
        while rest:
            low = rest & -rest
            rest ^= low
            candidate = face | low
            if candidate in found or is_face(K, candidate):
                continue
            if all(is_face(K, candidate & ~bit(v)) for v in members(candidate)):
                found.add(candidate)
    result = tuple(sorted(found))
    K._memo["missing_faces"] = result
    return list(result)


def is_flag(K: SimplicialComplex) -> bool:
    cached = K._memo.get("is_flag")
    if cached is None:
        cached = all(size(mf) == 2 for mf in missing_faces(K))
        K._memo["is_flag"] = cached
    return cached


def require_flag(K: SimplicialComplex, *, operation: str) -> None:
    if not is_flag(K):
        raise HypothesisRefused(
            f"{operation} requires a flag complex (every missing face has two vertices); "
            f"{K} has missing faces "
            + ", ".join(format_vertex_set(mf) for mf in missing_faces(K) if size(mf) > 2)
        )


def clique_complex(g: Graph) -> SimplicialComplex:
    cliques = [vertex_set(c) for c in nx.find_cliques(g.to_networkx())]
    return _canonical(g.m, cliques)


@dataclass(frozen=True)
class FHVector:
    f: tuple[int, ...]
    h: tuple[int, ...]
    n: int


_t = symbols("t")


def fh_vector(K: SimplicialComplex) -> FHVector:
    n = K.dim + 1
    counts = [0] * n
    for face in K.faces:
        if face:
            counts[size(face) - 1] += 1
    # h_0 t^n + ... + h_n = (t-1)^n + f_0 (t-1)^{n-1} + ... + f_{n-1}
    identity = (_t - 1) ** n + sum(f_i * (_t - 1) ** (n - 1 - i) for i, f_i in enumerate(counts))
    h = tuple(int(c) for c in Poly(identity, _t).all_coeffs())
    return FHVector(f=tuple(counts), h=h, n=n)


def dehn_sommerville_check(K: SimplicialComplex) -> bool:
    h = fh_vector(K).h
    return h == h[::-1]


def connected_components(K: SimplicialComplex, within: VertexSet | None = None) -> list[VertexSet]:
    """
    Vertex sets of the connected components of K (or of K_within, in original labels),
    sorted by smallest member.
    """
    G = one_skeleton(K).to_networkx(within)
    components = [vertex_set(c) for c in nx.connected_components(G)]
    return sorted(components, key=lowest_vertex)


def is_cycle(K: SimplicialComplex) -> bool:
    """True iff K is the boundary of an m-gon, m >= 4."""
    if K.m < 4 or K.dim != 1 or not is_flag(K):
        return False
    graph = one_skeleton(K)
    if any(size(adj) != 2 for adj in graph.adjacency):
        return False
    return len(connected_components(K)) == 1


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    if K1.is_void:
        return K2
    if K2.is_void:
        return K1
    m = K1.m + K2.m
    _check_width(m)
    faces = [f1 | (f2 << K1.m) for f1 in K1.maximal_faces for f2 in K2.maximal_faces]
    return _canonical(m, faces)
