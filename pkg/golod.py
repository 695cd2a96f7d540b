"""
Golod classification.

For flag K the verdict is the chordal criterion on the one-skeleton; the
product sweep is still run as a consistency assertion unless the caller opts
out. For other K the verdict is the product criterion, reported per field:
for face rings vanishing products already force vanishing Massey products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import settings
from errors import InvariantViolation, require_bound
from hochster import RingCertificate, bigraded_betti, default_fields, has_trivial_products, subset_cohomology
from homology import RATIONALS, CoefficientRing
from simplicial import (
    Graph,
    SimplicialComplex,
    VertexSet,
    bit,
    format_vertex_set,
    is_cycle,
    is_flag,
    members,
    one_skeleton,
    size,
    vertex_deletion,
    vertex_set,
)
from workers import ordered_map

CHORDAL_CRITERION = "chordal-criterion"
PRODUCT_CRITERION = "product-criterion"


@dataclass(frozen=True)
class EliminationOrder:
    order: tuple[int, ...]

    def earlier_neighbours(self, g: Graph, v: int) -> VertexSet:
        position = {u: k for k, u in enumerate(self.order)}
        return vertex_set(u for u in members(g.neighbours(v)) if position[u] < position[v])


def lex_bfs(g: Graph) -> list[int]:
    """Lexicographic breadth-first visit order; ties go to the smallest vertex."""
    labels: dict[int, list[int]] = {v: [] for v in range(1, g.m + 1)}
    order: list[int] = []
    stamp = g.m
    while labels:
        v = max(labels, key=lambda u: (labels[u], -u))
        del labels[v]
        order.append(v)
        for w in members(g.neighbours(v)):
            if w in labels:
                labels[w].append(stamp)
        stamp -= 1
    return order


def is_elimination_order(g: Graph, order: list[int] | tuple[int, ...]) -> bool:
    """Every vertex's neighbours earlier in the order form a clique."""
    if sorted(order) != list(range(1, g.m + 1)):
        return False
    seen = 0
    for v in order:
        earlier = g.neighbours(v) & seen
        for u in members(earlier):
            if earlier & ~bit(u) & ~g.neighbours(u):
                return False
        seen |= bit(v)
    return True


def perfect_elimination_ordering(g: Graph) -> EliminationOrder | None:
    order = lex_bfs(g)
    if not is_elimination_order(g, order):
        return None
    return EliminationOrder(tuple(order))


@lru_cache(maxsize=4096)
def is_chordal(g: Graph) -> bool:
    return perfect_elimination_ordering(g) is not None


def has_induced_cycle(g: Graph, min_length: int = 4) -> bool:
    """Brute force: some vertex subset of size >= min_length induces a cycle."""
    for k in range(min_length, g.m + 1):
        for vertices in combinations(range(1, g.m + 1), k):
            S = vertex_set(vertices)
            degrees = [size(g.neighbours(v) & S) for v in vertices]
            if any(d != 2 for d in degrees):
                continue
            # 2-regular; a cycle iff connected
            reached, frontier = bit(vertices[0]), bit(vertices[0])
            while frontier:
                grown = 0
                for v in members(frontier):
                    grown |= g.neighbours(v) & S
                frontier = grown & ~reached
                reached |= grown
            if reached == S:
                return True
    return False


@dataclass
class GolodReport:
    is_flag: bool
    chordal: bool | None
    products_trivial: dict[str, bool]
    golod: dict[str, bool]
    method: str
    caveat: str = ""
    certificate: RingCertificate | None = None

    @property
    def golod_everywhere(self) -> bool:
        return all(self.golod.values())

    def to_json(self) -> dict:
        return {
            "is_flag": self.is_flag,
            "chordal": self.chordal,
            "products_trivial": dict(self.products_trivial),
            "golod": dict(self.golod),
            "method": self.method,
            "caveat": self.caveat,
            "witness": self.certificate.to_json()["witness"] if self.certificate else None,
        }


def is_golod(
    K: SimplicialComplex,
    fields: list[CoefficientRing] | None = None,
    *,
    verify_products: bool = True,
    workers: int = 1,
) -> GolodReport:
    fields = fields if fields is not None else default_fields()
    if is_flag(K):
        chordal = is_chordal(one_skeleton(K))
        products: dict[str, bool] = {}
        certificate = None
        if verify_products:
            certificate = has_trivial_products(K, fields, workers=workers)
            products = certificate.by_field
            disagree = [name for name, trivial in products.items() if trivial != chordal]
            if disagree:
                raise InvariantViolation(
                    f"{K}: one-skeleton is {'chordal' if chordal else 'not chordal'} but products are "
                    f"{'nonzero' if chordal else 'trivial'} over {', '.join(disagree)}"
                )
        return GolodReport(
            is_flag=True,
            chordal=chordal,
            products_trivial=products,
            golod={str(F): chordal for F in fields},
            method=CHORDAL_CRITERION,
            certificate=certificate,
        )
    certificate = has_trivial_products(K, fields, workers=workers)
    return GolodReport(
        is_flag=False,
        chordal=None,
        products_trivial=dict(certificate.by_field),
        golod=dict(certificate.by_field),
        method=PRODUCT_CRITERION,
        caveat="verdict per field from the product criterion (Massey products of face rings vanish with the products)",
        certificate=certificate,
    )


@dataclass
class MinimalityReport:
    minimally_non_golod: bool
    report: GolodReport
    # vertex -> report for K with that vertex deleted; empty when K is Golod
    deletions: dict[int, GolodReport] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "minimally_non_golod": self.minimally_non_golod,
            "golod": self.report.to_json(),
            "deletions": {str(v): r.golod_everywhere for v, r in self.deletions.items()},
        }


def _deletion_report(job) -> GolodReport:
    K, i, fields, verify_products = job
    return is_golod(vertex_deletion(K, i), fields, verify_products=verify_products)


def is_minimally_non_golod(
    K: SimplicialComplex,
    fields: list[CoefficientRing] | None = None,
    *,
    verify_products: bool = True,
    workers: int = 1,
) -> MinimalityReport:
    fields = fields if fields is not None else default_fields()
    report = is_golod(K, fields, verify_products=verify_products, workers=workers)
    if report.golod_everywhere or K.m < 2:
        return MinimalityReport(minimally_non_golod=False, report=report)
    jobs = [(K, i, fields, verify_products) for i in range(1, K.m + 1)]
    deletions = dict(zip(range(1, K.m + 1), ordered_map(_deletion_report, jobs, workers=workers)))
    return MinimalityReport(
        minimally_non_golod=all(r.golod_everywhere for r in deletions.values()),
        report=report,
        deletions=deletions,
    )


_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class WedgeProfile:
    # sphere dimension -> number of spheres
    sphere_counts: tuple[tuple[int, int], ...]

    @property
    def max_dim(self) -> int:
        return max((d for d, _ in self.sphere_counts), default=0)

    def counts(self) -> dict[int, int]:
        return dict(self.sphere_counts)

    def render(self) -> str:
        if not self.sphere_counts:
            return "point"
        return ", ".join(f"S{str(d).translate(_SUPERSCRIPT)}×{n}" for d, n in self.sphere_counts)

    def to_json(self) -> dict:
        return {"sphere_counts": {str(d): n for d, n in self.sphere_counts}, "max_dim": self.max_dim}


def wedge_profile(K: SimplicialComplex, *, workers: int = 1) -> WedgeProfile | None:
    """
    Sphere counts of Z_K for flag K with chordal one-skeleton: Σ_{|I|=ℓ} dim H̃^0(K_I)
    spheres of dimension ℓ+1. Raises InvariantViolation if some K_I has cohomology
    above degree 0.
    """
    if not is_flag(K) or not is_chordal(one_skeleton(K)):
        return None
    counts: dict[int, int] = {}
    for I, groups in subset_cohomology(K, RATIONALS, workers=workers):
        higher = [a for a in groups if a > 0]
        if higher:
            raise InvariantViolation(
                f"{K}: chordal flag complex has H̃^{higher[0]}(K_I) != 0 for I = {format_vertex_set(I)}"
            )
        if 0 in groups:
            counts[size(I) + 1] = counts.get(size(I) + 1, 0) + groups[0].rank
    profile = WedgeProfile(tuple(sorted(counts.items())))
    if profile.max_dim > K.m + 1:
        raise InvariantViolation(f"{K}: sphere of dimension {profile.max_dim} exceeds m+1")
    return profile


@dataclass(frozen=True)
class ConnectedSumProfile:
    # (a, b) with a <= b -> number of S^a×S^b summands
    products: tuple[tuple[tuple[int, int], int], ...]
    dim: int

    def total_ranks(self) -> list[int]:
        ranks = [0] * (self.dim + 1)
        ranks[0] = ranks[self.dim] = 1
        for (a, b), n in self.products:
            ranks[a] += n
            ranks[b] += n
        return ranks

    def render(self) -> str:
        parts = []
        for (a, b), n in self.products:
            pair = f"S{str(a).translate(_SUPERSCRIPT)}×S{str(b).translate(_SUPERSCRIPT)}"
            parts.append(pair if n == 1 else f"({pair})^#{n}")
        return " # ".join(parts)

    def to_json(self) -> dict:
        return {
            "products": [{"dims": [a, b], "count": n} for (a, b), n in self.products],
            "dim": self.dim,
        }


def connected_sum_profile(
    K: SimplicialComplex, minimality: MinimalityReport | None = None, *, workers: int = 1
) -> ConnectedSumProfile | None:
    """
    Sphere-product summands of Z_K for flag minimally non-Golod K, which is then the
    boundary of an m-gon: (k-2)·C(m-2,k-1) copies of S^k×S^{m+2-k} for k = 3..m-1.
    The rational Betti numbers of Z_K must agree.
    """
    if not is_flag(K):
        return None
    if minimality is None:
        minimality = is_minimally_non_golod(K, workers=workers)
    if not minimality.minimally_non_golod:
        return None
    if not is_cycle(K):
        raise InvariantViolation(f"{K}: flag minimally non-Golod complex is not a polygon boundary")
    m = K.m
    counts: dict[tuple[int, int], int] = {}
    for k in range(3, m):
        pair = (min(k, m + 2 - k), max(k, m + 2 - k))
        counts[pair] = counts.get(pair, 0) + (k - 2) * comb(m - 2, k - 1)
    profile = ConnectedSumProfile(tuple(sorted(counts.items())), dim=m + 2)
    ranks = bigraded_betti(K, RATIONALS, workers=workers).total_ranks()
    if ranks != profile.total_ranks():
        raise InvariantViolation(f"{K}: Betti numbers {ranks} do not match {profile.render()}")
    return profile

def _glues_on_single_face(prefix: list[VertexSet], facet: VertexSet) -> bool:
    meets = [p & facet for p in prefix]
    union = 0
    for x in meets:
        union |= x
    return not prefix or union in meets


def is_gluing_order(order: list[VertexSet]) -> bool:
    return all(_glues_on_single_face(order[:k], order[k]) for k in range(len(order)))


def _search_order(facets: tuple[VertexSet, ...]) -> list[VertexSet] | None:
    chosen: list[VertexSet] = []
    used = [False] * len(facets)

    def extend() -> bool:
        if len(chosen) == len(facets):
            return True
        for k, facet in enumerate(facets):
            if used[k] or not _glues_on_single_face(chosen, facet):
                continue
            used[k] = True
            chosen.append(facet)
            if extend():
                return True
            chosen.pop()
            used[k] = False
        return False

    return list(chosen) if extend() else None


def maximal_face_order(K: SimplicialComplex) -> list[VertexSet] | None:
    """
    Order of the maximal faces in which each one meets the union of its
    predecessors in a single face (possibly empty), or None.
    """
    facets = K.maximal_faces
    if len(facets) <= 1:
        return list(facets)
    if is_flag(K):
        g = one_skeleton(K)
        peo = perfect_elimination_ordering(g)
        if peo is not None:
            maximal = set(facets)
            order: list[VertexSet] = []
            for v in peo.order:
                clique = bit(v) | peo.earlier_neighbours(g, v)
                if clique in maximal and clique not in order:
                    order.append(clique)
            if len(order) != len(facets) or not is_gluing_order(order):
                raise InvariantViolation(f"{K}: elimination-order cliques do not glue along single faces")
            return order
    require_bound(
        len(facets), settings.FACET_ORDER_CAP, what="maximal face count", setting="ZK_FACET_ORDER_CAP"
    )
    # gluing along single faces preserves flagness and chordality
    found = _search_order(facets)
    if found is not None:
        raise InvariantViolation(f"{K}: gluing order {found} outside the chordal flag case")
    return None
