"""
Cohomology of the moment-angle complex Z_K.

Additively H^p(Z_K) = ⊕_{I ⊆ [m]} H̃^{p-|I|-1}(K_I), with the summand for I
landing in bidegree (-i, 2j), j = |I|, i = |I| - a - 1 for a class of degree a
on K_I. The empty subset contributes the unit in bidegree (0, 0).

Products of classes with disjoint supports I, J come from the inclusion
K_{I∪J} -> K_I * K_J; overlapping supports multiply to zero. koszul_betti
recomputes the bigraded table from the Koszul complex of the face ring and
shares no linear algebra with the Hochster sweep.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import GF, QQ, Poly, symbols
from sympy.polys.matrices import DomainMatrix

import settings
from errors import require_bound
from homology import (
    CoefficientRing,
    HomologyGroup,
    cohomology_basis,
    parse_ring_list,
    reduced_cohomology,
    require_field,
    smith_normal_form,
)
from simplicial import (
    SimplicialComplex,
    VertexSet,
    bit,
    compress_mask,
    expand_mask,
    format_vertex_set,
    full_mask,
    full_subcomplex,
    is_face,
    members,
    size,
    subsets_of,
)
from workers import chunked, ordered_map

t = symbols("t")


def default_fields() -> list[CoefficientRing]:
    return [R for R in parse_ring_list(settings.RINGS) if R.is_field]


def direct_sum(groups) -> HomologyGroup:
    """Sum of groups with the torsion renormalised to invariant factors (Z/2 + Z/3 -> Z/6)."""
    rank = 0
    torsion: list[int] = []
    for g in groups:
        rank += g.rank
        torsion.extend(g.torsion)
    if len(torsion) > 1:
        diagonal = [[torsion[r] if r == c else 0 for c in range(len(torsion))] for r in range(len(torsion))]
        factors, _ = smith_normal_form(diagonal)
        torsion = [d for d in factors if d > 1]
    return HomologyGroup(rank=rank, torsion=tuple(torsion))


@dataclass
class BettiTable:
    ring: CoefficientRing
    m: int
    # (i, 2j) -> group; zero groups are never stored
    entries: dict[tuple[int, int], HomologyGroup] = field(default_factory=dict)

    def get(self, i: int, two_j: int) -> HomologyGroup:
        return self.entries.get((i, two_j), HomologyGroup())

    def total(self) -> dict[int, HomologyGroup]:
        by_degree: dict[int, list[HomologyGroup]] = {}
        for (i, two_j), g in self.entries.items():
            by_degree.setdefault(two_j - i, []).append(g)
        return {p: direct_sum(gs) for p, gs in sorted(by_degree.items())}

    def total_ranks(self) -> list[int]:
        """b_0, b_1, ..., b_top (free ranks)."""
        total = self.total()
        top = max(total, default=0)
        return [total[p].rank if p in total else 0 for p in range(top + 1)]

    def field_part(self) -> dict[tuple[int, int], int]:
        return {key: g.rank for key, g in sorted(self.entries.items()) if g.rank}

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "entries": [
                {"i": i, "2j": two_j, "rank": g.rank, "torsion": list(g.torsion)}
                for (i, two_j), g in sorted(self.entries.items())
            ],
            "total": [
                {"p": p, "rank": g.rank, "torsion": list(g.torsion)} for p, g in self.total().items()
            ],
        }


def _cohomology_chunk(job) -> list[tuple[VertexSet, dict[int, HomologyGroup]]]:
    K, R, subsets = job
    out = []
    for I in subsets:
        K_I, _ = full_subcomplex(K, I)
        groups = {a: g for a, g in reduced_cohomology(K_I, R).items() if not g.is_zero}
        out.append((I, groups))
    return out


def subset_cohomology(
    K: SimplicialComplex, R: CoefficientRing, *, workers: int = 1
) -> list[tuple[VertexSet, dict[int, HomologyGroup]]]:
    """H̃^*(K_I; R) for every nonempty I in ascending bitmask order, nonzero degrees only."""
    require_bound(K.m, settings.MAX_M, what="m", setting="ZK_MAX_M")
    subsets = list(range(1, full_mask(K.m) + 1))
    jobs = [(K, R, part) for part in chunked(subsets, workers * 4 if workers > 1 else 1)]
    return [row for part in ordered_map(_cohomology_chunk, jobs, workers=workers) for row in part]


def bigraded_betti(K: SimplicialComplex, R: CoefficientRing, *, workers: int = 1) -> BettiTable:
    collected: dict[tuple[int, int], list[HomologyGroup]] = {(0, 0): [HomologyGroup(rank=1)]}
    for I, groups in subset_cohomology(K, R, workers=workers):
        j = size(I)
        for a, g in groups.items():
            collected.setdefault((j - a - 1, 2 * j), []).append(g)
    entries = {key: direct_sum(gs) for key, gs in sorted(collected.items())}
    return BettiTable(ring=R, m=K.m, entries={k: g for k, g in entries.items() if not g.is_zero})


def _exact(x):
    if isinstance(x, Fraction) and x.denominator != 1:
        return str(x)
    return int(x)


@dataclass(frozen=True)
class CohomologyClass:
    support: VertexSet
    degree: int
    field: CoefficientRing
    # cocycle on K_I, indexed like full_subcomplex(K, I)[0].faces_of_dim(degree)
    vector: tuple
    # coordinates in the canonical basis of H̃^degree(K_I)
    coordinates: tuple

    @property
    def total_degree(self) -> int:
        return size(self.support) + self.degree + 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    def __str__(self) -> str:
        coords = ",".join(str(_exact(c)) for c in self.coordinates)
        return f"{format_vertex_set(self.support)}:H^{self.degree}[{coords}]"

    def to_json(self) -> dict:
        return {
            "support": list(members(self.support)),
            "degree": self.degree,
            "total_degree": self.total_degree,
            "coordinates": [_exact(c) for c in self.coordinates],
        }


def unit_class(F: CoefficientRing) -> CohomologyClass:
    return CohomologyClass(support=0, degree=-1, field=F, vector=(), coordinates=(F.reduce(1),))


def class_from_cocycle(K: SimplicialComplex, I: VertexSet, a: int, vector, F: CoefficientRing) -> CohomologyClass:
    require_field(F)
    K_I, _ = full_subcomplex(K, I)
    n = len(K_I.faces_of_dim(a))
    if len(vector) != n:
        raise ValueError(
            f"cochain of length {len(vector)} does not match {n} {a}-simplices of K_{format_vertex_set(I)}"
        )
    vector = tuple(F.reduce(x) for x in vector)
    if a > K_I.dim:
        return CohomologyClass(I, a, F, vector, ())
    coordinates = cohomology_basis(K_I, a, F).coordinates(vector)
    return CohomologyClass(I, a, F, vector, coordinates)


def basis_classes(K: SimplicialComplex, I: VertexSet, a: int, F: CoefficientRing) -> list[CohomologyClass]:
    K_I, _ = full_subcomplex(K, I)
    if I == 0 or a < 0 or a > K_I.dim:
        return []
    basis = cohomology_basis(K_I, a, F)
    zero, one = F.reduce(0), F.reduce(1)
    return [
        CohomologyClass(
            I,
            a,
            F,
            tuple(rep),
            tuple(one if k == n else zero for k in range(len(basis))),
        )
        for n, rep in enumerate(basis.representatives)
    ]


def _zero_class(K: SimplicialComplex, U: VertexSet, c: int, F: CoefficientRing) -> CohomologyClass:
    K_U, _ = full_subcomplex(K, U)
    zero = F.reduce(0)
    if c < 0 or c > K_U.dim:
        return CohomologyClass(U, c, F, (), ())
    vector = tuple(zero for _ in K_U.faces_of_dim(c))
    return CohomologyClass(U, c, F, vector, tuple(zero for _ in range(len(cohomology_basis(K_U, c, F)))))


def _position_sign(mask: VertexSet, ambient: VertexSet) -> int:
    """(-1) raised to the sum of (position in ambient - 1) over the vertices of mask."""
    positions = {v: k for k, v in enumerate(members(ambient))}
    return -1 if sum(positions[v] for v in members(mask)) % 2 else 1


def _shuffle_sign(first: VertexSet, second: VertexSet) -> int:
    inversions = sum(1 for x in members(first) for y in members(second) if x > y)
    return -1 if inversions % 2 else 1


def _check_class(K: SimplicialComplex, c: CohomologyClass) -> None:
    if c.support & ~full_mask(K.m):
        raise ValueError(f"class support {format_vertex_set(c.support)} is not inside [{K.m}]")
    if c.support == 0:
        if c.degree != -1:
            raise ValueError("a class on the empty support has degree -1")
        return
    K_I, _ = full_subcomplex(K, c.support)
    if len(c.vector) != len(K_I.faces_of_dim(c.degree)):
        raise ValueError(
            f"class of degree {c.degree} on {format_vertex_set(c.support)} carries "
            f"{len(c.vector)} values for {len(K_I.faces_of_dim(c.degree))} simplices"
        )


def cup_product(
    K: SimplicialComplex, alpha: CohomologyClass, beta: CohomologyClass, F: CoefficientRing
) -> CohomologyClass:
    """
    Product in the Hochster ring. On a simplex ρ of K_{I∪J} with σ = ρ∩I and
    τ = ρ∩J the product cocycle is

        ε(ρ, I∪J) ε(σ, I) ε(τ, J) sgn(shuffle(I∖σ, J∖τ)) α(σ) β(τ)

    where ε(σ, I) is (-1) to the sum of the positions in I of the vertices of σ
    (counting from 0). These signs make the product graded-commutative in the
    total degree |I| + a + 1.
    """
    require_field(F)
    if alpha.field != F or beta.field != F:
        raise ValueError(f"classes over {alpha.field} and {beta.field} multiplied over {F}")
    _check_class(K, alpha)
    _check_class(K, beta)
    if alpha.support == 0:
        return _scale(beta, alpha.coordinates[0], F)
    if beta.support == 0:
        return _scale(alpha, beta.coordinates[0], F)

    I, J = alpha.support, beta.support
    U = I | J
    if I & J:
        return _zero_class(K, U, alpha.total_degree + beta.total_degree - size(U) - 1, F)

    a, b = alpha.degree, beta.degree
    c = a + b + 1
    K_U, labels_U = full_subcomplex(K, U)
    if c > K_U.dim:
        return _zero_class(K, U, c, F)
    K_I, labels_I = full_subcomplex(K, I)
    K_J, labels_J = full_subcomplex(K, J)
    index_I = {s: k for k, s in enumerate(K_I.faces_of_dim(a))}
    index_J = {s: k for k, s in enumerate(K_J.faces_of_dim(b))}

    zero = F.reduce(0)
    values = []
    for rho_local in K_U.faces_of_dim(c):
        rho = expand_mask(rho_local, labels_U)
        sigma, tau = rho & I, rho & J
        if size(sigma) != a + 1 or size(tau) != b + 1:
            values.append(zero)
            continue
        x = alpha.vector[index_I[compress_mask(sigma, labels_I)]]
        y = beta.vector[index_J[compress_mask(tau, labels_J)]]
        if x == 0 or y == 0:
            values.append(zero)
            continue
        sign = (
            _position_sign(rho, U)
            * _position_sign(sigma, I)
            * _position_sign(tau, J)
            * _shuffle_sign(I & ~sigma, J & ~tau)
        )
        values.append(F.reduce(sign * x * y))
    coordinates = cohomology_basis(K_U, c, F).coordinates(values)
    return CohomologyClass(U, c, F, tuple(values), coordinates)


def _scale(c: CohomologyClass, k, F: CoefficientRing) -> CohomologyClass:
    return CohomologyClass(
        c.support,
        c.degree,
        F,
        tuple(F.reduce(k * x) for x in c.vector),
        tuple(F.reduce(k * x) for x in c.coordinates),
    )


@dataclass
class RingCertificate:
    trivial: bool
    # (alpha, beta, alpha·beta) with a nonzero product, first in canonical order
    witness: tuple[CohomologyClass, CohomologyClass, CohomologyClass] | None = None
    witness_field: CoefficientRing | None = None
    by_field: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"trivial": self.trivial, "by_field": dict(self.by_field), "witness": None}
        if self.witness is not None:
            alpha, beta, product = self.witness
            out["witness"] = {
                "field": str(self.witness_field),
                "alpha": alpha.to_json(),
                "beta": beta.to_json(),
                "product": product.to_json(),
            }
        return out


def _witness_chunk(job):
    K, F, supports, ranks = job
    everything = full_mask(K.m)
    for I in supports:
        for J in subsets_of(everything & ~I):
            if J <= I or J not in ranks:
                continue
            target = ranks.get(I | J, {})
            for a in ranks[I]:
                for b in ranks[J]:
                    if not target.get(a + b + 1):
                        continue
                    for alpha in basis_classes(K, I, a, F):
                        for beta in basis_classes(K, J, b, F):
                            product = cup_product(K, alpha, beta, F)
                            if not product.is_zero:
                                return alpha, beta, product
    return None


def find_nonzero_product(K: SimplicialComplex, F: CoefficientRing, *, workers: int = 1):
    """First (alpha, beta, alpha·beta) with a nonzero product over disjoint supports I < J, or None."""
    require_field(F)
    ranks = {
        I: {a: g.rank for a, g in groups.items() if g.rank}
        for I, groups in subset_cohomology(K, F, workers=workers)
    }
    ranks = {I: r for I, r in ranks.items() if r}
    supports = sorted(ranks)
    jobs = [(K, F, part, ranks) for part in chunked(supports, workers * 4 if workers > 1 else 1)]
    for found in ordered_map(_witness_chunk, jobs, workers=workers):
        if found is not None:
            return found
    return None


def has_trivial_products(
    K: SimplicialComplex, fields: list[CoefficientRing] | None = None, *, workers: int = 1
) -> RingCertificate:
    fields = fields if fields is not None else default_fields()
    require_bound(K.m, settings.MAX_M, what="m", setting="ZK_MAX_M")
    certificate = RingCertificate(trivial=True)
    for F in fields:
        found = find_nonzero_product(K, F, workers=workers)
        certificate.by_field[str(F)] = found is None
        if found is not None and certificate.witness is None:
            certificate.trivial = False
            certificate.witness = found
            certificate.witness_field = F
    return certificate


def _multidegrees(K: SimplicialComplex):
    """
    Exponent vectors α with 1 <= |α| <= m whose chain space is nonzero, i.e. the
    set of coordinates with α_k >= 2 is a face.
    """
    m = K.m

    def extend(prefix: list[int], total: int, heavy: VertexSet):
        k = len(prefix)
        if k == m:
            if total:
                yield tuple(prefix)
            return
        for e in range(0, m - total + 1):
            grown = heavy | bit(k + 1) if e >= 2 else heavy
            if e >= 2 and not is_face(K, grown):
                break
            yield from extend(prefix + [e], total + e, grown)

    yield from extend([], 0, 0)


def _koszul_homology(K: SimplicialComplex, alpha: tuple[int, ...], domain) -> dict[int, int]:
    """Dimensions of H_i of the Koszul complex in multidegree α."""
    support = 0
    for k, e in enumerate(alpha):
        if e:
            support |= bit(k + 1)
    heavy = 0
    for k, e in enumerate(alpha):
        if e >= 2:
            heavy |= bit(k + 1)

    # u_A v^{α - 1_A} survives in k[K] iff the support of α - 1_A is a face
    chains: dict[int, list[VertexSet]] = {}
    for A in subsets_of(support):
        if is_face(K, (support & ~A) | heavy):
            chains.setdefault(size(A), []).append(A)
    index = {i: {A: n for n, A in enumerate(basis)} for i, basis in chains.items()}

    ranks: dict[int, int] = {}
    for i, basis in chains.items():
        targets = index.get(i - 1)
        if not targets:
            ranks[i] = 0
            continue
        rows = [[0] * len(basis) for _ in range(len(targets))]
        for col, A in enumerate(basis):
            for s, a in enumerate(members(A)):
                row = targets.get(A & ~bit(a))
                if row is not None:
                    rows[row][col] = -1 if s % 2 else 1
        matrix = DomainMatrix(
            [[domain.convert(x) for x in row] for row in rows], (len(rows), len(basis)), domain
        )
        ranks[i] = matrix.rank()
    return {
        i: len(basis) - ranks.get(i, 0) - ranks.get(i + 1, 0) for i, basis in chains.items()
    }


def koszul_betti(K: SimplicialComplex, F: CoefficientRing) -> BettiTable:
    """Bigraded Betti numbers from H[Λ[u_1..u_m] ⊗ k[K], du_i = v_i], j <= m."""
    require_field(F)
    require_bound(K.m, settings.KOSZUL_MAX_M, what="m", setting="ZK_KOSZUL_MAX_M")
    domain = QQ if F.kind == "Q" else GF(F.p)
    counts: dict[tuple[int, int], int] = {(0, 0): 1}
    for alpha in _multidegrees(K):
        two_j = 2 * sum(alpha)
        for i, dim in _koszul_homology(K, alpha, domain).items():
            if dim:
                counts[(i, two_j)] = counts.get((i, two_j), 0) + dim
    return BettiTable(
        ring=F,
        m=K.m,
        entries={key: HomologyGroup(rank=r) for key, r in sorted(counts.items())},
    )


def zk_poincare_polynomial(K: SimplicialComplex, F: CoefficientRing, *, workers: int = 1) -> tuple[Poly, Poly]:
    """(Σ_p dim H^p(Z_K; F) t^p, Σ_{p>0} dim H^p(Z_K; F) t^{p-1})."""
    require_field(F)
    ranks = bigraded_betti(K, F, workers=workers).total_ranks()
    full = Poly(sum(r * t**p for p, r in enumerate(ranks)), t, domain="ZZ")
    desuspended = Poly(sum(r * t ** (p - 1) for p, r in enumerate(ranks) if p > 0), t, domain="ZZ")
    return full, desuspended
