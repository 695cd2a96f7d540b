"""
Loop homology of Z_K for flag K: the iterated-commutator generators and the
Poincaré series, all in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from sympy import Poly, expand, symbols

import settings
from errors import require_bound
from golod import WedgeProfile
from hochster import subset_cohomology, zk_poincare_polynomial
from homology import RATIONALS, CoefficientRing
from simplicial import (
    SimplicialComplex,
    VertexSet,
    bit,
    connected_components,
    fh_vector,
    full_mask,
    highest_vertex,
    lowest_vertex,
    members,
    require_flag,
    size,
    vertex_set,
)

t = symbols("t")


@dataclass(frozen=True)
class Commutator:
    """Right-normed bracket [u_{k_1},[u_{k_2},...[u_j,u_i]...]]."""

    prefix: tuple[int, ...]
    j: int
    i: int

    @property
    def degree(self) -> int:
        return len(self.prefix) + 2

    @property
    def support(self) -> VertexSet:
        return vertex_set(self.prefix) | bit(self.j) | bit(self.i)

    def sort_key(self) -> tuple[int, int, int]:
        return (self.degree, self.support, self.i)

    def __str__(self) -> str:
        word = f"[u{self.j},u{self.i}]"
        for k in reversed(self.prefix):
            word = f"[u{k},{word}]"
        return word

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "j": self.j, "i": self.i}


def enumerate_commutator_generators(K: SimplicialComplex) -> list[Commutator]:
    """
    One bracket per pair (I, C) with |I| >= 2 and C a component of K_I missing
    j = max(I); i is the smallest vertex of C and the prefix is the rest of I
    in ascending order.
    """
    require_flag(K, operation="commutator enumeration")
    require_bound(K.m, settings.MAX_M, what="m", setting="ZK_MAX_M")
    out: list[Commutator] = []
    for I in range(1, full_mask(K.m) + 1):
        if size(I) < 2:
            continue
        j = highest_vertex(I)
        for component in connected_components(K, within=I):
            if component & bit(j):
                continue
            i = lowest_vertex(component)
            out.append(Commutator(members(I & ~bit(i) & ~bit(j)), j, i))
    return sorted(out, key=Commutator.sort_key)


def group_by_degree(generators: list[Commutator]) -> dict[int, list[Commutator]]:
    grouped: dict[int, list[Commutator]] = {}
    for c in generators:
        grouped.setdefault(c.degree, []).append(c)
    return grouped


def generator_count_check(K: SimplicialComplex) -> bool:
    """Per support, the number of brackets equals dim H̃^0(K_I)."""
    per_support: dict[VertexSet, int] = {}
    for c in enumerate_commutator_generators(K):
        per_support[c.support] = per_support.get(c.support, 0) + 1
    expected = {
        I: groups[0].rank
        for I, groups in subset_cohomology(K, RATIONALS)
        if 0 in groups and groups[0].rank
    }
    return per_support == expected


def _coefficients(poly: Poly) -> tuple[int, ...]:
    """Ascending integer coefficients, trailing zeros dropped (0 -> ())."""
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _render_polynomial(coeffs: tuple[int, ...]) -> str:
    terms = []
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        if d == 0:
            body = str(abs(c))
        else:
            power = "t" if d == 1 else f"t^{d}"
            body = power if abs(c) == 1 else f"{abs(c)}{power}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    return text + "".join(f"{s}{b}" for s, b in terms[1:])


def expand_rational(numerator: tuple[int, ...], denominator: tuple[int, ...], N: int) -> tuple[int, ...]:
    """Coefficients of numerator/denominator through t^N; needs denominator[0] = ±1."""
    if not denominator or denominator[0] not in (1, -1):
        raise ValueError(f"denominator constant term must be ±1, got {denominator[:1]}")
    out: list[int] = []
    for n in range(N + 1):
        acc = numerator[n] if n < len(numerator) else 0
        for k in range(1, min(n, len(denominator) - 1) + 1):
            acc -= denominator[k] * out[n - k]
        out.append(acc * denominator[0])
    return tuple(out)


@dataclass(frozen=True)
class PoincareSeries:
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    expansion: tuple[int, ...]

    @classmethod
    def from_polys(cls, numerator: Poly, denominator: Poly, N: int) -> "PoincareSeries":
        num, den = _coefficients(numerator), _coefficients(denominator)
        return cls(num, den, expand_rational(num, den, N))

    def render(self) -> str:
        num = _render_polynomial(self.numerator)
        if self.denominator == (1,):
            return num
        return f"{num}/({_render_polynomial(self.denominator)})"

    def to_json(self) -> dict:
        return {
            "rational": self.render(),
            "numerator": list(self.numerator),
            "denominator": list(self.denominator),
            "expansion": list(self.expansion),
        }


def default_truncation(K: SimplicialComplex) -> int:
    return settings.TRUNCATION if settings.TRUNCATION is not None else 2 * K.m + 2


def loop_zk_series(K: SimplicialComplex, N: int | None = None) -> PoincareSeries:
    """1/((1+t)^{m-n} (1 - h_1 t + ... + (-1)^n h_n t^n)), n = dim K + 1."""
    require_flag(K, operation="loop-space Poincaré series")
    N = default_truncation(K) if N is None else N
    fh = fh_vector(K)
    alternating = sum((-1) ** k * h_k * t**k for k, h_k in enumerate(fh.h))
    denominator = Poly(expand((1 + t) ** (K.m - fh.n) * alternating), t, domain="ZZ")
    return PoincareSeries.from_polys(Poly(1, t, domain="ZZ"), denominator, N)


@dataclass(frozen=True)
class SeriesIdentityReport:
    holds: bool
    loop_series: PoincareSeries
    golod_series: PoincareSeries
    residual: tuple[int, ...]
    first_residual_degree: int | None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "loop_series": self.loop_series.to_json(),
            "golod_series": self.golod_series.to_json(),
            "residual": list(self.residual),
            "first_residual_degree": self.first_residual_degree,
        }


def golod_series_identity(
    K: SimplicialComplex, F: CoefficientRing = RATIONALS, N: int | None = None, *, workers: int = 1
) -> SeriesIdentityReport:
    """Compare the loop series with 1/(1 - P(Σ^{-1} H̃^*(Z_K; F))) through t^N."""
    require_flag(K, operation="Golod series identity")
    N = default_truncation(K) if N is None else N
    left = loop_zk_series(K, N)
    _, desuspended = zk_poincare_polynomial(K, F, workers=workers)
    right = PoincareSeries.from_polys(Poly(1, t, domain="ZZ"), Poly(1, t, domain="ZZ") - desuspended, N)
    residual = tuple(a - b for a, b in zip(left.expansion, right.expansion))
    first = next((d for d, r in enumerate(residual) if r), None)
    return SeriesIdentityReport(
        holds=first is None,
        loop_series=left,
        golod_series=right,
        residual=residual,
        first_residual_degree=first,
    )


def free_algebra_series(generator_degrees: list[int], N: int) -> PoincareSeries:
    """Series of the free associative algebra on generators of the given degrees."""
    bad = [d for d in generator_degrees if d < 1]
    if bad:
        raise ValueError(f"generator degrees must be >= 1, got {bad}")
    denominator = Poly(1 - sum(t**d for d in generator_degrees), t, domain="ZZ")
    return PoincareSeries.from_polys(Poly(1, t, domain="ZZ"), denominator, N)


def disjoint_points_profile(m: int) -> WedgeProfile:
    """(ℓ-1)·C(m, ℓ) spheres of dimension ℓ+1 for ℓ = 2..m."""
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    return WedgeProfile(tuple((ell + 1, (ell - 1) * comb(m, ell)) for ell in range(2, m + 1)))
