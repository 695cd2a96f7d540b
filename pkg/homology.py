"""
Reduced simplicial cohomology over Q, GF(p) or Z.

Simplices are oriented by ascending vertex label and
∂[v_0..v_d] = Σ_k (-1)^k [v_0..v̂_k..v_d]; the coboundary is the transpose.
Over a field only ranks are needed; over Z torsion comes from the Smith normal
form of the coboundary into each degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from simplicial import SimplicialComplex, VertexSet, bit, members


@dataclass(frozen=True)
class CoefficientRing:
    kind: str  # "Q" | "Z" | "Fp"
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in {"Q", "Z", "Fp"}:
            raise ValueError(f"unknown coefficient ring {self.kind!r}")
        if self.kind == "Fp" and (self.p is None or not isprime(self.p)):
            raise ValueError(f"Fp needs a prime p, got {self.p!r}")
        if self.kind != "Fp" and self.p is not None:
            raise ValueError(f"{self.kind} takes no characteristic")

    @classmethod
    def parse(cls, text: str) -> "CoefficientRing":
        raw = text.strip()
        if raw in {"Q", "QQ"}:
            return RATIONALS
        if raw in {"Z", "ZZ"}:
            return INTEGERS
        if raw.startswith("Fp:") or raw.startswith("GF"):
            digits = raw[3:] if raw.startswith("Fp:") else raw[2:].strip("()")
            try:
                return cls("Fp", int(digits))
            except ValueError as e:
                raise ValueError(f"bad coefficient ring {text!r}: {e}") from e
        raise ValueError(f"bad coefficient ring {text!r} (expected Q, Z or Fp:<p>)")

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def reduce(self, x):
        if self.kind == "Fp":
            return x % self.p
        if self.kind == "Q":
            return Fraction(x)
        return x

    def inv(self, x):
        if self.kind == "Fp":
            return pow(x, -1, self.p)
        if self.kind == "Q":
            return 1 / Fraction(x)
        raise ValueError("Z is not a field")

    def __str__(self) -> str:
        return f"Fp:{self.p}" if self.kind == "Fp" else self.kind


RATIONALS = CoefficientRing("Q")
INTEGERS = CoefficientRing("Z")


def prime_field(p: int) -> CoefficientRing:
    return CoefficientRing("Fp", p)


def parse_ring_list(text: str) -> list[CoefficientRing]:
    rings = [CoefficientRing.parse(part) for part in text.split(",") if part.strip()]
    if not rings:
        raise ValueError(f"no coefficient rings in {text!r}")
    return rings


def require_field(ring: CoefficientRing) -> None:
    if not ring.is_field:
        raise ValueError(f"{ring} is not a field; use Q or Fp:<p>")


@dataclass(frozen=True)
class HomologyGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def render(self, ring: CoefficientRing) -> str:
        symbol = "Z" if ring.kind == "Z" else ("Q" if ring.kind == "Q" else f"F{ring.p}")
        parts = []
        if self.rank:
            parts.append(symbol if self.rank == 1 else f"{symbol}^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class CochainBasis:
    dimension: int
    simplices: tuple[VertexSet, ...]
    # rows: (d+1)-simplices, columns: d-simplices
    coboundary: tuple[tuple, ...]

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "simplices": [list(members(s)) for s in self.simplices],
            "coboundary": [[int(x) for x in row] for row in self.coboundary],
        }


@lru_cache(maxsize=8192)
def _coboundary_int(K: SimplicialComplex, d: int) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of δ^d: C^d -> C^{d+1}; δ^{-1} is the augmentation column."""
    targets = K.faces_of_dim(d + 1)
    if d == -1:
        return tuple((1,) for _ in targets)
    sources = K.faces_of_dim(d)
    index = {s: k for k, s in enumerate(sources)}
    rows = []
    for tau in targets:
        row = [0] * len(sources)
        for k, v in enumerate(members(tau)):
            row[index[tau & ~bit(v)]] = -1 if k % 2 else 1
        rows.append(tuple(row))
    return tuple(rows)


def boundary_matrices(K: SimplicialComplex, R: CoefficientRing) -> list[CochainBasis]:
    out = []
    for d in range(0, K.dim + 1):
        matrix = tuple(tuple(R.reduce(x) for x in row) for row in _coboundary_int(K, d))
        out.append(CochainBasis(dimension=d, simplices=K.faces_of_dim(d), coboundary=matrix))
    return out


def smith_normal_form(M) -> tuple[tuple[int, ...], int]:
    """
    Invariant factors d_1 | d_2 | ... | d_r (all positive) and the rank r of an
    integer matrix. Pivots are chosen by minimal absolute value; arithmetic is
    exact Python integers.
    """
    A = [list(row) for row in M]
    n_rows = len(A)
    n_cols = len(A[0]) if A else 0
    factors: list[int] = []
    t = 0
    while t < min(n_rows, n_cols):
        pivot = None
        for i in range(t, n_rows):
            row = A[i]
            for j in range(t, n_cols):
                x = row[j]
                if x and (pivot is None or abs(x) < pivot[0]):
                    pivot = (abs(x), i, j)
        if pivot is None:
            break
        _, i, j = pivot
        A[t], A[i] = A[i], A[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            leftover = False
            for i in range(t + 1, n_rows):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        row_i, row_t = A[i], A[t]
                        for j in range(t, n_cols):
                            row_i[j] -= q * row_t[j]
                    leftover = leftover or A[i][t] != 0
            for j in range(t + 1, n_cols):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A[t:]:
                            row[j] -= q * row[t]
                    leftover = leftover or A[t][j] != 0
            if leftover:
                best = (abs(p), t, t)
                for i in range(t + 1, n_rows):
                    if A[i][t] and abs(A[i][t]) < best[0]:
                        best = (abs(A[i][t]), i, t)
                for j in range(t + 1, n_cols):
                    if A[t][j] and abs(A[t][j]) < best[0]:
                        best = (abs(A[t][j]), t, j)
                _, i, j = best
                if i != t:
                    A[t], A[i] = A[i], A[t]
                if j != t:
                    for row in A:
                        row[t], row[j] = row[j], row[t]
                continue
            offender = next(
                (
                    i
                    for i in range(t + 1, n_rows)
                    if any(A[i][j] % p for j in range(t + 1, n_cols))
                ),
                None,
            )
            if offender is None:
                break
            row_o, row_t = A[offender], A[t]
            for j in range(t, n_cols):
                row_t[j] += row_o[j]
        factors.append(abs(A[t][t]))
        t += 1
    return tuple(factors), len(factors)


def rref(rows, ring: CoefficientRing) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field; pivots taken left to right, first nonzero row."""
    require_field(ring)
    A = [[ring.reduce(x) for x in row] for row in rows]
    pivots: list[int] = []
    if not A:
        return A, pivots
    n_cols = len(A[0])
    r = 0
    for c in range(n_cols):
        found = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if found is None:
            continue
        A[r], A[found] = A[found], A[r]
        scale = ring.inv(A[r][c])
        A[r] = [ring.reduce(x * scale) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                factor = A[i][c]
                A[i] = [ring.reduce(a - factor * b) for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows, ring: CoefficientRing) -> int:
    if not rows or not rows[0]:
        return 0
    if ring.kind == "Z":
        return smith_normal_form(rows)[1]
    return len(rref(rows, ring)[1])


def nullspace(rows, n_cols: int, ring: CoefficientRing) -> list[list]:
    """Basis of {x : rows · x = 0}, one vector per free column in ascending order."""
    reduced, pivots = rref(rows, ring) if rows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for free in range(n_cols):
        if free in pivot_set:
            continue
        x = [ring.reduce(0)] * n_cols
        x[free] = ring.reduce(1)
        for row, p in zip(reduced, pivots):
            x[p] = ring.reduce(-row[free])
        basis.append(x)
    return basis


@lru_cache(maxsize=8192)
def reduced_cohomology(K: SimplicialComplex, R: CoefficientRing) -> dict[int, HomologyGroup]:
    """H̃^d(K; R) for d = 0..dim K, the augmentation included in degree 0."""
    if K.is_void:
        raise ValueError("the void complex has no cochains; callers use H̃^{-1}(∅) = R")
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for d in range(-1, K.dim + 1):
        matrix = _coboundary_int(K, d)
        if not matrix:
            ranks[d] = 0
            torsion[d + 1] = ()
            continue
        if R.kind == "Z":
            factors, r = smith_normal_form(matrix)
            ranks[d] = r
            torsion[d + 1] = tuple(f for f in factors if f > 1)
        else:
            ranks[d] = rank(matrix, R)
    groups = {}
    for d in range(0, K.dim + 1):
        free = len(K.faces_of_dim(d)) - ranks[d] - ranks[d - 1]
        groups[d] = HomologyGroup(rank=free, torsion=torsion.get(d, ()) if R.kind == "Z" else ())
    return groups


def reduced_euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * g.rank for d, g in reduced_cohomology(K, RATIONALS).items())


class CohomologyBasis:
    """
    Canonical cocycle representatives of H̃^d(K; F) and the coordinate map
    sending any d-cocycle to its class in that basis.
    """

    def __init__(self, K: SimplicialComplex, d: int, ring: CoefficientRing) -> None:
        require_field(ring)
        self.ring = ring
        self.dimension = d
        self.simplices = K.faces_of_dim(d)
        n = len(self.simplices)
        self._zero = ring.reduce(0)
        image = _coboundary_int(K, d - 1)
        # image of δ^{d-1} is spanned by its columns
        image_rows = [list(col) for col in zip(*image)] if image else []
        self._image, self._image_pivots = rref(image_rows, ring) if image_rows else ([], [])
        cocycles = nullspace(_coboundary_int(K, d), n, ring) if _coboundary_int(K, d) else [
            [ring.reduce(1) if k == j else self._zero for k in range(n)] for j in range(n)
        ]
        self.representatives: list[list] = []
        self._echelon: list[tuple[list, int, list]] = []
        for z in cocycles:
            remainder, combo = self._eliminate(self._normal_form(z))
            pivot = next((k for k, x in enumerate(remainder) if x != 0), None)
            if pivot is None:
                continue
            index = len(self.representatives)
            self.representatives.append(z)
            scale = ring.inv(remainder[pivot])
            combo = [ring.reduce(-c * scale) for c in combo] + [scale]
            self._echelon.append(([ring.reduce(x * scale) for x in remainder], pivot, combo))
            for entry in self._echelon[:-1]:
                entry[2].append(self._zero)
            assert len(combo) == index + 1

    def __len__(self) -> int:
        return len(self.representatives)

    def _normal_form(self, vector) -> list:
        v = [self.ring.reduce(x) for x in vector]
        for row, p in zip(self._image, self._image_pivots):
            c = v[p]
            if c != 0:
                v = [self.ring.reduce(a - c * b) for a, b in zip(v, row)]
        return v

    def _eliminate(self, v) -> tuple[list, list]:
        combo = [self._zero] * len(self.representatives)
        for row, p, row_combo in self._echelon:
            c = v[p]
            if c != 0:
                v = [self.ring.reduce(a - c * b) for a, b in zip(v, row)]
                combo = [self.ring.reduce(a + c * b) for a, b in zip(combo, row_combo)]
        return v, combo

    def coordinates(self, cocycle) -> tuple:
        remainder, combo = self._eliminate(self._normal_form(cocycle))
        if any(x != 0 for x in remainder):
            raise ValueError("vector is not a cocycle")
        return tuple(combo)

    def vector(self, coordinates) -> list:
        out = [self._zero] * len(self.simplices)
        for c, rep in zip(coordinates, self.representatives):
            if c != 0:
                out = [self.ring.reduce(a + c * b) for a, b in zip(out, rep)]
        return out


@lru_cache(maxsize=8192)
def cohomology_basis(K: SimplicialComplex, d: int, F: CoefficientRing) -> CohomologyBasis:
    return CohomologyBasis(K, d, F)


def cocycle_basis(K: SimplicialComplex, d: int, F: CoefficientRing) -> list[list]:
    require_field(F)
    if K.is_void or d < 0 or d > K.dim:
        return []
    return [list(z) for z in cohomology_basis(K, d, F).representatives]
