"""Generalized Cartan matrices, finiteness classification, and the Dynkin catalog.

A generalized Cartan matrix (GCM) is an integer square matrix with 2s on the
diagonal, nonpositive off-diagonal entries, and a symmetric zero pattern.
Finite type is decided by the sign of the smallest principal minor: positive
means the matrix is equivalent to the Cartan matrix of a finite-dimensional
simple Lie algebra.

The catalog stores one fixed matrix per finite Dynkin type.  The orientation
of the non-symmetric entries (types B, C, F, G) is chosen so that the frieze
equation systems generated from the catalog matrices carry the expected
positive-point counts; see ``dynkin_matrix``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

__all__ = [
    "GcmError",
    "GeneralizedCartanMatrix",
    "DynkinType",
    "validate_gcm",
    "min_principal_minor",
    "is_finite_type",
    "dynkin_matrix",
    "catalog_type_of",
    "inverse_exact",
    "degree_one_nodes",
    "symmetrizer",
    "transpose",
    "matrix_to_json",
    "matrix_from_json",
    "ACCEPTANCE_TYPES",
]

# Exhaustive 2^n principal-minor scan; ranks beyond this are refused.
RANK_GUARD = 14


class GcmError(ValueError):
    """Raised when matrix data violates a generalized Cartan matrix invariant."""


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """Validated n x n generalized Cartan matrix with immutable entries."""

    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GcmError("rank must be >= 1")
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise GcmError("entries must form a square matrix of the declared rank")
        for i in range(self.n):
            for j in range(self.n):
                v = self.entries[i][j]
                if not isinstance(v, int):
                    raise GcmError(f"entry ({i + 1},{j + 1}) is not an integer")
                if i == j and v != 2:
                    raise GcmError(f"diagonal entry ({i + 1},{i + 1}) = {v}, expected 2")
                if i != j and v > 0:
                    raise GcmError(f"positive off-diagonal entry at ({i + 1},{j + 1})")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.entries[i][j] == 0) != (self.entries[j][i] == 0):
                    raise GcmError(
                        f"zero-pattern asymmetry between ({i + 1},{j + 1}) and ({j + 1},{i + 1})"
                    )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def neighbors(self, i: int) -> tuple[int, ...]:
        """0-based indices j != i with a nonzero coupling to node i."""
        return tuple(j for j in range(self.n) if j != i and self.entries[j][i] != 0)


def validate_gcm(entries) -> GeneralizedCartanMatrix:
    """Build a validated matrix from any square iterable of integers."""
    rows = tuple(tuple(int(v) for v in row) for row in entries)
    return GeneralizedCartanMatrix(len(rows), rows)


def transpose(C: GeneralizedCartanMatrix) -> GeneralizedCartanMatrix:
    return GeneralizedCartanMatrix(
        C.n, tuple(tuple(C.entries[j][i] for j in range(C.n)) for i in range(C.n))
    )


def _int_det(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@lru_cache(maxsize=None)
def min_principal_minor(C: GeneralizedCartanMatrix) -> int:
    """Minimum determinant over all principal submatrices.

    Every subset of rows/columns may be removed, including none (the full
    determinant) and all of them (the empty determinant, which is 1).  The
    sign of the result classifies the matrix: positive iff finite type.
    """
    if C.n > RANK_GUARD:
        raise GcmError(f"principal-minor scan limited to rank {RANK_GUARD}")
    best = 1  # empty submatrix
    idx = range(C.n)
    for size in range(1, C.n + 1):
        for kept in combinations(idx, size):
            sub = [[C.entries[i][j] for j in kept] for i in kept]
            d = _int_det(sub)
            if d < best:
                best = d
    return best


def is_finite_type(C: GeneralizedCartanMatrix) -> bool:
    return min_principal_minor(C) > 0


def degree_one_nodes(C: GeneralizedCartanMatrix) -> tuple[int, ...]:
    """1-based indices of nodes with exactly one neighbor in the Dynkin graph."""
    return tuple(i + 1 for i in range(C.n) if len(C.neighbors(i)) == 1)


def inverse_exact(C: GeneralizedCartanMatrix) -> tuple[tuple[Fraction, ...], ...]:
    """Exact rational inverse via Gauss-Jordan elimination over Fraction."""
    n = C.n
    a = [[Fraction(C.entries[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise GcmError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        inv[col] = [v / p for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
                inv[r] = [v - f * w for v, w in zip(inv[r], inv[col])]
    return tuple(tuple(row) for row in inv)


def symmetrizer(C: GeneralizedCartanMatrix) -> tuple[int, ...] | None:
    """Positive integer diagonal D with D*C symmetric, or None.

    Ratios d_j/d_i = c_{i,j}/c_{j,i} are propagated along graph edges; an
    inconsistent cycle means no symmetrizer exists.
    """
    n = C.n
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in C.neighbors(i):
                ratio = Fraction(C.entries[i][j], C.entries[j][i])
                want = d[i] * ratio
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    return None
    scale = 1
    for v in d:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    out = [int(v * scale) for v in d]
    g = 0
    for v in out:
        g = gcd(g, v)
    out = [v // g for v in out]
    if any(v <= 0 for v in out):
        return None
    for i in range(n):
        for j in range(n):
            if out[i] * C.entries[i][j] != out[j] * C.entries[j][i]:
                return None
    return tuple(out)


# ---------------------------------------------------------------------------
# Dynkin catalog


_FAMILY_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, n = self.family, self.rank
        ok = (
            fam in _FAMILY_MIN_RANK
            and n >= _FAMILY_MIN_RANK[fam]
            or fam == "E"
            and n in (6, 7, 8)
            or fam == "F"
            and n == 4
            or fam == "G"
            and n == 2
        )
        if not ok:
            raise GcmError(f"no Dynkin type {fam}{n}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        text = text.strip().upper().replace("_", "")
        if len(text) < 2 or text[0] not in "ABCDEFG" or not text[1:].isdigit():
            raise GcmError(f"cannot parse Dynkin type {text!r}")
        return cls(text[0], int(text[1:]))


def _path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, n)]


def dynkin_matrix(t: DynkinType) -> GeneralizedCartanMatrix:
    """Catalog Cartan matrix of a finite Dynkin type.

    Node labels: A/B/C are paths 1..n; D attaches nodes 1 and 2 to node 3
    with the tail 3..n; E attaches node 1 to node 4 with the tail 2..n.
    The asymmetric entry for B/C/F/G is oriented so that the generated
    equation systems (see ``frieze.equations_render``) carry the expected
    point counts: the double (triple) arrow entry sits at ``c[k][k+1]`` for
    B at k=1, F at k=2, G with weight 3 at k=1, and at ``c[k+1][k]`` for C.
    """
    fam, n = t.family, t.rank
    e: dict[tuple[int, int], int] = {}

    def join(a: int, b: int, down: int = -1, up: int = -1) -> None:
        # a < b, 1-based; `down` is c[a][b], `up` is c[b][a]
        e[(a - 1, b - 1)] = down
        e[(b - 1, a - 1)] = up

    if fam in ("A", "B", "C"):
        for a, b in _path_edges(n):
            join(a, b)
        if fam == "B":
            join(1, 2, down=-2)
        elif fam == "C":
            join(1, 2, up=-2)
    elif fam == "D":
        join(1, 3)
        join(2, 3)
        for a, b in _path_edges(n):
            if a >= 3:
                join(a, b)
    elif fam == "E":
        join(1, 4)
        for a, b in _path_edges(n):
            if a >= 2:
                join(a, b)
    elif fam == "F":
        join(1, 2)
        join(2, 3, down=-2)
        join(3, 4)
    else:  # G
        join(1, 2, down=-3)
    rows = tuple(
        tuple(2 if i == j else e.get((i, j), 0) for j in range(n)) for i in range(n)
    )
    return GeneralizedCartanMatrix(n, rows)


@lru_cache(maxsize=1)
def _catalog_index() -> dict[GeneralizedCartanMatrix, DynkinType]:
    table: dict[GeneralizedCartanMatrix, DynkinType] = {}
    types: list[DynkinType] = []
    for fam in ("A", "B", "C", "D"):
        types += [DynkinType(fam, n) for n in range(_FAMILY_MIN_RANK[fam], RANK_GUARD + 1)]
    types += [DynkinType("E", n) for n in (6, 7, 8)]
    types += [DynkinType("F", 4), DynkinType("G", 2)]
    for t in types:
        table[dynkin_matrix(t)] = t
    return table


def catalog_type_of(C: GeneralizedCartanMatrix) -> DynkinType | None:
    """The Dynkin type whose catalog matrix equals C exactly, if any."""
    return _catalog_index().get(C)


# Types small enough for complete desk-scale enumeration (E7/E8 excluded).
ACCEPTANCE_TYPES = tuple(
    DynkinType.parse(s)
    for s in (
        "A1 A2 A3 A4 A5 A6 B2 B3 B4 C2 C3 C4 D3 D4 D5 G2 F4 E6".split()
    )
)


# ---------------------------------------------------------------------------
# Serialization


def matrix_to_json(C: GeneralizedCartanMatrix) -> dict:
    return {"n": C.n, "entries": [list(row) for row in C.entries]}


def matrix_from_json(data) -> GeneralizedCartanMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    if set(data) - {"n", "entries"}:
        raise GcmError(f"unexpected matrix fields {sorted(set(data) - {'n', 'entries'})}")
    M = validate_gcm(data["entries"])
    if M.n != data["n"]:
        raise GcmError("declared rank does not match entries")
    return M
