"""Frieze polynomial systems, points, translation, orbits, and grids.

For an n x n generalized Cartan matrix C the defining system couples pairs
(x_i, y_i) of positive integers through

    x_i * y_i = prod_{j<i} x_j^(-c_{j,i}) + prod_{j>i} x_j^(-c_{j,i}),

with empty products equal to 1.  A solution corresponds to a periodic frieze
grid; "knitting" computes the next grid column from the current one, which
induces the translation action sigma on points.

All arithmetic is operator-generic over int-like values, so coordinates may
be Python ints or gmpy2.mpz interchangeably.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from .cartan import (
    DynkinType,
    GeneralizedCartanMatrix,
    catalog_type_of,
    is_finite_type,
    matrix_from_json,
    matrix_to_json,
)
from .closed_forms import period as type_period

__all__ = [
    "FriezeError",
    "FriezePoint",
    "GlsPoint",
    "FriezeGrid",
    "monomial_split",
    "equations_render",
    "solve_y",
    "make_point",
    "knit_next",
    "translate",
    "orbit",
    "frieze_grid",
    "to_gls",
    "point_to_json",
    "point_from_json",
    "grid_to_json",
    "render_ascii",
]

# Cycle-detection guard for translation orbits of non-catalog finite matrices.
ORBIT_GUARD = 10_000


class FriezeError(ValueError):
    """Raised for invalid points, failed knitting, or misuse of the action."""


def _as_positive_vector(v, n: int, name: str):
    vec = tuple(v)
    if len(vec) != n:
        raise FriezeError(f"{name} must have length {n}")
    for c in vec:
        if c < 1:
            raise FriezeError(f"{name} has nonpositive entry {c}")
    return vec


@dataclass(frozen=True)
class FriezePoint:
    """A positive integral solution (x; y) of the frieze system of `matrix`."""

    matrix: GeneralizedCartanMatrix
    x: tuple
    y: tuple

    def key(self):
        return tuple(int(v) for v in self.x), tuple(int(v) for v in self.y)

    def coordinates(self):
        return self.x + self.y


@dataclass(frozen=True)
class GlsPoint:
    """A positive integral solution (x; z) of the companion system g_{C,i} = 0."""

    matrix: GeneralizedCartanMatrix
    x: tuple
    z: tuple


@dataclass(frozen=True)
class FriezeGrid:
    """n x P array of positive integers satisfying every mesh relation."""

    matrix: GeneralizedCartanMatrix
    period: int
    rows: tuple  # rows[i][j] = F_{i+1, j+1}

    def column(self, j: int) -> tuple:
        return tuple(self.rows[i][j] for i in range(self.matrix.n))


@lru_cache(maxsize=None)
def monomial_split(C: GeneralizedCartanMatrix, i: int):
    """(lower, upper) exponent lists for equation i (0-based).

    Each list holds (j, e) pairs meaning x_j^e; lower covers neighbors j < i,
    upper covers j > i, with e = -c_{j,i}.
    """
    lo = tuple((j, -C.entries[j][i]) for j in range(i) if C.entries[j][i] != 0)
    hi = tuple((j, -C.entries[j][i]) for j in range(i + 1, C.n) if C.entries[j][i] != 0)
    return lo, hi


def _mono_value(parts, vec):
    r = 1
    for j, e in parts:
        r *= vec[j] ** e
    return r


def _rhs(C: GeneralizedCartanMatrix, x, i: int):
    lo, hi = monomial_split(C, i)
    return _mono_value(lo, x) + _mono_value(hi, x)


def _mono_str(parts) -> str:
    if not parts:
        return "1"
    out = []
    for j, e in parts:
        out.append(f"x{j + 1}" if e == 1 else f"x{j + 1}^{e}")
    return " ".join(out)


def equations_render(C: GeneralizedCartanMatrix) -> list[str]:
    """Human-readable equations, constants last ("x1 y1 = x2 + 1")."""
    out = []
    for i in range(C.n):
        lo, hi = monomial_split(C, i)
        if not lo and not hi:
            rhs = "2"
        else:
            a, b = _mono_str(lo), _mono_str(hi)
            if a == "1":
                a, b = b, a
            rhs = f"{a} + {b}"
        out.append(f"x{i + 1} y{i + 1} = {rhs}")
    return out


def solve_y(C: GeneralizedCartanMatrix, x):
    """The y-vector completing x to a point, or None if some division fails."""
    x = _as_positive_vector(x, C.n, "x")
    y = []
    for i in range(C.n):
        t = _rhs(C, x, i)
        q, r = divmod(t, x[i])
        if r:
            return None
        y.append(q)
    return tuple(y)


def make_point(C: GeneralizedCartanMatrix, x, y) -> FriezePoint:
    """Validated point, or FriezeError naming every violated equation index."""
    x = _as_positive_vector(x, C.n, "x")
    y = _as_positive_vector(y, C.n, "y")
    bad = [i + 1 for i in range(C.n) if x[i] * y[i] != _rhs(C, x, i)]
    if bad:
        raise FriezeError(f"equations violated at indices {bad}")
    return FriezePoint(C, x, y)


def knit_next(C: GeneralizedCartanMatrix, x):
    """Next frieze column z from column x, or None at the first inexact division.

    z_i is computed in ascending i from
        x_i * z_i = prod_{j>i} x_j^(-c_{j,i}) * prod_{j<i} z_j^(-c_{j,i}) + 1,
    which is exactly the mesh relation between adjacent columns.
    """
    x = _as_positive_vector(x, C.n, "x")
    z = []
    for i in range(C.n):
        m = 1
        for j, e in monomial_split(C, i)[0]:
            m *= z[j] ** e
        for j, e in monomial_split(C, i)[1]:
            m *= x[j] ** e
        q, r = divmod(m + 1, x[i])
        if r:
            return None
        z.append(q)
    return tuple(z)


def translate(p: FriezePoint) -> FriezePoint:
    """sigma_1: knit the x-diagonal forward and re-solve for y."""
    if not is_finite_type(p.matrix):
        raise FriezeError("translation requires a finite-type matrix")
    z = knit_next(p.matrix, p.x)
    if z is None:
        raise FriezeError(f"knitting failed from x={tuple(p.x)}; point invalid?")
    y = solve_y(p.matrix, z)
    if y is None:
        raise FriezeError(f"no y-vector for translated column {z}")
    return FriezePoint(p.matrix, z, y)


def orbit(p: FriezePoint, guard: int | None = None) -> list[FriezePoint]:
    """The distinct translates [p, sigma(p), ...] in order.

    For catalog types the orbit length must divide the type period P and
    sigma^P must return to p; a violation raises.  For other finite-type
    matrices plain cycle detection is used, bounded by `guard`.
    """
    t = catalog_type_of(p.matrix)
    limit = guard
    if limit is None:
        limit = type_period(t) if t is not None else ORBIT_GUARD
    out = [p]
    cur = p
    for _ in range(limit):
        cur = translate(cur)
        if cur == p:
            if t is not None and type_period(t) % len(out) != 0:
                raise FriezeError(
                    f"orbit size {len(out)} does not divide period {type_period(t)}"
                )
            return out
        out.append(cur)
    raise FriezeError(f"translation did not cycle within {limit} steps")


def frieze_grid(p: FriezePoint, period: int | None = None) -> FriezeGrid:
    """Grid with column j equal to the x-part of sigma_{j-1}(p), j = 1..P.

    P is taken from the catalog when the matrix is a catalog type; otherwise
    it must be supplied.  All mesh relations, including the wraparound
    column, are verified before returning.
    """
    C = p.matrix
    if period is None:
        t = catalog_type_of(C)
        if t is None:
            raise FriezeError("period required for non-catalog matrices")
        period = type_period(t)
    cols = []
    cur = p
    for _ in range(period):
        cols.append(cur.x)
        cur = translate(cur)
    if cur != p:
        raise FriezeError(f"sigma^{period} is not the identity on this point")
    rows = tuple(tuple(cols[j][i] for j in range(period)) for i in range(C.n))
    grid = FriezeGrid(C, period, rows)
    _check_mesh(grid)
    return grid


def _check_mesh(grid: FriezeGrid) -> None:
    C, P = grid.matrix, grid.period
    for j in range(P):
        nxt = (j + 1) % P
        for i in range(C.n):
            lo, hi = monomial_split(C, i)
            m = 1
            for k, e in lo:
                m *= grid.rows[k][nxt] ** e
            for k, e in hi:
                m *= grid.rows[k][j] ** e
            if grid.rows[i][j] * grid.rows[i][nxt] != 1 + m:
                raise FriezeError(f"mesh relation fails at row {i + 1}, column {j + 1}")


def to_gls(p: FriezePoint) -> GlsPoint:
    """Companion-model point sharing the x-diagonal, z = next knitted column."""
    z = knit_next(p.matrix, p.x)
    if z is None:
        raise FriezeError("correspondence violation: knitting failed on a valid point")
    C = p.matrix
    for i in range(C.n):
        m = 1
        for j, e in monomial_split(C, i)[0]:
            m *= z[j] ** e
        for j, e in monomial_split(C, i)[1]:
            m *= p.x[j] ** e
        if p.x[i] * z[i] != m + 1:
            raise FriezeError(f"companion equation {i + 1} fails")
    return GlsPoint(C, p.x, z)


# ---------------------------------------------------------------------------
# Serialization and display


def point_to_json(p: FriezePoint) -> dict:
    t = catalog_type_of(p.matrix)
    return {
        "type": str(t) if t else None,
        "matrix": None if t else matrix_to_json(p.matrix),
        "x": [str(v) for v in p.x],
        "y": [str(v) for v in p.y],
    }


def point_from_json(data) -> FriezePoint:
    if isinstance(data, str):
        data = json.loads(data)
    if data.get("type"):
        from .cartan import dynkin_matrix

        C = dynkin_matrix(DynkinType.parse(data["type"]))
    else:
        C = matrix_from_json(data["matrix"])
    x = tuple(int(v) for v in data["x"])
    y = tuple(int(v) for v in data["y"])
    return make_point(C, x, y)


def grid_to_json(grid: FriezeGrid) -> dict:
    t = catalog_type_of(grid.matrix)
    return {
        "type": str(t) if t else None,
        "matrix": None if t else matrix_to_json(grid.matrix),
        "P": grid.period,
        "F": [[str(v) for v in row] for row in grid.rows],
    }


def render_ascii(grid: FriezeGrid) -> str:
    """Staggered frieze layout with bordering rows of 1s."""
    n, P = grid.matrix.n, grid.period
    w = max(len(str(v)) for row in grid.rows for v in row)
    w = max(w, 1)
    lines = []
    for r in range(n + 2):
        if r == 0 or r == n + 1:
            cells = ["1".rjust(w)] * P
        else:
            cells = [str(grid.rows[r - 1][j]).rjust(w) for j in range(P)]
        pad = " " * ((w + 1) // 2) if r % 2 == 1 else ""
        lines.append(pad + (" " * w).join(cells))
    return "\n".join(lines)
