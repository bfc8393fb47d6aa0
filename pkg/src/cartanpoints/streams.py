"""Rank-2 and rank-3 Diophantine surfaces and their solution generators.

The rank-2 system  x1*y1 = x2^a + 1,  x2*y2 = x1^b + 1  collapses, after
eliminating x1, to the surface

    x * y^b * z = (x^a + 1)^b + y^b        (x, y, z) = (x2, y1, y2),

reported here as triples (x2, y1^b, y2) solving  X*Y*Z = (X^a+1)^b + Y.
For a*b <= 3 the system is finite type and the surface has finitely many
positive solutions; for a*b >= 4 a mutation recurrence from the seed (1, 1)
produces an infinite strictly growing family, every term integral.

The rank-3 system collapses likewise to  x*y*z*w = (x^a+1)^b*y + (x^c+1)^d*z
with (x, y, z, w) = (x2, y3^d, y1^b, y2).  Unlike rank 2, this equation has
positive solutions that do not come from system points (nothing forces
z^(1/b) to divide x^a + 1), so the brute-force counter reports both the raw
solution count and the count of solutions that lift back to the system.

Mutation terms grow doubly fast for large exponents (tens of millions of
digits within thirty terms), so sequence arithmetic runs on gmpy2 integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import gmpy2
from gmpy2 import mpz

from .cartan import GeneralizedCartanMatrix, validate_gcm
from .frieze import FriezeError, FriezePoint, knit_next, make_point, solve_y

__all__ = [
    "Rank2Params",
    "Rank3Params",
    "StreamItem",
    "Surface3Count",
    "rank2_matrix",
    "rank3_matrix",
    "to_surface2",
    "to_surface3",
    "stream2_terms",
    "stream2",
    "stream3",
    "brute_force_surface2",
    "brute_force_surface3",
]


@dataclass(frozen=True)
class Rank2Params:
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.b < 1:
            raise ValueError("parameters must be positive")


@dataclass(frozen=True)
class Rank3Params:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c, self.d) < 1:
            raise ValueError("parameters must be positive")


def rank2_matrix(a: int, b: int) -> GeneralizedCartanMatrix:
    """Matrix generating  x1 y1 = x2^a + 1,  x2 y2 = x1^b + 1."""
    Rank2Params(a, b)
    return validate_gcm([[2, -b], [-a, 2]])


def rank3_matrix(a: int, b: int, c: int, d: int) -> GeneralizedCartanMatrix:
    """Matrix generating  x1 y1 = x2^a + 1,  x2 y2 = x1^b + x3^d,  x3 y3 = x2^c + 1."""
    Rank3Params(a, b, c, d)
    return validate_gcm([[2, -b, 0], [-a, 2, -c], [0, -d, 2]])


def to_surface2(p: FriezePoint, a: int, b: int):
    """(x, y, z) = (x2, y1^b, y2); checks x*y*z = (x^a+1)^b + y exactly."""
    if p.matrix != rank2_matrix(a, b):
        raise FriezeError("point does not belong to the (a, b) system")
    x, y, z = p.x[1], p.y[0] ** b, p.y[1]
    if x * y * z != (x**a + 1) ** b + y:
        raise FriezeError("surface residue nonzero; orientation bug")
    return (x, y, z)


def to_surface3(p: FriezePoint, a: int, b: int, c: int, d: int):
    """(x, y, z, w) = (x2, y3^d, y1^b, y2) on x*y*z*w = (x^a+1)^b y + (x^c+1)^d z."""
    if p.matrix != rank3_matrix(a, b, c, d):
        raise FriezeError("point does not belong to the (a, b, c, d) system")
    x, y, z, w = p.x[1], p.y[2] ** d, p.y[0] ** b, p.y[1]
    if x * y * z * w != (x**a + 1) ** b * y + (x**c + 1) ** d * z:
        raise FriezeError("surface residue nonzero; orientation bug")
    return (x, y, z, w)


# ---------------------------------------------------------------------------
# Mutation streams


def stream2_terms(a: int, b: int, count: int) -> list:
    """First `count` terms of the mutation sequence s1 = s2 = 1,
    s_{t+2} = (s_{t+1}^e + 1) / s_t with e = a at odd steps t, b at even.

    Every division is exact (Laurent integrality); a remainder raises.
    """
    Rank2Params(a, b)
    s = [mpz(1), mpz(1)]
    t = 1
    while len(s) < count:
        e = a if t % 2 == 1 else b
        q, r = divmod(s[-1] ** e + 1, s[-2])
        if r:
            raise FriezeError(f"mutation step {t} not integral; exponent phase bug")
        s.append(q)
        t += 1
    return s


@dataclass(frozen=True)
class StreamItem:
    index: int  # 1-based position k of the pair (s_k, s_{k+1})
    point: FriezePoint
    triple: tuple
    phase: str = "a-first"


def stream2(a: int, b: int, count: int) -> Iterator[StreamItem]:
    """Yield `count` system points (s_k, s_{k+1}) for odd k with their triples.

    Consecutive terms form a point exactly when the step producing the next
    term used exponent a and the previous step used b, i.e. at odd k; the
    y-vector is then (s_{k+2}, s_{k-1}), recomputed here by division.
    """
    Rank2Params(a, b)
    C = rank2_matrix(a, b)
    s = [mpz(1), mpz(1)]
    t = 1
    emitted = 0
    k = 1
    while emitted < count:
        while len(s) < k + 1:
            e = a if t % 2 == 1 else b
            q, r = divmod(s[-1] ** e + 1, s[-2])
            if r:
                raise FriezeError(f"mutation step {t} not integral; exponent phase bug")
            s.append(q)
            t += 1
        x = (s[k - 1], s[k])
        y = solve_y(C, x)
        if y is None:
            raise FriezeError(f"stream pair at k={k} is not a point; phase bug")
        p = make_point(C, x, y)
        yield StreamItem(k, p, to_surface2(p, a, b))
        emitted += 1
        k += 2


def stream3(a: int, b: int, c: int, d: int, count: int) -> list[FriezePoint]:
    """`count` distinct rank-3 points from the translation walk off (1,1,1).

    Demonstrates infinitude for a*b*c*d >= 3; for finite parameters the walk
    cycles and a request beyond the orbit size raises.
    """
    C = rank3_matrix(a, b, c, d)
    x = (mpz(1), mpz(1), mpz(1))
    seen = set()
    out = []
    while len(out) < count:
        y = solve_y(C, x)
        if y is None:
            raise FriezeError("translation walk left the variety; knitting bug")
        p = make_point(C, x, y)
        key = tuple(int(v) for v in x)
        if key in seen:
            raise FriezeError(
                f"walk cycled after {len(out)} points; parameters are finite type"
            )
        seen.add(key)
        out.append(p)
        z = knit_next(C, x)
        if z is None:
            raise FriezeError("knitting failed on a valid point")
        x = z
    return out


# ---------------------------------------------------------------------------
# Brute-force surface counters (independent oracles)


def _divisors(t) -> list:
    t = int(t)
    out = []
    d = 1
    while d * d <= t:
        if t % d == 0:
            out.append(d)
            if d * d != t:
                out.append(t // d)
        d += 1
    out.sort()
    return out


# Solutions satisfy y = v^b with v | x^a + 1, and x | u^b + 1 for the
# cofactor u = (x^a+1)/v, because v^b*(x*z - 1) = (x^a+1)^b.  Writing the
# divisor pair as (m*x - 1, l*x - 1) and eliminating, positivity pins x:
# ab = 1 gives x <= 3, ab = 2 gives x <= 5, ab = 3 gives x <= 14 (attained).
_X_CAP2 = 60
_X_MARGIN2 = 30


def brute_force_surface2(a: int, b: int) -> int:
    """Exact count of positive solutions of x*y^b*z = (x^a+1)^b + y^b.

    Requires a*b <= 3 (finite range).  Enumeration is complete per x: v runs
    over all divisors of x^a + 1 and z is forced.  The x cap is generous
    against the derived bounds above and a margin assertion guards it.
    """
    if a * b > 3:
        raise ValueError("finite counts require a*b <= 3")
    sols = set()
    for x in range(1, _X_CAP2 + 1):
        A = x**a + 1
        for v in _divisors(A):
            u = A // v
            t = u**b + 1
            if t % x == 0:
                sols.add((x, v**b, t // x))
    for x, y, z in sols:
        assert x * y * z == (x**a + 1) ** b + y
    assert max(s[0] for s in sols) <= _X_MARGIN2, "x cap margin violated"
    return len(sols)


@dataclass(frozen=True)
class Surface3Count:
    """Raw and system-liftable solution counts of the rank-3 surface.

    raw counts every positive (x, y, z, w) with y, z perfect d-th/b-th
    powers satisfying the equation; liftable additionally requires
    z^(1/b) | x^a + 1 and y^(1/d) | x^c + 1, which is exactly membership in
    the image of the system points.  The two differ: e.g. (1, 4, 4, 1)
    solves x*y*z*w = (x+1)*y + (x+1)*z with no system preimage.
    """

    raw_solutions: frozenset
    liftable_solutions: frozenset

    @property
    def raw(self) -> int:
        return len(self.raw_solutions)

    @property
    def liftable(self) -> int:
        return len(self.liftable_solutions)


def _perfect_root(n, e):
    if e == 1:
        return n
    root, exact = gmpy2.iroot(mpz(n), e)
    return int(root) if exact else None


# For w >= 1 the equation forces min(y, z) <= 2*max(A, C)/x (polynomial in
# x), and y | C*z, z | A*y splits as y = g*y', z = g*z' with y' | C, z' | A;
# all observed solutions have x <= 14.  The cap is generous with a margin
# assertion.
_X_CAP3 = 60
_X_MARGIN3 = 30


def brute_force_surface3(a: int, b: int, c: int, d: int) -> Surface3Count:
    """Count positive solutions of x*y*z*w = (x^a+1)^b y + (x^c+1)^d z
    with y a d-th power and z a b-th power.

    Requires a*b*c*d <= 2.  Complete per x: divisibility splits y = g*y',
    z = g*z' with y' | (x^c+1)^d and z' | (x^a+1)^b, and then g*w is forced,
    so enumerating divisor pairs and factorizations of the quotient hits
    every solution.
    """
    if a * b * c * d > 2:
        raise ValueError("finite counts require a*b*c*d <= 2")
    raw = set()
    liftable = set()
    for x in range(1, _X_CAP3 + 1):
        A = (x**a + 1) ** b
        Cc = (x**c + 1) ** d
        for yp in _divisors(Cc):
            for zp in _divisors(A):
                num = A * yp + Cc * zp
                den = x * yp * zp
                if num % den:
                    continue
                Q = num // den
                for g in _divisors(Q):
                    w = Q // g
                    Y, Z = g * yp, g * zp
                    y0 = _perfect_root(Y, d)
                    z0 = _perfect_root(Z, b)
                    if y0 is None or z0 is None:
                        continue
                    sol = (x, Y, Z, w)
                    assert x * Y * Z * w == A * Y + Cc * Z
                    raw.add(sol)
                    if (x**a + 1) % z0 == 0 and (x**c + 1) % y0 == 0:
                        liftable.add(sol)
    assert max(s[0] for s in raw) <= _X_MARGIN3, "x cap margin violated"
    return Surface3Count(frozenset(raw), frozenset(liftable))
