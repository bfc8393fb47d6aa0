"""Explicit height bounds for positive integral points.

Let inv = C^(-1) (exact rationals; entrywise positive for finite types).
Row sums of inv give log2 of the per-row orbit-minimum bounds b_i: some
translate of every point has x_i <= b_i.  Raising b_i to the frieze period P
bounds the product of a whole grid row, hence every single entry.

The products of neighbor entries in a grid row floor at 2^(sum of couplings)
when all entries are >= 2; feeding sharper per-row floors B_j through the
inverse gives the refined per-row constants used for the E8 search window.

Integer outputs (b_floor, entry caps, table values) are computed in exact
integer arithmetic.  The real-valued constants c_i are evaluated with mpmath
at high precision and nudged upward so the emitted value is always an upper
bound (caps must never be tight by accident).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from mpmath import mp, mpf

from .cartan import (
    DynkinType,
    GcmError,
    GeneralizedCartanMatrix,
    catalog_type_of,
    dynkin_matrix,
    inverse_exact,
    is_finite_type,
)
from .closed_forms import period as type_period

__all__ = [
    "BoundProfile",
    "SearchBox",
    "TableBound",
    "floor_pow2",
    "ceil_pow2",
    "profile",
    "refined_c",
    "E8_NEIGHBOR_FLOORS",
    "e8_chain_caps",
    "e8_refined_fractional_caps",
    "table_N",
    "representative_cap",
    "SHARP_N",
]

_PREC = 256
_UP_SLACK_BITS = 180  # 2^-180 added to exponents before the final power


def floor_pow2(q: Fraction) -> int:
    """Exact floor of 2^q for nonnegative rational q (integer arithmetic only)."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("negative exponent")
    p, r = q.numerator, q.denominator
    if r == 1:
        return 1 << p
    root, _ = gmpy2.iroot(gmpy2.mpz(1) << p, r)
    return int(root)


def ceil_pow2(q: Fraction) -> int:
    q = Fraction(q)
    f = floor_pow2(q)
    if gmpy2.mpz(f) ** q.denominator == gmpy2.mpz(1) << q.numerator:
        return f
    return f + 1


def _log2_ratio(num: int, den: int) -> mpf:
    return (mp.log(mpf(num)) - mp.log(mpf(den))) / mp.log(mpf(2))


def _pow2_up(exponent: mpf) -> mpf:
    return mp.power(mpf(2), exponent + mpf(2) ** (-_UP_SLACK_BITS))


@dataclass(frozen=True)
class SearchBox:
    """Coordinate box 1 <= lower <= value <= upper_i for a search."""

    lower: int
    upper: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.lower < 1 or any(u < self.lower for u in self.upper):
            raise ValueError("degenerate search box")


@dataclass(frozen=True)
class BoundProfile:
    matrix: GeneralizedCartanMatrix
    inverse: tuple[tuple[Fraction, ...], ...]
    log2_b: tuple[Fraction, ...]
    b_floor: tuple[int, ...]
    c_values: tuple  # mpf per row, upper-rounded
    entry_caps: tuple[int, ...]
    period: int

    def b_ceil(self, i: int) -> int:
        return ceil_pow2(self.log2_b[i])


@lru_cache(maxsize=None)
def profile(C: GeneralizedCartanMatrix, P: int) -> BoundProfile:
    """All row bounds of a finite-type matrix for frieze period P."""
    if not is_finite_type(C):
        raise GcmError("bound profile requires a finite-type matrix")
    inv = inverse_exact(C)
    n = C.n
    log2_b = tuple(sum(inv[i], Fraction(0)) for i in range(n))
    b_floor = tuple(floor_pow2(q) for q in log2_b)
    entry_caps = tuple(ceil_pow2(P * q) for q in log2_b)
    # generic neighbor-product floor for row j: 2^(-sum of couplings) >= each
    # monomial factor when all entries are >= 2
    floors = []
    for j in range(n):
        s = -sum(C.entries[j][k] for k in range(n) if k != j)
        floors.append(1 << s)
    c_values = refined_c(C, tuple(floors))
    return BoundProfile(C, inv, log2_b, b_floor, c_values, entry_caps, P)


def refined_c(C: GeneralizedCartanMatrix, B) -> tuple:
    """Per-row constants prod_j (1 + 1/B_j)^(inv[i][j]), upper-rounded.

    B_j is a proven lower bound on the neighbor monomial of grid row j; the
    resulting constant bounds the geometric mean of row i over one period,
    hence the smallest entry of row i in some translate.
    """
    B = tuple(int(b) for b in B)
    if len(B) != C.n or any(b < 1 for b in B):
        raise ValueError("need one positive floor per row")
    inv = inverse_exact(C)
    # entrywise nonnegative inverse (positive per connected component) is
    # what lets per-row floors push through the matrix without flipping signs
    if any(v < 0 for row in inv for v in row):
        raise GcmError("refined bounds require an entrywise-nonnegative inverse")
    out = []
    with mp.workprec(_PREC):
        logs = [_log2_ratio(b + 1, b) for b in B]
        for i in range(C.n):
            s = mpf(0)
            for j in range(C.n):
                q = inv[i][j]
                s += mpf(q.numerator) / mpf(q.denominator) * logs[j]
            out.append(_pow2_up(s))
    return tuple(out)


# Neighbor-monomial floors for an E8 grid with all entries >= 2: the third,
# fourth, and seventh rows then sit at >= 3 (their mesh partners force it),
# so rows coupled to them inherit floors 3, 6, or 12; row 7 keeps the
# generic two-neighbor floor 2*2 = 4.
E8_NEIGHBOR_FLOORS = (3, 3, 6, 12, 6, 6, 4, 3)


def e8_chain_caps(x4) -> dict[str, object]:
    """Per-coordinate caps in terms of x4, valid when x4, y3, y5, y6, y7 >= 2.

    Chaining the eight equations of the E8 system bounds every coordinate by
    x4 + 4.  Returns caps keyed "x1".."x8", "y1".."y8".
    """
    c = {
        "x1": x4 + 1, "y1": x4 + 1,
        "x2": x4 + 2, "y2": x4 + 2,
        "x3": x4 + 1, "y3": x4 + 2,
        "x4": x4, "y4": x4 + 3,
        "x5": x4 + 1, "y5": x4 + 2,
        "x6": x4 + 2, "y6": x4 + 3,
        "x7": x4 + 3, "y7": x4 + 4,
        "x8": x4 + 4, "y8": x4 + 4,
    }
    return c


def e8_refined_fractional_caps(x4) -> tuple:
    """Sharper caps assuming every coordinate is >= 2, one per node.

    Entries 1..8 cap (x_i and y_i) except entry 4 which caps y4 alone:
    floor((x4+1)/2), floor((x4+2)/3), floor((2*x4+1)/3), floor(x4/3)+1,
    floor((4*x4+1)/5), floor((3*x4+2)/5), floor((2*x4+3)/5), floor((x4+4)/5).
    """
    return (
        (x4 + 1) // 2,
        (x4 + 2) // 3,
        (2 * x4 + 1) // 3,
        x4 // 3 + 1,
        (4 * x4 + 1) // 5,
        (3 * x4 + 2) // 5,
        (2 * x4 + 3) // 5,
        (x4 + 4) // 5,
    )


@dataclass(frozen=True)
class TableBound:
    """Height bound N for a type: points lie in S(1, N) directly for the
    exceptional types, and in S(1, N^P) for the classical families."""

    type: DynkinType
    value: int
    applies_as_power: bool
    period: int


SHARP_N = {"G2": 14, "F4": 307, "E6": 307, "E7": 135503, "E8": 2820839}


def table_N(t: DynkinType) -> TableBound:
    n = t.rank
    key = str(t)
    if key in SHARP_N:
        return TableBound(t, SHARP_N[key], False, type_period(t))
    if t.family == "A":
        q = Fraction((n + 1) ** 2, 8)
    elif t.family == "B":
        q = Fraction((n + 1) * (n - 2), 2)
    elif t.family == "C":
        q = Fraction(n * n, 2)
    elif t.family == "D":
        q = Fraction(n * n, 2)
    else:
        raise GcmError(f"no table bound for {t}")
    return TableBound(t, ceil_pow2(q), True, type_period(t))


def representative_cap(C: GeneralizedCartanMatrix) -> int:
    """Box size N such that every translation orbit meets S(1, N).

    Catalog exceptional types use the sharp observed maxima; everything else
    uses ceil(2^(max row sum of the inverse)), the largest orbit-minimum row
    bound.
    """
    t = catalog_type_of(C)
    if t is not None and str(t) in SHARP_N:
        return SHARP_N[str(t)]
    inv = inverse_exact(C)
    mx = max(sum(row, Fraction(0)) for row in inv)
    return ceil_pow2(mx)


def bounds_report(t: DynkinType) -> dict:
    """JSON-ready bound summary for a catalog type."""
    C = dynkin_matrix(t)
    P = type_period(t)
    prof = profile(C, P)
    tb = table_N(t)
    return {
        "type": str(t),
        "period": P,
        "log2_b": [str(q) for q in prof.log2_b],
        "b_floor": [str(v) for v in prof.b_floor],
        "c": [mp.nstr(v, 24) for v in prof.c_values],
        "entry_caps": [str(v) for v in prof.entry_caps],
        "N": str(tb.value),
        "N_applies_as_power": tb.applies_as_power,
    }
