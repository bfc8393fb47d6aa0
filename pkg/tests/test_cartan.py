from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cartanpoints import (
    DynkinType,
    GcmError,
    catalog_type_of,
    degree_one_nodes,
    dynkin_matrix,
    inverse_exact,
    is_finite_type,
    matrix_from_json,
    matrix_to_json,
    min_principal_minor,
    symmetrizer,
    transpose,
    validate_gcm,
)


def T(name: str):
    return DynkinType.parse(name)


# ---------------------------------------------------------------------------
# validation


def test_validate_a2():
    C = validate_gcm([[2, -1], [-1, 2]])
    assert C.n == 2 and catalog_type_of(C) == T("A2")


def test_validate_rank_one():
    assert validate_gcm([[2]]).n == 1


def test_validate_rejects_zero_pattern_asymmetry():
    with pytest.raises(GcmError, match="zero-pattern"):
        validate_gcm([[2, -1], [0, 2]])


def test_validate_rejects_bad_diagonal():
    with pytest.raises(GcmError, match="diagonal"):
        validate_gcm([[1, -1], [-1, 2]])


def test_validate_rejects_positive_off_diagonal():
    with pytest.raises(GcmError, match="positive off-diagonal"):
        validate_gcm([[2, 1], [1, 2]])


def test_validate_rejects_non_square():
    with pytest.raises(GcmError):
        validate_gcm([[2, -1]])


# ---------------------------------------------------------------------------
# principal minors and finiteness


def _minor_oracle(entries):
    """Independent scan: sympy determinants over every kept-index subset."""
    n = len(entries)
    best = 1
    for size in range(1, n + 1):
        for kept in itertools.combinations(range(n), size):
            M = sympy.Matrix([[entries[i][j] for j in kept] for i in kept])
            best = min(best, int(M.det()))
    return best


@pytest.mark.parametrize(
    "entries,want",
    [
        ([[2, -1], [-3, 2]], 1),
        ([[2, -2], [-2, 2]], 0),
        ([[2, -5], [-1, 2]], -1),
        ([[2, -4], [-1, 2]], 0),
        ([[2]], 1),  # the empty principal submatrix contributes det 1
    ],
)
def test_min_principal_minor_values(entries, want):
    C = validate_gcm(entries)
    assert min_principal_minor(C) == want
    assert _minor_oracle(entries) == want


def test_min_principal_minor_rank_guard():
    n = 15
    entries = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    with pytest.raises(GcmError, match="rank"):
        min_principal_minor(validate_gcm(entries))


@st.composite
def random_gcm(draw, max_n=5):
    n = draw(st.integers(2, max_n))
    entries = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                entries[i][j] = -draw(st.integers(1, 3))
                entries[j][i] = -draw(st.integers(1, 3))
    return entries


@given(random_gcm())
@settings(max_examples=60, deadline=None)
def test_min_principal_minor_matches_oracle(entries):
    assert min_principal_minor(validate_gcm(entries)) == _minor_oracle(entries)


@given(random_gcm(max_n=4), st.randoms())
@settings(max_examples=40, deadline=None)
def test_min_principal_minor_permutation_invariant(entries, rng):
    n = len(entries)
    perm = list(range(n))
    rng.shuffle(perm)
    permuted = [[entries[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
    assert min_principal_minor(validate_gcm(entries)) == min_principal_minor(
        validate_gcm(permuted)
    )


def test_finite_type_catalog_and_rank2():
    for name in ("A2", "B4", "D5", "E8", "F4", "G2"):
        assert is_finite_type(dynkin_matrix(T(name)))
    assert not is_finite_type(validate_gcm([[2, -2], [-2, 2]]))
    assert not is_finite_type(validate_gcm([[2, -4], [-1, 2]]))
    for a in range(1, 5):
        for b in range(1, 5):
            C = validate_gcm([[2, -a], [-b, 2]])
            assert is_finite_type(C) == (a * b <= 3)


# ---------------------------------------------------------------------------
# catalog


E8_ENTRIES = (
    (2, 0, 0, -1, 0, 0, 0, 0),
    (0, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, 0, 0, 0, 0),
    (-1, 0, -1, 2, -1, 0, 0, 0),
    (0, 0, 0, -1, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)


def test_dynkin_matrix_e8():
    assert dynkin_matrix(T("E8")).entries == E8_ENTRIES


def test_dynkin_matrix_small():
    assert dynkin_matrix(T("A1")).entries == ((2,),)
    assert dynkin_matrix(T("G2")).entries == ((2, -3), (-1, 2))
    assert dynkin_matrix(T("F4")).entries == (
        (2, -1, 0, 0),
        (-1, 2, -2, 0),
        (0, -1, 2, -1),
        (0, 0, -1, 2),
    )
    # B carries the squared variable in equation 2, C in equation 1
    assert dynkin_matrix(T("B3")).entries == ((2, -2, 0), (-1, 2, -1), (0, -1, 2))
    assert dynkin_matrix(T("C3")).entries == ((2, -1, 0), (-2, 2, -1), (0, -1, 2))
    assert dynkin_matrix(T("D3")).entries == ((2, 0, -1), (0, 2, -1), (-1, -1, 2))


def test_dynkin_type_parsing_and_ranges():
    assert str(T("e6")) == "E6"
    for bad in ("D2", "E9", "F5", "G3", "H2", "A0"):
        with pytest.raises(GcmError):
            DynkinType.parse(bad)


def test_catalog_roundtrip():
    for name in ("A1", "A7", "B2", "C5", "D4", "E6", "E7", "E8", "F4", "G2"):
        t = T(name)
        assert catalog_type_of(dynkin_matrix(t)) == t
    assert catalog_type_of(validate_gcm([[2, -4], [-1, 2]])) is None


# ---------------------------------------------------------------------------
# inverse


def test_inverse_a_family_closed_form():
    for n in range(2, 11):
        inv = inverse_exact(dynkin_matrix(T(f"A{n}")))
        for i in range(n):
            for j in range(n):
                want = Fraction(min(i + 1, j + 1)) - Fraction((i + 1) * (j + 1), n + 1)
                assert inv[i][j] == want


def test_inverse_small_cases():
    assert inverse_exact(validate_gcm([[2]])) == ((Fraction(1, 2),),)
    assert inverse_exact(dynkin_matrix(T("G2"))) == (
        (Fraction(2), Fraction(3)),
        (Fraction(1), Fraction(2)),
    )


def test_inverse_times_matrix_is_identity_and_positive():
    for name in ("A5", "B4", "C4", "D5", "E6", "E7", "E8", "F4", "G2"):
        C = dynkin_matrix(T(name))
        inv = inverse_exact(C)
        n = C.n
        for i in range(n):
            for j in range(n):
                s = sum(inv[i][k] * C.entries[k][j] for k in range(n))
                assert s == (1 if i == j else 0)
                assert inv[i][j] > 0


def test_inverse_matches_sympy_oracle():
    for name in ("B3", "F4", "E7"):
        C = dynkin_matrix(T(name))
        ours = inverse_exact(C)
        theirs = sympy.Matrix(C.entries).inv()
        for i in range(C.n):
            for j in range(C.n):
                assert ours[i][j] == Fraction(*sympy.fraction(theirs[i, j]))


def test_inverse_singular():
    with pytest.raises(GcmError, match="singular"):
        inverse_exact(validate_gcm([[2, -2], [-2, 2]]))


# ---------------------------------------------------------------------------
# graph helpers


def test_degree_one_nodes():
    assert degree_one_nodes(dynkin_matrix(T("A4"))) == (1, 4)
    assert degree_one_nodes(dynkin_matrix(T("E8"))) == (1, 2, 8)
    assert degree_one_nodes(validate_gcm([[2]])) == ()
    assert degree_one_nodes(dynkin_matrix(T("D4"))) == (1, 2, 4)


def test_symmetrizer_rank2_always_exists():
    for a in range(1, 6):
        for b in range(1, 6):
            C = validate_gcm([[2, -a], [-b, 2]])
            d = symmetrizer(C)
            assert d is not None
            for i in range(2):
                for j in range(2):
                    assert d[i] * C.entries[i][j] == d[j] * C.entries[j][i]


def test_symmetrizer_identity_for_symmetric():
    assert symmetrizer(dynkin_matrix(T("A4"))) == (1, 1, 1, 1)
    assert symmetrizer(dynkin_matrix(T("E6"))) == (1,) * 6


def test_symmetrizer_b3():
    C = dynkin_matrix(T("B3"))
    d = symmetrizer(C)
    assert d is not None
    for i in range(3):
        for j in range(3):
            assert d[i] * C.entries[i][j] == d[j] * C.entries[j][i]


# ---------------------------------------------------------------------------
# serialization


def test_matrix_json_roundtrip():
    for name in ("A3", "C4", "E7"):
        C = dynkin_matrix(T(name))
        assert matrix_from_json(matrix_to_json(C)) == C
    with pytest.raises(GcmError):
        matrix_from_json({"n": 3, "entries": [[2, -1], [-1, 2]]})


def test_transpose_duality():
    B3 = dynkin_matrix(T("B3"))
    assert transpose(B3) == dynkin_matrix(T("C3"))
    assert transpose(transpose(B3)) == B3
