from __future__ import annotations

import itertools

import pytest
from gmpy2 import mpz

from cartanpoints import (
    DynkinType,
    FriezeError,
    dynkin_matrix,
    equations_render,
    frieze_grid,
    knit_next,
    make_point,
    orbit,
    point_from_json,
    point_to_json,
    render_ascii,
    solve_y,
    to_gls,
    translate,
    validate_gcm,
)
from cartanpoints.closed_forms import period as type_period
from cartanpoints.frieze import FriezePoint, monomial_split


def M(name):
    return dynkin_matrix(DynkinType.parse(name))


E8_POINT = ((6, 4, 11, 29, 21, 13, 5, 2), (5, 3, 3, 3, 2, 2, 3, 3))
E8_FOUR = [
    ((6, 4, 11, 29, 21, 13, 5, 2), (5, 3, 3, 3, 2, 2, 3, 3)),
    ((5, 3, 8, 29, 18, 7, 3, 2), (6, 3, 4, 2, 2, 3, 3, 2)),
    ((6, 3, 11, 41, 16, 7, 5, 3), (7, 4, 4, 2, 3, 3, 2, 2)),
    ((7, 4, 15, 41, 18, 13, 8, 3), (6, 4, 3, 3, 3, 2, 2, 3)),
]
E8_LARGEST = (
    (1320, 165, 16994, 2820839, 134632, 6433, 461, 21),
    (2137, 103, 166, 8, 21, 21, 14, 22),
)


# ---------------------------------------------------------------------------
# rendering


def test_equations_g2_a1():
    assert equations_render(M("G2")) == ["x1 y1 = x2 + 1", "x2 y2 = x1^3 + 1"]
    assert equations_render(M("A1")) == ["x1 y1 = 2"]


def test_equations_f4():
    assert equations_render(M("F4")) == [
        "x1 y1 = x2 + 1",
        "x2 y2 = x1 + x3",
        "x3 y3 = x2^2 + x4",
        "x4 y4 = x3 + 1",
    ]


def test_equations_e8():
    assert equations_render(M("E8")) == [
        "x1 y1 = x4 + 1",
        "x2 y2 = x3 + 1",
        "x3 y3 = x2 + x4",
        "x4 y4 = x1 x3 + x5",
        "x5 y5 = x4 + x6",
        "x6 y6 = x5 + x7",
        "x7 y7 = x6 + x8",
        "x8 y8 = x7 + 1",
    ]


def test_equations_d4():
    assert equations_render(M("D4")) == [
        "x1 y1 = x3 + 1",
        "x2 y2 = x3 + 1",
        "x3 y3 = x1 x2 + x4",
        "x4 y4 = x3 + 1",
    ]


# ---------------------------------------------------------------------------
# solve_y / make_point


def test_solve_y_g2():
    assert solve_y(M("G2"), (2, 9)) == (5, 1)
    assert solve_y(M("G2"), (4, 3)) is None  # 65/3 not integral


def test_solve_y_e8_largest():
    assert solve_y(M("E8"), E8_LARGEST[0]) == E8_LARGEST[1]


def test_make_point_a2():
    p = make_point(M("A2"), (1, 1), (2, 2))
    assert (p.x, p.y) == ((1, 1), (2, 2))


def test_make_point_reports_violations():
    with pytest.raises(FriezeError, match=r"\[2\]"):
        make_point(M("A2"), (1, 1), (2, 3))
    with pytest.raises(FriezeError, match="nonpositive"):
        make_point(M("A2"), (1, 0), (2, 2))


def test_make_point_e8_example():
    make_point(M("E8"), *E8_POINT)
    make_point(M("E8"), *E8_LARGEST)


# ---------------------------------------------------------------------------
# knitting and translation


def test_knit_a2():
    A2 = M("A2")
    assert knit_next(A2, (1, 1)) == (2, 3)
    assert knit_next(A2, (2, 3)) == (2, 1)
    assert knit_next(M("A1"), (1,)) == (2,)


def test_knit_failure_returns_none():
    assert knit_next(M("A2"), (2, 2)) is None


def test_translate_a2():
    p = make_point(M("A2"), (1, 1), (2, 2))
    q = translate(p)
    assert (q.x, q.y) == ((2, 3), (2, 1))


def test_translate_a1():
    p = make_point(M("A1"), (2,), (1,))
    q = translate(p)
    assert (q.x, q.y) == ((1,), (2,))


def test_translate_refuses_infinite_type():
    C = validate_gcm([[2, -4], [-1, 2]])
    p = FriezePoint(C, (1, 1), (2, 2))
    with pytest.raises(FriezeError, match="finite"):
        translate(p)


def test_translate_e8_cycles_through_four():
    E8 = M("E8")
    p = make_point(E8, *E8_FOUR[0])
    q = translate(p)
    assert (q.x, q.y) == E8_FOUR[1]


# ---------------------------------------------------------------------------
# orbits


A2_POINTS = {
    ((1, 1), (2, 2)),
    ((1, 2), (3, 1)),
    ((2, 1), (1, 3)),
    ((2, 3), (2, 1)),
    ((3, 2), (1, 2)),
}


def test_orbit_a2_is_everything():
    p = make_point(M("A2"), (1, 1), (2, 2))
    o = orbit(p)
    assert len(o) == 5
    assert {(q.x, q.y) for q in o} == A2_POINTS


def test_orbit_a1():
    o = orbit(make_point(M("A1"), (1,), (2,)))
    assert len(o) == 2  # divides P = 4


def test_orbit_e8_four():
    o = orbit(make_point(M("E8"), *E8_FOUR[0]))
    assert [(q.x, q.y) for q in o] == E8_FOUR


def test_orbit_e8_largest_has_order_16():
    o = orbit(make_point(M("E8"), *E8_LARGEST))
    assert len(o) == 16
    assert len({(q.x, q.y) for q in o}) == 16


# ---------------------------------------------------------------------------
# grids


def test_grid_a2():
    g = frieze_grid(make_point(M("A2"), (1, 1), (2, 2)))
    cols = [g.column(j) for j in range(g.period)]
    assert cols == [(1, 1), (2, 3), (2, 1), (1, 2), (3, 2)]


def test_grid_a1():
    g = frieze_grid(make_point(M("A1"), (1,), (2,)))
    assert g.rows == ((1, 2, 1, 2),)


E8_GRID_COLUMNS = [
    (6, 4, 11, 29, 21, 13, 5, 2),
    (5, 3, 8, 29, 18, 7, 3, 2),
    (6, 3, 11, 41, 16, 7, 5, 3),
    (7, 4, 15, 41, 18, 13, 8, 3),
]


def test_grid_e8_example_repeats_four_columns():
    g = frieze_grid(make_point(M("E8"), *E8_POINT))
    assert g.period == 16
    for j in range(16):
        assert g.column(j) == E8_GRID_COLUMNS[j % 4]


def test_grid_mesh_relations_including_wraparound():
    g = frieze_grid(make_point(M("G2"), (2, 9), (5, 1)))
    C, P = g.matrix, g.period
    for j in range(P):
        nxt = (j + 1) % P
        for i in range(C.n):
            lo, hi = monomial_split(C, i)
            m = 1
            for k, e in lo:
                m *= g.rows[k][nxt] ** e
            for k, e in hi:
                m *= g.rows[k][j] ** e
            assert g.rows[i][j] * g.rows[i][nxt] == 1 + m


def test_render_ascii():
    g = frieze_grid(make_point(M("A2"), (1, 1), (2, 2)))
    text = render_ascii(g)
    lines = text.splitlines()
    assert len(lines) == 4
    assert lines[0].split() == ["1"] * 5
    assert lines[1].split() == ["1", "2", "2", "1", "3"]
    # staggering: odd rows are offset
    assert lines[1].startswith(" ")
    assert not lines[2].startswith(" ")


# ---------------------------------------------------------------------------
# companion model


def test_to_gls_examples():
    A2 = M("A2")
    g = to_gls(make_point(A2, (1, 1), (2, 2)))
    assert g.z == (2, 3)
    g = to_gls(make_point(A2, (2, 3), (2, 1)))
    assert g.z == (2, 1)
    g = to_gls(make_point(M("A1"), (2,), (1,)))
    assert g.z == (1,)


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "G2"])
def test_cross_model_presence_equivalence(name, suite_points):
    """solve_y and knit_next succeed or fail together on small x-grids."""
    C = M(name)
    cap = 12
    for xs in itertools.product(range(1, cap + 1), repeat=C.n):
        assert (solve_y(C, xs) is None) == (knit_next(C, xs) is None), xs
    for p in suite_points(name):
        assert solve_y(C, p.x) is not None
        assert knit_next(C, p.x) is not None


# ---------------------------------------------------------------------------
# serialization, equality


def test_point_json_roundtrip_catalog():
    p = make_point(M("E8"), *E8_LARGEST)
    data = point_to_json(p)
    assert data["type"] == "E8" and data["matrix"] is None
    assert data["x"][3] == "2820839"
    assert point_from_json(data) == p


def test_point_json_roundtrip_custom_matrix():
    C = validate_gcm([[2, -1], [-3, 2]])  # transposed G2 labeling, not in the catalog
    p = make_point(C, (1, 1), (2, 2))
    data = point_to_json(p)
    assert data["type"] is None and data["matrix"]["n"] == 2
    assert point_from_json(data) == p


def test_points_accept_mpz_coordinates():
    A2 = M("A2")
    p = make_point(A2, (mpz(1), mpz(1)), (mpz(2), mpz(2)))
    q = make_point(A2, (1, 1), (2, 2))
    assert p == q
    assert hash(p) == hash(q)
    assert translate(p) == translate(q)
