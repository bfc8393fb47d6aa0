from __future__ import annotations

import pytest

from cartanpoints import (
    DynkinType,
    FriezeError,
    GcmError,
    delete_node,
    dynkin_matrix,
    lift_point,
    make_point,
    project_point,
    slice_count,
    slice_points,
)


def M(name):
    return dynkin_matrix(DynkinType.parse(name))


def test_delete_endpoint_of_path():
    small, relab = delete_node(M("A4"), 1)
    assert small == M("A3")
    assert relab.deleted == 1
    assert relab.new_label(2) == 1 and relab.old_label(3) == 4


def test_delete_e8_tail_gives_e7():
    small, _ = delete_node(M("E8"), 8)
    assert small == M("E7")


def test_delete_rejects_branch_node():
    with pytest.raises(GcmError, match="degree 3"):
        delete_node(M("E8"), 4)


def test_lift_a3_into_a4_set_x():
    p = make_point(M("A3"), (1, 1, 1), (2, 2, 2))
    q = lift_point(M("A4"), 1, p, "set_x")
    assert q.x[0] == 1
    assert (q.x, q.y) == ((1, 1, 1, 1), (2, 2, 2, 2))


def test_lift_a3_into_a4_set_y():
    p = make_point(M("A3"), (1, 1, 1), (2, 2, 2))
    q = lift_point(M("A4"), 1, p, "set_y")
    assert q.y[0] == 1
    # x_k = anchor + 1, neighbor y increments
    assert q.x == (2, 1, 1, 1) and q.y == (1, 3, 2, 2)


def test_lift_validates_membership():
    p = make_point(M("A2"), (1, 1), (2, 2))
    with pytest.raises(FriezeError):
        lift_point(M("A4"), 1, p, "set_x")
    with pytest.raises(ValueError):
        lift_point(M("A4"), 1, p, "sideways")


@pytest.mark.parametrize(
    "big,small,k",
    [("A4", "A3", 1), ("A5", "A4", 1), ("D5", "D4", 5), ("E6", "D5", 2)],
)
@pytest.mark.parametrize("variant", ["set_x", "set_y"])
def test_lift_slice_bijection(big, small, k, variant, suite_points):
    big_m = M(big)
    small_m, _ = delete_node(big_m, k)
    lifted = {lift_point(big_m, k, p, variant).key() for p in suite_points(small)}
    assert small_m.n == big_m.n - 1
    sliced = {p.key() for p in slice_points(suite_points(big), k, variant)}
    assert lifted == sliced
    # pointwise round trip
    for p in suite_points(small):
        q = lift_point(big_m, k, p, variant)
        assert project_point(big_m, k, q) == p


def test_e6_node2_deletion_is_d5():
    # deleting the short arm of E6 leaves a D-shaped diagram on labels
    # (1,3,4,5,6); the catalog D5 matrix appears after relabeling
    small, _ = delete_node(M("E6"), 2)
    from cartanpoints import catalog_type_of

    # relabeled: nodes 1 and (old 3) both attach to old 4
    assert small.entries == (
        (2, 0, -1, 0, 0),
        (0, 2, -1, 0, 0),
        (-1, -1, 2, -1, 0),
        (0, 0, -1, 2, -1),
        (0, 0, 0, -1, 2),
    )
    assert catalog_type_of(small) == DynkinType.parse("D5")


def test_slice_counts(suite_points):
    a4 = suite_points("A4")
    assert slice_count(a4, 1, "set_x") == 14
    assert slice_count(a4, 1, "set_y") == 14
    a5 = suite_points("A5")
    assert slice_count(a5, 1, "set_x") == 42
    assert slice_count(a5, 1, "set_y") == 42
    d4 = suite_points("D4")
    assert slice_count(d4, 2, "set_x") == 14
    assert slice_count(d4, 2, "set_y") == 14


def test_project_requires_slice_membership():
    q = make_point(M("A4"), (2, 3, 4, 5), (2, 2, 2, 1))
    with pytest.raises(FriezeError, match="neither slice"):
        project_point(M("A4"), 1, q)
