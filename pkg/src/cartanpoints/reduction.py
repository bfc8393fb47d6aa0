"""Degree-1 node deletion: slicing point sets and lifting them back.

Deleting a degree-1 node k (unique neighbor k') from a Dynkin diagram
intersects the point variety with the hyperplane x_k = 1 or y_k = 1, and
the smaller type's points biject with that slice:

  y_k = 1 forces x_k = x_{k'} + 1 and shifts y_{k'} down by one;
  x_k = 1 forces y_k = x_{k'} + 1 and leaves everything else unchanged.

Both lift maps are validated through the full equation system on every call.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import GcmError, GeneralizedCartanMatrix
from .frieze import FriezeError, FriezePoint, make_point

__all__ = [
    "NodeRelabeling",
    "delete_node",
    "lift_point",
    "slice_points",
    "slice_count",
    "project_point",
]


@dataclass(frozen=True)
class NodeRelabeling:
    """Bijection from surviving 1-based labels of the big type to 1..n-1."""

    deleted: int
    mapping: tuple[tuple[int, int], ...]  # (old_label, new_label) pairs

    def new_label(self, old: int) -> int:
        for a, b in self.mapping:
            if a == old:
                return b
        raise KeyError(old)

    def old_label(self, new: int) -> int:
        for a, b in self.mapping:
            if b == new:
                return a
        raise KeyError(new)


def delete_node(C: GeneralizedCartanMatrix, k: int):
    """Submatrix with 1-based node k removed, plus the relabeling used.

    k must have degree 1; surviving nodes keep their relative order.
    """
    i = k - 1
    if not 0 <= i < C.n:
        raise GcmError(f"node {k} out of range")
    if len(C.neighbors(i)) != 1:
        raise GcmError(f"node {k} has degree {len(C.neighbors(i))}, expected 1")
    keep = [j for j in range(C.n) if j != i]
    rows = tuple(tuple(C.entries[a][b] for b in keep) for a in keep)
    small = GeneralizedCartanMatrix(C.n - 1, rows)
    mapping = tuple((old + 1, new + 1) for new, old in enumerate(keep))
    return small, NodeRelabeling(k, mapping)


def _neighbor_of(C: GeneralizedCartanMatrix, k: int) -> int:
    return C.neighbors(k - 1)[0] + 1


def lift_point(
    big: GeneralizedCartanMatrix, k: int, p: FriezePoint, variant: str
) -> FriezePoint:
    """Lift a point of the k-deleted type into the slice of the big type.

    variant "set_y" lands in {y_k = 1}, variant "set_x" in {x_k = 1}.
    """
    if variant not in ("set_x", "set_y"):
        raise ValueError("variant must be 'set_x' or 'set_y'")
    small, relab = delete_node(big, k)
    if p.matrix != small:
        raise FriezeError("point does not belong to the k-deleted type")
    kp = _neighbor_of(big, k)
    anchor = p.x[relab.new_label(kp) - 1]
    x = [0] * big.n
    y = [0] * big.n
    for old, new in relab.mapping:
        x[old - 1] = p.x[new - 1]
        y[old - 1] = p.y[new - 1]
    if variant == "set_y":
        x[k - 1] = anchor + 1
        y[k - 1] = 1
        y[kp - 1] = p.y[relab.new_label(kp) - 1] + 1
    else:
        x[k - 1] = 1
        y[k - 1] = anchor + 1
    return make_point(big, x, y)


def slice_points(points, k: int, variant: str):
    """Subset of a big-type point set lying on the variant hyperplane."""
    if variant not in ("set_x", "set_y"):
        raise ValueError("variant must be 'set_x' or 'set_y'")
    if variant == "set_x":
        return tuple(p for p in points if p.x[k - 1] == 1)
    return tuple(p for p in points if p.y[k - 1] == 1)


def slice_count(points, k: int, variant: str) -> int:
    return len(slice_points(points, k, variant))


def project_point(big: GeneralizedCartanMatrix, k: int, p: FriezePoint) -> FriezePoint:
    """Inverse of lift_point on its image: strip node k from a sliced point."""
    if p.x[k - 1] != 1 and p.y[k - 1] != 1:
        raise FriezeError(f"point lies on neither slice at node {k}")
    small, relab = delete_node(big, k)
    kp = _neighbor_of(big, k)
    xs = []
    ys = []
    for new in range(1, small.n + 1):
        old = relab.old_label(new)
        xs.append(p.x[old - 1])
        yv = p.y[old - 1]
        if p.y[k - 1] == 1 and old == kp:
            yv -= 1  # undo the set_y shift
        ys.append(yv)
    return make_point(small, xs, ys)
