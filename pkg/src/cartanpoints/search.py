"""Complete enumeration of positive integral points for finite-type matrices.

The enumerator walks the equations in node-label order.  Each equation is
consumed in one of four ways, decided once per matrix in a planning pass:

  pair     x_i and y_i both new: branch on both, derive the one still
           unknown neighbor x_u from x_i*y_i = lower + rest * x_u^e
  derive   x_i known: branch on y_i alone, derive x_u the same way
  divisor  x_i new but every neighbor known: x_i runs over the divisors of
           the right-hand side, y_i is the cofactor
  check    everything known: y_i must divide exactly, else prune

Every derived value is pruned against a per-coordinate cap, so the tree is
finite.  Representatives are searched inside the box S(1, N) given by
``bounds.representative_cap`` (every translation orbit meets that box), and
the final set is closed under translation, which restores completeness.
Exactness is cross-checked against the closed-form counts by the test suite
for every acceptance type.

Work is split into independent units by the value of the first branched
coordinate; units are the parallelism and checkpoint granularity.  Merging
is a set union, so results are identical for any worker count.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import gmpy2

from .bounds import SearchBox, profile, representative_cap
from .cartan import (
    DynkinType,
    GcmError,
    GeneralizedCartanMatrix,
    catalog_type_of,
    dynkin_matrix,
    is_finite_type,
)
from .closed_forms import period as type_period
from .frieze import FriezePoint, orbit, translate

__all__ = [
    "SearchConfig",
    "CountReport",
    "Checkpoint",
    "BudgetExhausted",
    "enumerate_points",
    "enumerate_type",
    "enumerate_restricted_orbit",
    "filter_restricted_orbit",
    "canonical_points",
    "write_points_file",
    "points_digest",
    "load_checkpoint",
]


class BudgetExhausted(RuntimeError):
    """Node budget ran out; a checkpoint (if configured) has been written."""

    def __init__(self, message: str, checkpoint_path: str | None):
        super().__init__(message)
        self.checkpoint_path = checkpoint_path


@dataclass(frozen=True)
class SearchConfig:
    matrix: GeneralizedCartanMatrix
    pivot: int | str | None = "auto"  # 1-based row, "auto" (argmin bound), or None
    pivot_cap: int | None = None
    entry_caps: SearchBox | tuple[int, ...] | None = None
    min_entry: int = 1
    restricted_orbit: bool = False
    workers: int = 1
    checkpoint_path: str | None = None
    node_budget: int | None = None
    resume: bool = False

    def __post_init__(self) -> None:
        if self.min_entry not in (1, 2):
            raise ValueError("min_entry must be 1 or 2")
        if self.restricted_orbit and self.min_entry != 2:
            raise ValueError("restricted_orbit requires min_entry = 2")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class CountReport:
    total: int
    orbit_count: int
    nodes: int
    elapsed: float
    max_coordinate: int


# ---------------------------------------------------------------------------
# Planning


def _plan(C: GeneralizedCartanMatrix):
    """Step list for the equation walk, or None when unsupported.

    Supported labelings keep at most one unknown neighbor per equation; the
    unknown always sits in the upper monomial (all lower-indexed nodes are
    assigned by earlier steps).
    """
    n = C.n
    steps = []
    known: set[int] = set()
    for i in range(n):
        lo = tuple((j, -C.entries[j][i]) for j in range(i) if C.entries[j][i] != 0)
        hi = tuple((j, -C.entries[j][i]) for j in range(i + 1, n) if C.entries[j][i] != 0)
        unknown = [(j, e) for j, e in hi if j not in known]
        if i not in known:
            if not unknown:
                steps.append(("divisor", i, lo, hi, None, None, ()))
                known.add(i)
                continue
            if len(unknown) == 1:
                (u, e) = unknown[0]
                rest = tuple((j, f) for j, f in hi if j != u)
                steps.append(("pair", i, lo, hi, u, e, rest))
                known.update((i, u))
                continue
            return None
        if not unknown:
            steps.append(("check", i, lo, hi, None, None, ()))
        elif len(unknown) == 1:
            (u, e) = unknown[0]
            rest = tuple((j, f) for j, f in hi if j != u)
            steps.append(("derive", i, lo, hi, u, e, rest))
            known.add(u)
        else:
            return None
    return steps


def _plan_cost(steps) -> tuple:
    # prefer plans whose branch steps derive through small exponents early
    return tuple(e for kind, _, _, _, _, e, _ in steps if kind in ("pair", "derive"))


def _choose_order(C: GeneralizedCartanMatrix):
    """Pick the node processing order among identity and reversal.

    A first equation that derives through an exponent >= 2 forces a
    quadratic blowup of root pairs; reversing a path labeling avoids it.
    """
    n = C.n
    candidates = []
    for perm in (tuple(range(n)), tuple(range(n - 1, -1, -1))):
        P = GeneralizedCartanMatrix(
            n, tuple(tuple(C.entries[perm[i]][perm[j]] for j in range(n)) for i in range(n))
        )
        steps = _plan(P)
        if steps is not None:
            candidates.append((_plan_cost(steps), perm, P))
    if not candidates:
        raise GcmError("node labeling not supported by the equation walk")
    candidates.sort(key=lambda c: c[0])
    _, perm, P = candidates[0]
    return perm, P


# ---------------------------------------------------------------------------
# Core walker


def _nth_root(v, e):
    if e == 1:
        return v
    if v < 1:
        return None
    root, exact = gmpy2.iroot(gmpy2.mpz(v), e)
    return int(root) if exact else None


def _divisors_upto(t: int, cap: int) -> list[int]:
    out = []
    d = 1
    while d * d <= t:
        if t % d == 0:
            if d <= cap:
                out.append(d)
            q = t // d
            if q != d and q <= cap:
                out.append(q)
        d += 1
    out.sort()
    return out


class _BudgetStop(Exception):
    def __init__(self, nodes: int):
        super().__init__(nodes)
        self.nodes = nodes


def _run_unit(entries, caps, min_entry, root_value, node_limit=None):
    """Enumerate the subtree with the first branched coordinate fixed.

    root_value None means no restriction (single-unit searches).  Raises
    _BudgetStop when node_limit visits are exceeded (partial results are
    discarded by the caller).  Standalone and picklable; used directly by
    worker processes.
    """
    n = len(entries)
    C = GeneralizedCartanMatrix(n, entries)
    steps = _plan(C)
    xs = [0] * n
    ys = [0] * n
    found = []
    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _BudgetStop(nodes)

    def mono(parts):
        r = 1
        for j, e in parts:
            r *= xs[j] ** e
        return r

    def branch_derive(si, i, lo, u, e, rest, xi):
        """Branch y_i and solve lower + rest*x_u^e = x_i*y_i for x_u."""
        L = mono(lo)
        R = mono(rest)
        y_lo = (L + R * min_entry**e + xi - 1) // xi
        y_hi = (L + R * caps[u] ** e) // xi
        for yi in range(max(min_entry, y_lo), y_hi + 1):
            tick()
            t = xi * yi - L
            q, r = divmod(t, R) if R != 1 else (t, 0)
            if r:
                continue
            root = _nth_root(q, e)
            if root is None or root < min_entry or root > caps[u]:
                continue
            ys[i] = yi
            xs[u] = root
            run(si + 1)

    def run(si: int) -> None:
        if si == len(steps):
            found.append((tuple(xs), tuple(ys)))
            return
        kind, i, lo, hi, u, e, rest = steps[si]
        if kind == "pair":
            if si == 0 and root_value is not None:
                xi_values = (root_value,)
            else:
                xi_values = range(min_entry, caps[i] + 1)
            for xi in xi_values:
                xs[i] = xi
                branch_derive(si, i, lo, u, e, rest, xi)
        elif kind == "derive":
            branch_derive(si, i, lo, u, e, rest, xs[i])
        elif kind == "divisor":
            t = mono(lo) + mono(hi)
            for d in _divisors_upto(t, caps[i]):
                tick()
                if d < min_entry:
                    continue
                q = t // d
                if q < min_entry:
                    continue
                xs[i] = d
                ys[i] = q
                run(si + 1)
        else:  # check
            tick()
            t = mono(lo) + mono(hi)
            q, r = divmod(t, xs[i])
            if r == 0 and q >= min_entry:
                ys[i] = q
                run(si + 1)

    run(0)
    return found, nodes


# ---------------------------------------------------------------------------
# Checkpointing


def _config_digest(C: GeneralizedCartanMatrix, caps, min_entry: int, restricted: bool) -> str:
    payload = {
        "entries": [list(r) for r in C.entries],
        "caps": list(caps),
        "min_entry": min_entry,
        "restricted": restricted,
        "schema": 1,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


@dataclass
class Checkpoint:
    digest: str
    store_path: str
    completed: dict[int, list] = field(default_factory=dict)  # unit -> rep tuples

    @property
    def completed_units(self) -> tuple[int, ...]:
        return tuple(sorted(self.completed))


def _write_checkpoint_header(path: str, digest: str, store_path: str, units) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            json.dumps(
                {"record": "config", "digest": digest, "store": store_path, "units": list(units)}
            )
            + "\n"
        )


def _append_unit(path: str, store_path: str, unit: int, reps, nodes: int) -> None:
    with open(store_path, "a", encoding="utf-8") as fh:
        for x, y in reps:
            fh.write(
                json.dumps({"unit": unit, "x": [str(v) for v in x], "y": [str(v) for v in y]})
                + "\n"
            )
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(
            json.dumps({"record": "unit", "unit": unit, "count": len(reps), "nodes": nodes})
            + "\n"
        )


def load_checkpoint(path: str) -> Checkpoint:
    with open(path, encoding="utf-8") as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    if not lines or lines[0].get("record") != "config":
        raise ValueError(f"{path} is not a checkpoint file")
    ck = Checkpoint(lines[0]["digest"], lines[0]["store"])
    for rec in lines[1:]:
        if rec.get("record") == "unit":
            ck.completed[rec["unit"]] = []
    if os.path.exists(ck.store_path):
        with open(ck.store_path, encoding="utf-8") as fh:
            for line in fh:
                rec = json.loads(line)
                if rec["unit"] in ck.completed:
                    ck.completed[rec["unit"]].append(
                        (tuple(int(v) for v in rec["x"]), tuple(int(v) for v in rec["y"]))
                    )
    return ck


# ---------------------------------------------------------------------------
# Orbit closure and canonical output


def _orbit_close(C: GeneralizedCartanMatrix, raw_points):
    seen = set(raw_points)
    stack = list(seen)
    while stack:
        x, y = stack.pop()
        p = translate(FriezePoint(C, x, y))
        key = (p.x, p.y)
        if key not in seen:
            seen.add(key)
            stack.append(key)
    return seen


def canonical_points(C: GeneralizedCartanMatrix, raw) -> tuple[FriezePoint, ...]:
    """Deduplicated points in lexicographic (x, y) order."""
    uniq = {(tuple(int(v) for v in x), tuple(int(v) for v in y)) for x, y in raw}
    return tuple(FriezePoint(C, x, y) for x, y in sorted(uniq))


def _count_orbits(points) -> int:
    remaining = {(p.x, p.y) for p in points}
    count = 0
    while remaining:
        x, y = min(remaining)
        for q in orbit(FriezePoint(points[0].matrix, x, y)):
            remaining.discard((q.x, q.y))
        count += 1
    return count


# ---------------------------------------------------------------------------
# Driver


def _auto_caps(config: SearchConfig) -> tuple[int, ...]:
    C = config.matrix
    if config.entry_caps is not None:
        box = config.entry_caps
        upper = box.upper if isinstance(box, SearchBox) else box
        caps = tuple(int(v) for v in upper)
        if len(caps) != C.n:
            raise ValueError("entry_caps must have one value per node")
        return caps
    N = representative_cap(C)
    caps = [N] * C.n
    if config.pivot is not None:
        t = catalog_type_of(C)
        prof = profile(C, type_period(t) if t else 1)
        if config.pivot == "auto":
            idx = min(range(C.n), key=lambda i: (prof.b_ceil(i), i))
        else:
            idx = int(config.pivot) - 1
            if not 0 <= idx < C.n:
                raise ValueError("pivot index out of range")
        cap = config.pivot_cap if config.pivot_cap is not None else prof.b_ceil(idx)
        caps[idx] = min(caps[idx], int(cap))
    return tuple(caps)


def enumerate_points(config: SearchConfig):
    """All positive integral points of the system, with a count report.

    The result restricts to coordinates >= 2 when min_entry == 2 and further
    to all->=2 orbits when restricted_orbit is set; both restrictions are
    exact filters of the full enumeration, never separate searches, so the
    subset relations between the three sets hold by construction.
    """
    C = config.matrix
    if not is_finite_type(C):
        raise GcmError("enumeration requires a finite-type matrix (infinite sets otherwise)")
    t0 = time.monotonic()

    if C.n == 1:
        # x1*y1 = 2 exactly; skip the machinery
        pts = canonical_points(C, [((1,), (2,)), ((2,), (1,))])
        pts = _apply_filters(pts, config)
        report = CountReport(
            len(pts), _count_orbits(pts) if pts else 0, 0, time.monotonic() - t0, _max_coord(pts)
        )
        return pts, report

    caps = _auto_caps(config)
    perm, Cp = _choose_order(C)
    caps_p = tuple(caps[perm[i]] for i in range(C.n))

    first_is_pair = _plan(Cp)[0][0] == "pair"
    units = list(range(1, caps_p[0] + 1)) if first_is_pair else [None]
    digest = _config_digest(Cp, caps_p, config.min_entry, config.restricted_orbit)

    done: dict[int, list] = {}
    store_path = None
    if config.resume:
        if not config.checkpoint_path:
            raise ValueError("resume requires checkpoint_path")
        ck = load_checkpoint(config.checkpoint_path)
        if ck.digest != digest:
            raise ValueError("checkpoint digest does not match this configuration")
        done = dict(ck.completed)
        store_path = ck.store_path
    elif config.checkpoint_path:
        store_path = config.checkpoint_path + ".points"
        _write_checkpoint_header(config.checkpoint_path, digest, store_path, units)
        if os.path.exists(store_path):
            os.remove(store_path)

    pending = [u for u in units if u not in done]
    reps: list = [pt for pts in done.values() for pt in pts]
    nodes = 0
    entries = Cp.entries

    def handle(unit, unit_reps, unit_nodes):
        nonlocal nodes
        nodes += unit_nodes
        reps.extend(unit_reps)
        if config.checkpoint_path:
            _append_unit(config.checkpoint_path, store_path, unit, unit_reps, unit_nodes)

    if config.workers == 1 or config.node_budget is not None:
        # budgeted runs stay serial so the cut point is deterministic
        for u in pending:
            remaining = None
            if config.node_budget is not None:
                remaining = config.node_budget - nodes
                if remaining <= 0:
                    raise BudgetExhausted(
                        f"node budget {config.node_budget} exhausted after {nodes} nodes",
                        config.checkpoint_path,
                    )
            try:
                unit_reps, unit_nodes = _run_unit(entries, caps_p, 1, u, remaining)
            except _BudgetStop as stop:
                raise BudgetExhausted(
                    f"node budget {config.node_budget} exhausted after {nodes + stop.nodes} "
                    f"nodes (mid-unit {u}; unit not recorded)",
                    config.checkpoint_path,
                ) from None
            handle(u, unit_reps, unit_nodes)
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [(u, pool.submit(_run_unit, entries, caps_p, 1, u)) for u in pending]
            for u, fut in futures:
                unit_reps, unit_nodes = fut.result()
                handle(u, unit_reps, unit_nodes)

    inv = [0] * C.n
    for i, p in enumerate(perm):
        inv[p] = i
    unpermuted = [
        (tuple(x[inv[i]] for i in range(C.n)), tuple(y[inv[i]] for i in range(C.n)))
        for x, y in reps
    ]
    closed = _orbit_close(C, unpermuted)
    pts = canonical_points(C, closed)
    pts = _apply_filters(pts, config)
    report = CountReport(
        total=len(pts),
        orbit_count=_count_orbits(pts) if pts else 0,
        nodes=nodes,
        elapsed=time.monotonic() - t0,
        max_coordinate=_max_coord(pts),
    )
    return pts, report


def _max_coord(points) -> int:
    mx = 0
    for p in points:
        for v in p.coordinates():
            if v > mx:
                mx = int(v)
    return mx


def _apply_filters(pts, config: SearchConfig):
    if config.min_entry == 2:
        pts = tuple(p for p in pts if min(p.coordinates()) >= 2)
    if config.restricted_orbit:
        pts = tuple(filter_restricted_orbit(pts))
    return pts


def filter_restricted_orbit(points) -> list[FriezePoint]:
    """Points whose entire translation orbit has every coordinate >= 2."""
    out = []
    for p in points:
        if all(min(q.coordinates()) >= 2 for q in orbit(p)):
            out.append(p)
    return out


def enumerate_restricted_orbit(config: SearchConfig):
    cfg = replace(config, min_entry=2, restricted_orbit=True)
    return enumerate_points(cfg)


@lru_cache(maxsize=None)
def enumerate_type(type_name: str, min_entry: int = 1):
    """Cached enumeration of a catalog type by name ("A5", "E6", ...)."""
    t = DynkinType.parse(type_name)
    pts, report = enumerate_points(SearchConfig(dynkin_matrix(t), min_entry=min_entry))
    return pts, report


# ---------------------------------------------------------------------------
# Canonical point files


def write_points_file(path: str, points, report: CountReport | None = None) -> None:
    """One canonical point JSON per line, sorted, then a count-report record."""
    from .frieze import point_to_json

    with open(path, "w", encoding="utf-8") as fh:
        for p in points:
            fh.write(json.dumps(point_to_json(p), sort_keys=True) + "\n")
        if report is not None:
            fh.write(
                json.dumps(
                    {
                        "record": "count_report",
                        "total": report.total,
                        "orbit_count": report.orbit_count,
                        "max_coordinate": str(report.max_coordinate),
                    },
                    sort_keys=True,
                )
                + "\n"
            )


def points_digest(points) -> str:
    blob = json.dumps([[list(map(str, p.x)), list(map(str, p.y))] for p in points])
    return hashlib.sha256(blob.encode()).hexdigest()
