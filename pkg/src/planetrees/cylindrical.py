"""Annulus layouts of K_n and the two-cycle sweep solver.

A layout places p vertices on an inner circle and q on an outer circle
(vertices 0..p-1 are inner, p..p+q-1 outer, each circle sorted by
angle).  A side edge (u, w) is the spiral whose angular position grows
linearly with the radius, from the inner angle of u through a winding
displacement to the outer angle of w; the displacement may include
extra full turns.  Angles and windings are exact rationals in units of
pi, so crossing counts are closed-form integer computations:

* same-circle edges cross iff their endpoints interleave on the circle
  (chords inside the inner circle, arcs outside the outer one);
* two side edges cross once per integer multiple of a full turn lying
  strictly between their angular differences at the two circles;
* circle-consecutive (cycle) edges are uncrossed, and cross-kind pairs
  never meet.

Layouts whose side edges would meet twice, or whose adjacent side
edges would meet at all, are rejected as not simple.

The solver sweeps back and forth over the side edges: it grows an
active caterpillar subgraph H by walking the rotation of a current
vertex, switching circles (and direction) whenever the walked edge's
color differs from the current cycle.  Three runtime invariants are
asserted: H plus both cycles stays plane; every vertex of H other than
the current one touches an opposite-colored H edge; and each round
strictly extends the previous round's vertex set unless the opposite
cycle is already covered.  When the sweep does not apply (a circle is
empty, or a cycle is bichromatic or both cycles share a color) the
reduction path removes bichromatic-cornered vertices, solves the rest,
and re-attaches them by their uncrossed cycle edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    Drawing,
    Edge,
    EdgeColoring,
    EdgeSet,
    SolveReport,
    STATUS_COUNTEREXAMPLE,
    STATUS_TREE_FOUND,
    crossing_pair,
    edge,
    extract_spanning_tree,
    is_plane,
    is_spanning_tree,
    tree_colors,
)

TURN = Fraction(2)  # full turn in units of pi

CLOCKWISE = "clockwise"
COUNTERCLOCKWISE = "counterclockwise"


class NotSimpleError(ValueError):
    """The layout does not describe a simple drawing."""


class NotApplicableError(ValueError):
    """The sweep preconditions (both circles present, monochromatic
    cycles of different colors) do not hold."""


@dataclass(frozen=True)
class CylindricalLayout:
    """Exact annulus layout: angles, winding displacements, coloring.

    Angles are rationals in units of pi, strictly increasing within
    each circle and inside [0, 2).  ``windings[i][j]`` is the angular
    displacement of the side edge from inner vertex i to outer vertex
    p+j; it must be congruent to the angle difference modulo a full
    turn.
    """

    inner_angles: tuple[Fraction, ...]
    outer_angles: tuple[Fraction, ...]
    windings: tuple[tuple[Fraction, ...], ...]
    color: EdgeColoring

    def __post_init__(self) -> None:
        p, q = len(self.inner_angles), len(self.outer_angles)
        if p + q < 2:
            raise ValueError("layout needs at least 2 vertices")
        for angles, side in ((self.inner_angles, "inner"), (self.outer_angles, "outer")):
            for a in angles:
                if not 0 <= a < TURN:
                    raise ValueError(f"{side} angle {a} outside [0, 2) pi")
            if any(angles[i] >= angles[i + 1] for i in range(len(angles) - 1)):
                raise ValueError(f"{side} angles must be strictly increasing")
        if len(self.windings) != p or any(len(row) != q for row in self.windings):
            raise ValueError(f"windings must have shape {p}x{q}")
        for i in range(p):
            for j in range(q):
                diff = self.outer_angles[j] - self.inner_angles[i]
                if (self.windings[i][j] - diff) % TURN != 0:
                    raise ValueError(
                        f"winding of side edge {i}-{p + j} is not congruent to the "
                        f"angle difference modulo a full turn"
                    )
        if self.color.n != p + q:
            raise ValueError("coloring size does not match vertex count")

    @property
    def n_inner(self) -> int:
        return len(self.inner_angles)

    @property
    def n_outer(self) -> int:
        return len(self.outer_angles)

    @property
    def n(self) -> int:
        return self.n_inner + self.n_outer

    def inner_ids(self) -> list[int]:
        return list(range(self.n_inner))

    def outer_ids(self) -> list[int]:
        return list(range(self.n_inner, self.n))

    def is_side_edge(self, e: Edge) -> bool:
        return (e[0] < self.n_inner) != (e[1] < self.n_inner)

    def winding_of(self, e: Edge) -> Fraction:
        u, w = e
        return self.windings[u][w - self.n_inner]

    def side_start(self, e: Edge) -> Fraction:
        return self.inner_angles[e[0]]


def _integers_strictly_between(x: Fraction, y: Fraction) -> int:
    lo, hi = (x, y) if x <= y else (y, x)
    return max(0, math.ceil(hi) - math.floor(lo) - 1)


def side_crossing_count(layout: CylindricalLayout, e: Edge, f: Edge) -> int:
    """Number of interior meetings of two side-edge spirals."""
    a0 = layout.side_start(e) - layout.side_start(f)
    a1 = (layout.side_start(e) + layout.winding_of(e)) - (
        layout.side_start(f) + layout.winding_of(f)
    )
    return _integers_strictly_between(a0 / TURN, a1 / TURN)


def _interleave_circular(e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Endpoints of independent chords alternate around the circle."""
    a, b = e
    c, d = f

    def between(x: int, lo: int, hi: int) -> bool:
        if lo < hi:
            return lo < x < hi
        return x > lo or x < hi

    return between(c, a, b) != between(d, a, b)


def compile_layout(layout: CylindricalLayout) -> Drawing:
    """Crossing set and rotation system of an annulus layout.

    Raises NotSimpleError when any independent side pair meets more
    than once or any adjacent side pair meets at all.
    """
    p, q, n = layout.n_inner, layout.n_outer, layout.n
    crossings = set()
    side_edges = [edge(u, w) for u in range(p) for w in range(p, n)]
    for i, e in enumerate(side_edges):
        for f in side_edges[i + 1 :]:
            m = side_crossing_count(layout, e, f)
            shared = set(e) & set(f)
            if shared and m >= 1:
                raise NotSimpleError(
                    f"adjacent side edges {e} and {f} meet {m} time(s)"
                )
            if not shared and m >= 2:
                raise NotSimpleError(
                    f"independent side edges {e} and {f} meet {m} times"
                )
            if not shared and m == 1:
                crossings.add(crossing_pair(e, f))
    for ids in (list(range(p)), list(range(p, n))):
        m = len(ids)
        local = [(a, b) for a in range(m) for b in range(a + 1, m)]
        for i, e0 in enumerate(local):
            for f0 in local[i + 1 :]:
                if set(e0) & set(f0):
                    continue
                if _interleave_circular(e0, f0):
                    crossings.add(
                        crossing_pair(
                            edge(ids[e0[0]], ids[e0[1]]), edge(ids[f0[0]], ids[f0[1]])
                        )
                    )

    # Counterclockwise rotations.  At either circle the side edges take
    # off tilted by the arctangent of their winding, so they appear by
    # increasing winding; the chord block runs from the ccw cycle
    # neighbor around to the cw one at an inner vertex and reversed at
    # an outer vertex (the disk looks mirrored from outside).
    rotations: list[tuple[int, ...]] = []
    for v in range(n):
        if v < p:
            sides = sorted(range(p, n), key=lambda w: layout.windings[v][w - p])
            chords = [(v + s) % p for s in range(1, p)]
            rotations.append(tuple(sides + chords))
        else:
            j = v - p
            sides = sorted(range(p), key=lambda u: layout.windings[u][j])
            chords = [p + (j - s) % q for s in range(1, q)]
            rotations.append(tuple(sides + chords))
    labels = tuple("inner" if v < p else "outer" for v in range(n))
    return Drawing(n, frozenset(crossings), tuple(rotations), labels)


def cycle_edges_of(ids: list[int]) -> list[Edge]:
    """Edges between circle-consecutive vertices (circular order given)."""
    if len(ids) >= 3:
        return [edge(ids[i], ids[(i + 1) % len(ids)]) for i in range(len(ids))]
    if len(ids) == 2:
        return [edge(ids[0], ids[1])]
    return []


def _uniform_color(color: EdgeColoring, edges: list[Edge]) -> Optional[int]:
    cols = {color.color_of_edge(e) for e in edges}
    return cols.pop() if len(cols) == 1 else None


def cycle_colors(layout: CylindricalLayout) -> tuple[Optional[int], Optional[int]]:
    """Colors of the two cycles, with single-vertex conventions.

    A circle with one vertex has no cycle edges and may be assigned any
    color; we pick the opposite of the other cycle's color (and for the
    two-vertex drawing, the inner circle takes the color of the lone
    side edge).  None marks a bichromatic cycle.
    """
    p, q = layout.n_inner, layout.n_outer
    inner = _uniform_color(layout.color, cycle_edges_of(layout.inner_ids())) if p >= 2 else None
    outer = _uniform_color(layout.color, cycle_edges_of(layout.outer_ids())) if q >= 2 else None
    if p == 1 and q == 1:
        c = layout.color.color_of(0, 1)
        return c, 1 - c
    if p == 1 and q >= 2:
        inner = 1 - outer if outer is not None else None
    if q == 1 and p >= 2:
        outer = 1 - inner if inner is not None else None
    return inner, outer


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------


@dataclass
class _Context:
    layout: CylindricalLayout
    drawing: Drawing
    inner_color: int
    outer_color: int
    cycle_edges: frozenset[Edge]
    assert_invariants: bool
    invariants: dict[str, bool] = field(default_factory=dict)
    trace: list[dict] = field(default_factory=list)

    def is_inner(self, v: int) -> bool:
        return v < self.layout.n_inner

    def vertex_cycle_color(self, v: int) -> int:
        return self.inner_color if self.is_inner(v) else self.outer_color

    def opposite_circle(self, v: int) -> frozenset[int]:
        if self.is_inner(v):
            return frozenset(self.layout.outer_ids())
        return frozenset(self.layout.inner_ids())

    def record(self, name: str, passed: bool) -> None:
        self.invariants[name] = self.invariants.get(name, True) and passed


@dataclass
class SweepState:
    """State of the zig-zag sweep between rounds and steps."""

    H: set[Edge]
    v_cur: int
    direction: str
    e_cur: Edge
    H_prev: set[Edge]
    round_no: int = 1
    backbone: list[int] = field(default_factory=list)
    ctx: Optional[_Context] = None

    def vertices(self) -> set[int]:
        return {v for e in self.H for v in e}


def first_side_edge(layout: CylindricalLayout, v: int, direction: str) -> Edge:
    """Side edge at the start of v's side block in the given direction.

    In the stored counterclockwise rotation the side edges of an inner
    vertex appear by increasing winding and those of an outer vertex by
    decreasing winding; the cycle edges bound the block, so the first
    side edge clockwise is the block's other end.
    """
    p = layout.n_inner
    pick = max if direction == CLOCKWISE else min
    if v < p:
        if layout.n_outer == 0:
            raise NotApplicableError("no side edges: outer circle is empty")
        j = pick(range(layout.n_outer), key=lambda j: layout.windings[v][j])
        return edge(v, p + j)
    if p == 0:
        raise NotApplicableError("no side edges: inner circle is empty")
    j = v - p
    u = pick(range(p), key=lambda u: layout.windings[u][j])
    return edge(u, v)


def next_edge_in_rotation(d: Drawing, v: int, e: Edge, direction: str) -> Edge:
    """Edge after e around v, walking the full rotation in direction."""
    assert d.rotations is not None
    rot = d.rotations[v]
    other = e[0] if e[1] == v else e[1]
    i = rot.index(other)
    step = -1 if direction == CLOCKWISE else 1
    return edge(v, rot[(i + step) % len(rot)])


def _flip(direction: str) -> str:
    return COUNTERCLOCKWISE if direction == CLOCKWISE else CLOCKWISE


def sweep_start(
    d: Drawing, layout: CylindricalLayout, assert_invariants: bool = True
) -> SweepState:
    """Initial sweep state: lowest-index inner vertex, clockwise.

    Raises NotApplicableError when a circle is empty or the cycles are
    not monochromatic of different colors; such inputs go through
    reduce_and_solve instead.
    """
    if layout.color.k != 2:
        raise ValueError(f"sweep needs exactly 2 colors, got k={layout.color.k}")
    if layout.n_inner == 0 or layout.n_outer == 0:
        raise NotApplicableError("a circle is empty")
    inner_c, outer_c = cycle_colors(layout)
    if inner_c is None or outer_c is None or inner_c == outer_c:
        raise NotApplicableError("cycles are not monochromatic of different colors")
    cyc = frozenset(
        cycle_edges_of(layout.inner_ids()) + cycle_edges_of(layout.outer_ids())
    )
    ctx = _Context(
        layout=layout,
        drawing=d,
        inner_color=inner_c,
        outer_color=outer_c,
        cycle_edges=cyc,
        assert_invariants=assert_invariants,
    )
    v0 = 0
    direction = CLOCKWISE
    e0 = first_side_edge(layout, v0, direction)
    return SweepState(H=set(), v_cur=v0, direction=direction, e_cur=e0, H_prev=set(), ctx=ctx, backbone=[v0])


class SweepViolation(Exception):
    """A sweep invariant failed; carries the offending check name."""

    def __init__(self, name: str, detail: str):
        super().__init__(f"{name}: {detail}")
        self.name = name
        self.detail = detail


def _assert_plane(ctx: _Context, state: SweepState, added: Edge) -> None:
    h_and_cycles = frozenset(state.H) | ctx.cycle_edges
    plane = is_plane(ctx.drawing, h_and_cycles)
    ctx.record("planarity-with-cycles", plane)
    if not plane:
        raise SweepViolation("planarity-with-cycles", f"after adding {added}")


def _assert_opposite_incidence(ctx: _Context, state: SweepState) -> None:
    # Evaluated after the rotation vertex moved: only the current one is exempt.
    for x in state.vertices():
        if x == state.v_cur:
            continue
        want = 1 - ctx.vertex_cycle_color(x)
        ok = any(x in e and ctx.layout.color.color_of_edge(e) == want for e in state.H)
        ctx.record("opposite-color-incidence", ok)
        if not ok:
            raise SweepViolation(
                "opposite-color-incidence", f"vertex {x} lacks a color-{want} edge"
            )


def sweep_round(state: SweepState, d: Drawing) -> SweepState:
    """One sweep round: walk and grow H until the current edge leaves
    the side block or the opposite cycle is covered."""
    ctx = state.ctx
    assert ctx is not None
    layout = ctx.layout
    guard = 2 * d.n * d.n + 8
    steps = 0
    while True:
        covered = ctx.opposite_circle(state.v_cur) <= state.vertices()
        if covered or not layout.is_side_edge(state.e_cur):
            return state
        steps += 1
        if steps > guard:
            raise SweepViolation("round-termination", "rotation walk did not terminate")
        e = state.e_cur
        other = e[0] if e[1] == state.v_cur else e[1]
        if ctx.assert_invariants:
            fresh = other not in state.vertices() or not state.H
            ctx.record("caterpillar", fresh)
            if not fresh:
                raise SweepViolation("caterpillar", f"edge {e} revisits vertex {other}")
        state.H.add(e)
        ctx.trace.append(
            {"round": state.round_no, "edge": list(e), "v_cur": state.v_cur, "direction": state.direction}
        )
        if ctx.assert_invariants:
            _assert_plane(ctx, state, e)
        if layout.color.color_of_edge(e) != ctx.vertex_cycle_color(state.v_cur):
            state.v_cur = other
            state.direction = _flip(state.direction)
            state.backbone.append(other)
            ctx.trace[-1]["switched"] = True
        if ctx.assert_invariants:
            _assert_opposite_incidence(ctx, state)
        state.e_cur = next_edge_in_rotation(d, state.v_cur, e, state.direction)


def _sweep_result(state: SweepState, d: Drawing) -> SolveReport:
    ctx = state.ctx
    assert ctx is not None
    layout = ctx.layout
    covered_color = ctx.outer_color if ctx.is_inner(state.v_cur) else ctx.inner_color
    keep_color = 1 - covered_color
    if keep_color == ctx.inner_color:
        keep_cycle = cycle_edges_of(layout.inner_ids())
    else:
        keep_cycle = cycle_edges_of(layout.outer_ids())
    sub = frozenset(keep_cycle) | {
        e for e in state.H if layout.color.color_of_edge(e) == keep_color
    }
    try:
        tree = extract_spanning_tree(d.n, sub)
    except ValueError:
        ctx.record("output-spanning-tree", False)
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            checked_invariants=tuple(ctx.invariants.items()),
            witness={
                "reason": "kept cycle plus same-colored sweep edges do not span",
                "subgraph": sorted(sub),
                "trace": ctx.trace,
            },
        )
    plane = is_plane(d, tree)
    spanning = is_spanning_tree(d.n, tree)
    mono = tree_colors(layout.color, tree) == {keep_color}
    ctx.record("output-plane", plane)
    ctx.record("output-spanning-tree", spanning)
    ctx.record("output-monochromatic", mono)
    status = STATUS_TREE_FOUND if plane and spanning and mono else STATUS_COUNTEREXAMPLE
    return SolveReport(
        status=status,
        tree=tree,
        avoided_colors=frozenset({covered_color}),
        checked_invariants=tuple(ctx.invariants.items()),
        witness={
            "tree_color": keep_color,
            "rounds": state.round_no,
            "backbone": list(state.backbone),
            "active_subgraph": sorted(state.H),
        },
    )


def sweep_run(
    d: Drawing, layout: CylindricalLayout, assert_invariants: bool = True
) -> SolveReport:
    """Full sweep: rounds alternate direction until the opposite cycle
    is covered, then the kept cycle plus same-colored H edges span.

    Any invariant violation aborts with a counterexample report that
    carries the full step trace.
    """
    state = sweep_start(d, layout, assert_invariants)
    ctx = state.ctx
    assert ctx is not None
    max_rounds = 2 * d.n + 4
    try:
        while True:
            state = sweep_round(state, d)
            if ctx.opposite_circle(state.v_cur) <= state.vertices():
                return _sweep_result(state, d)
            if state.round_no >= 2:
                progress = state.vertices() > {v for e in state.H_prev for v in e}
                ctx.record("round-progress", progress)
                if not progress:
                    raise SweepViolation(
                        "round-progress",
                        f"round {state.round_no} did not strictly extend the previous vertex set",
                    )
            if state.round_no > max_rounds:
                raise SweepViolation("round-termination", "too many sweep rounds")
            state.H_prev = set(state.H)
            state.H = set()
            state.round_no += 1
            state.direction = _flip(state.direction)
            state.e_cur = first_side_edge(layout, state.v_cur, state.direction)
            state.backbone = [state.v_cur]
    except SweepViolation as exc:
        ctx.record(exc.name, False)
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            checked_invariants=tuple(ctx.invariants.items()),
            witness={
                "reason": f"sweep invariant failed: {exc}",
                "invariant": exc.name,
                "trace": ctx.trace,
                "round": state.round_no,
            },
        )


# ---------------------------------------------------------------------------
# Reduction path
# ---------------------------------------------------------------------------


def restrict_layout(
    layout: CylindricalLayout, keep: list[int]
) -> tuple[CylindricalLayout, dict[int, int]]:
    """Sub-layout induced by a vertex subset; returns (layout, old->new)."""
    p = layout.n_inner
    keep_inner = [v for v in sorted(keep) if v < p]
    keep_outer = [v for v in sorted(keep) if v >= p]
    mapping = {v: i for i, v in enumerate(keep_inner + keep_outer)}
    inner_angles = tuple(layout.inner_angles[v] for v in keep_inner)
    outer_angles = tuple(layout.outer_angles[v - p] for v in keep_outer)
    windings = tuple(
        tuple(layout.windings[u][w - p] for w in keep_outer) for u in keep_inner
    )
    color_map = {}
    kept = keep_inner + keep_outer
    for i, u in enumerate(kept):
        for w in kept[i + 1 :]:
            color_map[edge(mapping[u], mapping[w])] = layout.color.color_of(u, w)
    coloring = EdgeColoring.from_map(len(kept), layout.color.k, color_map)
    return (
        CylindricalLayout(inner_angles, outer_angles, windings, coloring),
        mapping,
    )


def _as_book_layout(layout: CylindricalLayout):
    """One-circle layout viewed as a single-page book drawing.

    Cutting the circle turns the circular order into a spine; all
    edges land on one page, and circular interleaving equals linear
    interleaving, so the crossing sets agree.
    """
    from .book import PAGE_TOP, BookLayout

    n = layout.n
    pages = tuple(PAGE_TOP for _ in range(n * (n - 1) // 2))
    return BookLayout(tuple(range(n)), pages, layout.color)


def reduce_and_solve(
    d: Drawing, layout: CylindricalLayout, assert_invariants: bool = True
) -> SolveReport:
    """Solve layouts that the sweep preconditions exclude.

    An empty circle reduces to a one-page book drawing.  Otherwise
    vertices whose two incident cycle edges differ in color are removed
    (lowest index first) until both cycles are monochromatic; the
    reduced drawing is solved by the sweep, by both cycles plus one
    equal-colored side edge, or by the disconnected-class fallback; the
    removed vertices are then re-attached in inverse order by their
    recorded cycle edge of the tree's color.
    """
    from .book import solve_book
    from .search import nonspanning_fallback

    if layout.color.k != 2:
        raise ValueError(f"reduction needs exactly 2 colors, got k={layout.color.k}")
    p, q = layout.n_inner, layout.n_outer
    if p == 0 or q == 0:
        report = solve_book(_as_book_layout(layout))
        if report.status != STATUS_TREE_FOUND:
            return report
        return _finish(d, layout, report.tree, report.checked_invariants, branch="book")

    alive_inner = layout.inner_ids()
    alive_outer = layout.outer_ids()
    removed: list[tuple[int, dict[int, Edge]]] = []
    while True:
        removable = None
        for ids in (alive_inner, alive_outer):
            if len(ids) < 3:
                continue
            for pos, v in enumerate(ids):
                prev_e = edge(ids[pos - 1], v)
                next_e = edge(v, ids[(pos + 1) % len(ids)])
                c_prev = layout.color.color_of_edge(prev_e)
                c_next = layout.color.color_of_edge(next_e)
                if c_prev != c_next:
                    cand = (v, {c_prev: prev_e, c_next: next_e})
                    if removable is None or cand[0] < removable[0]:
                        removable = cand
        if removable is None:
            break
        v, byc = removable
        removed.append((v, byc))
        if v in alive_inner:
            alive_inner.remove(v)
        else:
            alive_outer.remove(v)

    keep = alive_inner + alive_outer
    sub_layout, mapping = restrict_layout(layout, keep)
    inv_map = {new: old for old, new in mapping.items()}
    sub_d = compile_layout(sub_layout)
    inner_c, outer_c = cycle_colors(sub_layout)
    checked: list[tuple[str, bool]] = []
    removed_ids = [v for v, _ in removed]

    if inner_c is not None and outer_c is not None and inner_c != outer_c:
        sub_report = sweep_run(sub_d, sub_layout, assert_invariants)
        if sub_report.status != STATUS_TREE_FOUND:
            return sub_report
        sub_tree = sub_report.tree
        checked.extend(sub_report.checked_invariants)
        branch = "sweep"
    elif inner_c is not None and inner_c == outer_c:
        c = inner_c
        side = None
        for u in sub_layout.inner_ids():
            for w in sub_layout.outer_ids():
                if sub_layout.color.color_of(u, w) == c:
                    side = edge(u, w)
                    break
            if side is not None:
                break
        if side is not None:
            sub = frozenset(
                cycle_edges_of(sub_layout.inner_ids())
                + cycle_edges_of(sub_layout.outer_ids())
                + [side]
            )
            sub_tree = extract_spanning_tree(sub_layout.n, sub)
            branch = "same-color-side-edge"
        else:
            # The shared cycle color has no side edges, so that class
            # cannot span; search among the other color.
            fb = nonspanning_fallback(sub_d, sub_layout.color)
            if fb.status != STATUS_TREE_FOUND:
                return SolveReport(
                    status=STATUS_COUNTEREXAMPLE,
                    checked_invariants=tuple(checked),
                    witness={
                        "reason": "disconnected-class fallback found no tree",
                        "cycle_color": c,
                    },
                )
            sub_tree = fb.tree
            branch = "same-color-fallback"
        checked.append(("reduced-cycles-same-color", True))
    else:
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            checked_invariants=tuple(checked),
            witness={"reason": "reduction left a bichromatic cycle"},
        )

    assert sub_tree is not None
    tree = {edge(inv_map[a], inv_map[b]) for a, b in sub_tree}
    tcol = tree_colors(layout.color, frozenset(tree))
    if len(tcol) != 1:
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            checked_invariants=tuple(checked),
            witness={"reason": "reduced tree is not monochromatic", "colors": sorted(tcol)},
        )
    tree_color = tcol.pop()
    for v, byc in reversed(removed):
        attach = byc.get(tree_color)
        if attach is None:
            return SolveReport(
                status=STATUS_COUNTEREXAMPLE,
                checked_invariants=tuple(checked),
                witness={"reason": "re-attachment impossible", "vertex": v},
            )
        tree.add(attach)
    return _finish(
        d, layout, frozenset(tree), tuple(checked), branch=branch, removed=removed_ids
    )


def _finish(
    d: Drawing,
    layout: CylindricalLayout,
    tree: Optional[EdgeSet],
    checked: tuple[tuple[str, bool], ...],
    branch: str = "direct",
    removed: Optional[list[int]] = None,
) -> SolveReport:
    assert tree is not None
    plane = is_plane(d, tree)
    spanning = is_spanning_tree(d.n, tree)
    cols = tree_colors(layout.color, tree)
    mono = len(cols) == 1
    final = tuple(checked) + (
        ("output-plane", plane),
        ("output-spanning-tree", spanning),
        ("output-monochromatic", mono),
    )
    witness = {"branch": branch, "removed_vertices": removed or []}
    if not (plane and spanning and mono):
        witness["reason"] = "output predicates failed"
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            tree=tree,
            checked_invariants=final,
            witness=witness,
        )
    c = cols.pop()
    witness["tree_color"] = c
    return SolveReport(
        status=STATUS_TREE_FOUND,
        tree=tree,
        avoided_colors=frozenset({1 - c}),
        checked_invariants=final,
        witness=witness,
    )


def solve_cylindrical(
    layout: CylindricalLayout, assert_invariants: bool = True
) -> SolveReport:
    """Monochromatic plane spanning tree of a 2-colored annulus layout."""
    d = compile_layout(layout)
    try:
        sweep_start(d, layout, assert_invariants)
    except NotApplicableError:
        return reduce_and_solve(d, layout, assert_invariants)
    return sweep_run(d, layout, assert_invariants)


def rotation_order_check(d: Drawing, v: int) -> list[int]:
    """Opposite-circle vertices in the rotation order of v.

    Asserts the sequence is a circular shift of that circle's own
    order as seen from v: an inner vertex lists the outer circle
    counterclockwise, an outer vertex lists the inner circle clockwise
    (the inner disk appears mirrored from outside).  A failure flags a
    layout-compilation bug.
    """
    if d.rotations is None or d.vertex_labels is None:
        raise ValueError("drawing lacks rotations or circle labels")
    mine = d.vertex_labels[v]
    opposite = "outer" if mine == "inner" else "inner"
    circle = [w for w in range(d.n) if d.vertex_labels[w] == opposite]
    if not circle:
        raise ValueError(f"vertex {v} has no side edges: opposite circle is empty")
    if mine == "outer":
        circle = list(reversed(circle))
    seq = [w for w in d.rotations[v] if d.vertex_labels[w] == opposite]
    if len(seq) >= 3:
        start = circle.index(seq[0])
        expect = circle[start:] + circle[:start]
        if seq != expect:
            raise AssertionError(
                f"rotation of vertex {v} lists the {opposite} circle as {seq}, "
                f"not a circular shift of {circle}"
            )
    return seq
