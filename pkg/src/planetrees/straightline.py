"""Straight-line point drawings and the prefix/suffix tree solver.

Points are kept on an integer (or rational) grid and every geometric
decision runs through exact sign-of-determinant orientation tests, so
the compiled crossing set is free of floating-point artifacts.  The
inputs must be in general position: no three collinear points and
pairwise distinct x-coordinates.

The solver works by induction on the vertex set.  If some vertex has
uncrossed edges of both colors it is peeled off and re-attached later.
Otherwise the convex hull cycle is monochromatic, say red; if an
interior point exists, monochromatic spanning trees of the x-order
prefixes and suffixes are combined: either a prefix tree and suffix
tree of equal color share a vertex, or a red prefix/suffix pair is
joined by the edge between consecutive x-neighbors or by the hull edge
bridging them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (
    Drawing,
    Edge,
    EdgeColoring,
    EdgeSet,
    SolveReport,
    STATUS_COUNTEREXAMPLE,
    STATUS_TREE_FOUND,
    all_edges,
    crossing_pair,
    edge,
    is_plane,
    is_spanning_tree,
    tree_colors,
)

Coord = Union[int, Fraction]
Point = tuple[Coord, Coord]


class ProofContradiction(Exception):
    """An assertion backed by the correctness argument failed."""


@dataclass(frozen=True)
class PointDrawing:
    """Points in general position with an edge coloring."""

    points: tuple[Point, ...]
    color: EdgeColoring

    def __post_init__(self) -> None:
        if len(self.points) != self.color.n:
            raise ValueError("coloring size does not match point count")

    @property
    def n(self) -> int:
        return len(self.points)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the determinant |b-a, c-a|: +1 ccw, -1 cw, 0 collinear."""
    val = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (val > 0) - (val < 0)


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Proper interior intersection of segments ab and cd (general position)."""
    return (
        orient(a, b, c) != orient(a, b, d)
        and orient(c, d, a) != orient(c, d, b)
        and orient(a, b, c) != 0
        and orient(a, b, d) != 0
        and orient(c, d, a) != 0
        and orient(c, d, b) != 0
    )


def check_general_position(points: Sequence[Point]) -> None:
    n = len(points)
    xs = [p[0] for p in points]
    if len(set(xs)) != n:
        raise ValueError("duplicate x-coordinate among points")
    if len(set(points)) != n:
        raise ValueError("duplicate point")
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orient(points[i], points[j], points[k]) == 0:
                    raise ValueError(f"collinear points {i}, {j}, {k}")


def _angular_rotation(points: Sequence[Point], v: int) -> tuple[int, ...]:
    """Counterclockwise order of the other points around point v."""
    import functools

    pv = points[v]

    def half(w: int) -> int:
        dx = points[w][0] - pv[0]
        dy = points[w][1] - pv[1]
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def cmp(w1: int, w2: int) -> int:
        h1, h2 = half(w1), half(w2)
        if h1 != h2:
            return -1 if h1 < h2 else 1
        a = (points[w1][0] - pv[0], points[w1][1] - pv[1])
        b = (points[w2][0] - pv[0], points[w2][1] - pv[1])
        cross = a[0] * b[1] - a[1] * b[0]
        return -1 if cross > 0 else 1

    others = [w for w in range(len(points)) if w != v]
    return tuple(sorted(others, key=functools.cmp_to_key(cmp)))


def compile_points(p: PointDrawing) -> Drawing:
    """Crossing set by exact segment tests, rotations by angular sort."""
    check_general_position(p.points)
    n = p.n
    edges = all_edges(n)
    crossings = set()
    for i, e in enumerate(edges):
        a, b = p.points[e[0]], p.points[e[1]]
        for f in edges[i + 1 :]:
            if set(e) & set(f):
                continue
            # Cheap reject: x-ranges must overlap for segments to cross.
            c, d = p.points[f[0]], p.points[f[1]]
            if max(a[0], b[0]) < min(c[0], d[0]) or max(c[0], d[0]) < min(a[0], b[0]):
                continue
            if segments_cross(a, b, c, d):
                crossings.add(crossing_pair(e, f))
    rotations = tuple(_angular_rotation(p.points, v) for v in range(n))
    rank = {v: r for r, v in enumerate(sorted(range(n), key=lambda v: p.points[v][0]))}
    labels = tuple(f"x:{rank[v]}" for v in range(n))
    return Drawing(n, frozenset(crossings), rotations, labels)


def x_order(points: Sequence[Point]) -> list[int]:
    return sorted(range(len(points)), key=lambda v: points[v][0])


def convex_hull(points: Sequence[Point], subset: Sequence[int]) -> list[int]:
    """Hull of a subset in counterclockwise order (monotone chain)."""
    idx = sorted(subset, key=lambda v: points[v])
    if len(idx) <= 2:
        return list(idx)
    lower: list[int] = []
    for v in idx:
        while len(lower) >= 2 and orient(points[lower[-2]], points[lower[-1]], points[v]) <= 0:
            lower.pop()
        lower.append(v)
    upper: list[int] = []
    for v in reversed(idx):
        while len(upper) >= 2 and orient(points[upper[-2]], points[upper[-1]], points[v]) <= 0:
            upper.pop()
        upper.append(v)
    return lower[:-1] + upper[:-1]


def _upper_lower_chains(points: Sequence[Point], hull: list[int]) -> tuple[list[int], list[int]]:
    """Split a ccw hull cycle into x-increasing lower and upper chains."""
    left = min(hull, key=lambda v: points[v][0])
    right = max(hull, key=lambda v: points[v][0])
    i = hull.index(left)
    cyc = hull[i:] + hull[:i]
    j = cyc.index(right)
    lower = cyc[: j + 1]
    upper = [left] + list(reversed(cyc[j + 1 :])) + [right]
    return upper, lower


class _Solver:
    def __init__(self, points: tuple[Point, ...], d: Drawing, color: EdgeColoring):
        self.points = points
        self.d = d
        self.color = color
        self.partners = d.crossing_partners()
        self.memo: dict[frozenset[int], tuple[EdgeSet, Optional[int]]] = {}

    def uncrossed_in(self, e: Edge, alive: frozenset[int]) -> bool:
        return all(not set(f) <= alive for f in self.partners.get(e, ()))

    def solve(self, subset: frozenset[int]) -> tuple[EdgeSet, Optional[int]]:
        """Monochromatic plane spanning tree of the induced subdrawing.

        Returns (tree edges in original labels, tree color); the color
        is None only for a single-vertex subset.
        """
        if subset in self.memo:
            return self.memo[subset]
        result = self._solve_uncached(subset)
        tree, col = result
        sub_edges = frozenset(tree)
        if not is_plane(self.d, sub_edges):
            raise ProofContradiction(f"tree on subset {sorted(subset)} is not plane")
        self.memo[subset] = result
        return result

    def _solve_uncached(self, subset: frozenset[int]) -> tuple[EdgeSet, Optional[int]]:
        m = len(subset)
        if m == 1:
            return frozenset(), None
        if m == 2:
            a, b = sorted(subset)
            e = edge(a, b)
            return frozenset({e}), self.color.color_of_edge(e)

        # Peel a vertex with uncrossed edges of both colors.
        for v in sorted(subset):
            byc: dict[int, Edge] = {}
            for w in sorted(subset):
                if w == v:
                    continue
                e = edge(v, w)
                if self.uncrossed_in(e, subset):
                    c = self.color.color_of_edge(e)
                    if c not in byc or self._nearer_x(v, e, byc[c]):
                        byc[c] = e
            if len(byc) == 2:
                rest = subset - {v}
                tree, col = self.solve(rest)
                if col is None:
                    col = min(byc)
                attach = byc.get(col)
                if attach is None:
                    raise ProofContradiction(f"no uncrossed edge of color {col} at vertex {v}")
                return frozenset(tree | {attach}), col

        # No such vertex: the hull cycle must be monochromatic.
        hull = convex_hull(self.points, sorted(subset))
        hull_edges = [edge(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))]
        if len(hull) == 2:
            hull_edges = hull_edges[:1]
        for e in hull_edges:
            if not self.uncrossed_in(e, subset):
                raise ProofContradiction(f"hull edge {e} is crossed within the subset")
        hull_colors = {self.color.color_of_edge(e) for e in hull_edges}
        if len(hull_colors) != 1:
            raise ProofContradiction(
                f"hull cycle of subset {sorted(subset)} is bichromatic "
                f"although no vertex has uncrossed edges of both colors"
            )
        red = next(iter(hull_colors))

        if len(hull) == m:
            # All points on the hull: the boundary path is the tree.
            start = hull.index(min(hull))
            cyc = hull[start:] + hull[:start]
            tree = frozenset(edge(cyc[i], cyc[i + 1]) for i in range(m - 1))
            return tree, red

        order = sorted(subset, key=lambda v: self.points[v][0])

        # Shared-vertex combination: prefix and suffix trees of equal color.
        for i in range(1, m - 1):
            left, col_l = self.solve(frozenset(order[: i + 1]))
            right, col_r = self.solve(frozenset(order[i:]))
            if col_l is not None and col_l == col_r:
                return frozenset(left | right), col_l

        # Disjoint combination: hull-colored prefix and suffix joined by
        # the consecutive edge or the hull edge bridging it.
        for i in range(0, m - 1):
            left, col_l = self.solve(frozenset(order[: i + 1]))
            right, col_r = self.solve(frozenset(order[i + 1 :]))
            if (col_l is not None and col_l != red) or (col_r is not None and col_r != red):
                continue
            join = self._join_edge(order, i, red, subset)
            if join is None:
                continue
            return frozenset(left | right | {join}), red

        raise ProofContradiction(
            f"no prefix/suffix combination found for subset {sorted(subset)}"
        )

    def _join_edge(self, order: list[int], i: int, red: int, subset: frozenset[int]) -> Optional[Edge]:
        # The direct edge between the consecutive x-neighbors cannot
        # cross either side's tree (disjoint x-ranges), so its color is
        # the only requirement; otherwise a hull edge bridges the gap.
        a, b = order[i], order[i + 1]
        direct = edge(a, b)
        if self.color.color_of_edge(direct) == red:
            return direct
        hull = convex_hull(self.points, sorted(subset))
        upper, lower = _upper_lower_chains(self.points, hull)
        xa = self.points[a][0]
        for chain in (upper, lower):
            for j in range(len(chain) - 1):
                u, w = chain[j], chain[j + 1]
                if self.points[u][0] > self.points[w][0]:
                    u, w = w, u
                if self.points[u][0] <= xa < self.points[w][0]:
                    e = edge(u, w)
                    if self.color.color_of_edge(e) == red:
                        return e
        return None

    def _nearer_x(self, v: int, e: Edge, old: Edge) -> bool:
        def key(x: Edge) -> tuple:
            w = x[0] if x[1] == v else x[1]
            return (abs(self.points[w][0] - self.points[v][0]), w)

        return key(e) < key(old)


def solve_points(p: PointDrawing, coloring: Optional[EdgeColoring] = None) -> SolveReport:
    """Monochromatic plane spanning tree of a 2-colored point drawing."""
    color = coloring if coloring is not None else p.color
    if color.k != 2:
        raise ValueError(f"point solver handles exactly 2 colors, got k={color.k}")
    if color.n != p.n:
        raise ValueError("coloring size does not match point count")
    d = compile_points(p)
    solver = _Solver(p.points, d, color)
    checked: list[tuple[str, bool]] = []
    try:
        tree, col = solver.solve(frozenset(range(p.n)))
    except ProofContradiction as exc:
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            witness={"reason": str(exc), "n": p.n},
        )
    plane = is_plane(d, tree)
    spanning = is_spanning_tree(p.n, tree)
    mono = len(tree_colors(color, tree)) == 1
    checked += [("output-plane", plane), ("output-spanning-tree", spanning), ("output-monochromatic", mono)]
    if not (plane and spanning and mono):
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            tree=tree,
            checked_invariants=tuple(checked),
            witness={"reason": "output predicates failed"},
        )
    assert col is not None
    return SolveReport(
        status=STATUS_TREE_FOUND,
        tree=tree,
        avoided_colors=frozenset({1 - col}),
        checked_invariants=tuple(checked),
        witness={"tree_color": col},
    )
