"""Hypochromatic spanning trees in many-colored monotone drawings.

With every edge x-monotone, an x-contiguous group of vertices spans an
x-slab, and edges inside disjoint slabs cannot cross.  The solver
partitions the x-order into overlapping groups of at most d+1 vertices
(consecutive groups share one vertex), so trees found per group union
into a spanning tree of the whole drawing.

Two passes: first each group is searched for a monochromatic plane
spanning tree and the colors found are kept; since there are fewer
groups than colors, some color r remains removable.  Then each group
reuses its monochromatic tree or finds a plane spanning tree in the
2-coloring that merges everything but r, which exists whenever the
group is small enough for the exhaustive small-drawing guarantee
(groups of at most 7 vertices, hence the default d = 6).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    Drawing,
    EdgeColoring,
    SolveReport,
    STATUS_COUNTEREXAMPLE,
    STATUS_TREE_FOUND,
    edge,
    induced_subdrawing,
    is_plane,
    is_spanning_tree,
    merge_colors,
    tree_colors,
)
from .search import find_plane_tree
from .straightline import PointDrawing, compile_points, x_order

DEFAULT_GROUP_SPAN = 6
MAX_GROUP_SPAN = 6  # groups of d+1 <= 7 vertices keep the exhaustive guarantee

PROVENANCE_POINTS = "compiled-from-points"
PROVENANCE_TRUSTED = "trusted-crossing-set"


@dataclass(frozen=True)
class MonotoneDrawing:
    """A drawing with a designated x-order of its vertices.

    Trusted crossing-set inputs must satisfy the slab property (edges
    of x-disjoint vertex ranges never cross); inputs compiled from
    points satisfy it by construction.
    """

    drawing: Drawing
    x_order: tuple[int, ...]
    provenance: str = PROVENANCE_TRUSTED

    def __post_init__(self) -> None:
        if sorted(self.x_order) != list(range(self.drawing.n)):
            raise ValueError("x_order must be a permutation of the vertices")
        if self.provenance not in (PROVENANCE_POINTS, PROVENANCE_TRUSTED):
            raise ValueError(f"unknown provenance {self.provenance!r}")

    @classmethod
    def from_points(cls, p: PointDrawing) -> "MonotoneDrawing":
        return cls(compile_points(p), tuple(x_order(p.points)), PROVENANCE_POINTS)

    @property
    def n(self) -> int:
        return self.drawing.n


def colors_needed(n: int) -> int:
    """Colors for which the group argument applies at span 6: ceil((n+5)/6)."""
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    return (n + 5 + 5) // 6


def group_partition(n: int, d: int = DEFAULT_GROUP_SPAN) -> list[tuple[int, ...]]:
    """x-rank groups of span d: ranks (d*i .. d*i+d), overlapping by one.

    Returns k-1 groups where k = ceil((n-1)/d) + 1; the last group may
    be shorter, and consecutive groups share exactly the rank d*(i+1).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    if d < 2:
        raise ValueError(f"need d >= 2, got d={d}")
    k = -(-(n - 1) // d) + 1
    groups = []
    for i in range(k - 1):
        lo = d * i
        hi = min(d * i + d, n - 1)
        groups.append(tuple(range(lo, hi + 1)))
    return groups


def solve_monotone(
    dr: MonotoneDrawing,
    c: EdgeColoring,
    d: int = DEFAULT_GROUP_SPAN,
    allow_large: bool = False,
) -> SolveReport:
    """Plane spanning tree avoiding at least one color.

    Requires c.k >= ceil((n-1)/d) + 1 colors and a group span d <= 6 so
    that every group admits the exhaustive small-drawing search.
    """
    n = dr.n
    if c.n != n:
        raise ValueError("coloring size does not match drawing")
    if not 2 <= d <= MAX_GROUP_SPAN:
        raise ValueError(
            f"group span d={d} unsupported: groups of d+1 > {MAX_GROUP_SPAN + 1} vertices "
            f"have no verified small-instance guarantee"
        )
    k = -(-(n - 1) // d) + 1
    if c.k < k:
        raise ValueError(f"need at least {k} colors for n={n}, d={d}; got k={c.k}")

    groups = group_partition(n, d)
    group_vertices = [tuple(dr.x_order[r] for r in g) for g in groups]
    induced = [induced_subdrawing(dr.drawing, c, gv) for gv in group_vertices]

    # First pass: note which colors own a monochromatic tree somewhere.
    keep: set[int] = set()
    cached: list[Optional[SolveReport]] = []
    for sub_d, sub_c in induced:
        assert sub_c is not None
        rep = find_plane_tree(sub_d, sub_c, mode="monochromatic", allow_large=allow_large)
        if rep.status == STATUS_TREE_FOUND:
            col = tree_colors(sub_c, rep.tree).pop()
            keep.add(col)
            cached.append(rep)
        else:
            cached.append(None)

    removable = [col for col in range(c.k) if col not in keep]
    if not removable:
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            witness={
                "reason": "every color owns a monochromatic group tree, "
                "but the group count bounds the kept colors below k",
                "kept": sorted(keep),
                "k": c.k,
            },
        )
    removed = removable[0]

    # Second pass: a tree avoiding the removed color for every group.
    union = set()
    group_trees = []
    for gi, ((sub_d, sub_c), rep) in enumerate(zip(induced, cached)):
        assert sub_c is not None
        if rep is None:
            merged = merge_colors(sub_c, keep=removed)
            rep = find_plane_tree(sub_d, merged, mode="monochromatic", color=1, allow_large=allow_large)
            if rep.status != STATUS_TREE_FOUND:
                return SolveReport(
                    status=STATUS_COUNTEREXAMPLE,
                    witness={
                        "reason": "a small group has neither a monochromatic plane "
                        "spanning tree nor one avoiding the removed color",
                        "group_index": gi,
                        "group_vertices": list(group_vertices[gi]),
                        "removed_color": removed,
                        "group_coloring": {f"{u}-{v}": col for (u, v), col in sub_c.as_map().items()},
                    },
                )
        assert rep.tree is not None
        gv = group_vertices[gi]
        mapped = frozenset(edge(gv[a], gv[b]) for a, b in rep.tree)
        group_trees.append(sorted(mapped))
        union |= mapped

    tree = frozenset(union)
    plane = is_plane(dr.drawing, tree)
    spanning = is_spanning_tree(n, tree)
    used = tree_colors(c, tree)
    avoids = removed not in used
    slab_ok = True
    if dr.provenance == PROVENANCE_POINTS:
        # Edges of distinct groups never cross: x-slab disjointness.
        owner: dict = {}
        for gi, t in enumerate(group_trees):
            for e in t:
                owner[e] = gi
        for e, f in dr.drawing.crossings:
            if e in owner and f in owner and owner[e] != owner[f]:
                slab_ok = False
    checked = (
        ("output-plane", plane),
        ("output-spanning-tree", spanning),
        ("avoids-removed-color", avoids),
        ("slab-disjointness", slab_ok),
    )
    if not (plane and spanning and avoids and slab_ok):
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            tree=tree,
            checked_invariants=checked,
            witness={"reason": "union predicates failed", "removed_color": removed},
        )
    return SolveReport(
        status=STATUS_TREE_FOUND,
        tree=tree,
        avoided_colors=frozenset(range(c.k)) - used,
        checked_invariants=checked,
        witness={
            "removed_color": removed,
            "kept_colors": sorted(keep),
            "groups": [list(gv) for gv in group_vertices],
            "group_trees": [[list(e) for e in t] for t in group_trees],
        },
    )
