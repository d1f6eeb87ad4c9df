"""2-page book drawings and their monochromatic spanning-tree solver.

In a book drawing all vertices sit on a line (the spine) and every
edge runs entirely above or below it.  Two edges cross exactly when
they are on the same page and their endpoints interleave along the
spine, which makes the compiled crossing set purely combinatorial.

The solver peels off vertices that are incident to uncrossed edges of
both colors, takes the (necessarily monochromatic) residual spine
path, and re-attaches the peeled vertices in reverse order by their
same-colored uncrossed edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    Drawing,
    Edge,
    EdgeColoring,
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

PAGE_TOP = "top"
PAGE_BOTTOM = "bottom"


@dataclass(frozen=True)
class BookLayout:
    """Spine order, a page per edge, and an edge coloring."""

    spine: tuple[int, ...]
    pages: tuple[str, ...]  # indexed like EdgeColoring.colors
    color: EdgeColoring

    def __post_init__(self) -> None:
        n = len(self.spine)
        if sorted(self.spine) != list(range(n)):
            raise ValueError("spine must be a permutation of 0..n-1")
        m = n * (n - 1) // 2
        if len(self.pages) != m:
            raise ValueError(f"expected {m} page assignments, got {len(self.pages)}")
        for p in self.pages:
            if p not in (PAGE_TOP, PAGE_BOTTOM):
                raise ValueError(f"unknown page {p!r}")
        if self.color.n != n:
            raise ValueError("coloring vertex count does not match spine")

    @property
    def n(self) -> int:
        return len(self.spine)

    @classmethod
    def from_maps(cls, spine: tuple[int, ...], page_map: dict[Edge, str], color: EdgeColoring) -> "BookLayout":
        n = len(spine)
        pages = []
        for e in all_edges(n):
            if e not in page_map:
                raise ValueError(f"page assignment missing edge {e}")
            pages.append(page_map[e])
        return cls(spine, tuple(pages), color)

    def page_of(self, e: Edge) -> str:
        from .core import edge_index

        return self.pages[edge_index(self.n, edge(*e))]


def _interleave(pos: dict[int, int], e: Edge, f: Edge) -> bool:
    """Endpoints alternate along the spine (independent edges only)."""
    a, b = sorted((pos[e[0]], pos[e[1]]))
    c, d = sorted((pos[f[0]], pos[f[1]]))
    return a < c < b < d or c < a < d < b


def compile_book(layout: BookLayout) -> Drawing:
    """Crossing set and rotations of a book drawing.

    Crossings are exactly the same-page spine-interleaving pairs.  The
    rotation of a vertex walks counterclockwise from the spine
    direction: top edges to the right by increasing distance, top
    edges to the left by increasing position, then the mirrored bottom
    blocks.
    """
    n = layout.n
    pos = {v: i for i, v in enumerate(layout.spine)}
    edges = all_edges(n)
    crossings = set()
    for i, e in enumerate(edges):
        for f in edges[i + 1 :]:
            if set(e) & set(f):
                continue
            if layout.page_of(e) == layout.page_of(f) and _interleave(pos, e, f):
                crossings.add(crossing_pair(e, f))
    rotations = []
    for v in range(n):
        pv = pos[v]
        others = [w for w in range(n) if w != v]
        right_top = sorted((w for w in others if pos[w] > pv and layout.page_of(edge(v, w)) == PAGE_TOP), key=lambda w: pos[w])
        left_top = sorted((w for w in others if pos[w] < pv and layout.page_of(edge(v, w)) == PAGE_TOP), key=lambda w: pos[w])
        left_bottom = sorted((w for w in others if pos[w] < pv and layout.page_of(edge(v, w)) == PAGE_BOTTOM), key=lambda w: -pos[w])
        right_bottom = sorted((w for w in others if pos[w] > pv and layout.page_of(edge(v, w)) == PAGE_BOTTOM), key=lambda w: -pos[w])
        rotations.append(tuple(right_top + left_top + left_bottom + right_bottom))
    labels = tuple(f"spine:{pos[v]}" for v in range(n))
    return Drawing(n, frozenset(crossings), tuple(rotations), labels)


def _uncrossed_edges_at(
    d: Drawing, vertices: list[int], v: int, partners: dict[Edge, frozenset[Edge]]
) -> list[Edge]:
    """Edges at v that cross nothing within the induced vertex set."""
    alive = set(vertices)
    result = []
    for w in vertices:
        if w == v:
            continue
        e = edge(v, w)
        if all(not set(f) <= alive for f in partners.get(e, ())):
            result.append(e)
    return result


def solve_book(layout: BookLayout, coloring: Optional[EdgeColoring] = None) -> SolveReport:
    """Monochromatic plane spanning tree of a 2-colored book drawing.

    Peels vertices incident to uncrossed edges of both colors (lowest
    spine position first), asserts the residual spine path is uncrossed
    and monochromatic, then re-attaches the peeled vertices in inverse
    order by an uncrossed edge matching the tree's color.
    """
    color = coloring if coloring is not None else layout.color
    if color.k != 2:
        raise ValueError(f"book solver handles exactly 2 colors, got k={color.k}")
    if color.n != layout.n:
        raise ValueError("coloring size does not match layout")
    d = compile_book(layout)
    n = layout.n
    pos = {v: i for i, v in enumerate(layout.spine)}
    partners = d.crossing_partners()

    alive = sorted(range(n), key=lambda v: pos[v])
    removed: list[tuple[int, dict[int, Edge]]] = []
    while True:
        candidate = None
        for v in alive:  # alive is kept in spine order: lowest position first
            byc: dict[int, Edge] = {}
            for e in _uncrossed_edges_at(d, alive, v, partners):
                c = color.color_of_edge(e)
                if c not in byc or _nearer(pos, v, e, byc[c]):
                    byc[c] = e
            if len(byc) == 2:
                candidate = (v, byc)
                break
        if candidate is None:
            break
        v, byc = candidate
        removed.append((v, byc))
        alive.remove(v)

    checked: list[tuple[str, bool]] = []
    path_edges = [edge(alive[i], alive[i + 1]) for i in range(len(alive) - 1)]
    alive_set = set(alive)
    path_uncrossed = all(
        not any(set(f) <= alive_set for f in partners.get(e, ())) for e in path_edges
    )
    checked.append(("residual-path-uncrossed", path_uncrossed))
    path_colors = {color.color_of_edge(e) for e in path_edges}
    path_mono = len(path_colors) <= 1
    checked.append(("residual-path-monochromatic", path_mono))
    if not (path_uncrossed and path_mono):
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            checked_invariants=tuple(checked),
            witness={
                "reason": "residual spine path violates the peeling argument",
                "residual_spine": alive,
                "path_colors": sorted(path_colors),
            },
        )

    tree = set(path_edges)
    tree_color = next(iter(path_colors)) if path_colors else None
    for v, byc in reversed(removed):
        if tree_color is None:
            tree_color = min(byc)
        attach = byc.get(tree_color)
        if attach is None:
            return SolveReport(
                status=STATUS_COUNTEREXAMPLE,
                checked_invariants=tuple(checked),
                witness={"reason": "re-attachment impossible", "vertex": v},
            )
        tree.add(attach)

    result = frozenset(tree)
    plane = is_plane(d, result)
    spanning = is_spanning_tree(n, result)
    mono = len(tree_colors(color, result)) == 1
    checked += [("output-plane", plane), ("output-spanning-tree", spanning), ("output-monochromatic", mono)]
    if not (plane and spanning and mono):
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            tree=result,
            checked_invariants=tuple(checked),
            witness={"reason": "output predicates failed"},
        )
    assert tree_color is not None
    return SolveReport(
        status=STATUS_TREE_FOUND,
        tree=result,
        avoided_colors=frozenset({1 - tree_color}),
        checked_invariants=tuple(checked),
        witness={"tree_color": tree_color, "removed_vertices": [v for v, _ in removed]},
    )


def _nearer(pos: dict[int, int], v: int, e: Edge, old: Edge) -> bool:
    """Prefer the uncrossed edge to the nearer spine neighbor."""

    def dist(x: Edge) -> tuple[int, int]:
        w = x[0] if x[1] == v else x[1]
        return abs(pos[w] - pos[v]), w

    return dist(e) < dist(old)
