"""Brute-force engine: spanning-tree enumeration and exhaustive checks.

Spanning trees of K_n are enumerated through the bijection with
length-(n-2) vertex sequences, so each labeled tree appears exactly
once and "first tree found" is deterministic (lexicographic sequence
order).  On top of the enumeration sit three users:

* ``find_plane_tree`` — first plane spanning tree satisfying a color
  predicate (monochromatic / avoid one color / hypochromatic);
* ``nonspanning_fallback`` — when a color class is disconnected, a
  plane spanning tree avoiding it always exists, and the search finds
  one;
* ``verify_all_colorings`` — for a fixed small drawing, confirm that
  every 2-edge-coloring (up to swapping the two colors) admits a
  monochromatic plane spanning tree.

The verifier's inner loop works on bitmasks over the edge ranks of
K_n: candidate trees and color classes become integers and the
planarity test is a precomputed conflict table.
"""

from __future__ import annotations

import functools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import (
    Drawing,
    Edge,
    EdgeColoring,
    EdgeSet,
    SolveReport,
    STATUS_COUNTEREXAMPLE,
    STATUS_NOT_APPLICABLE,
    STATUS_TREE_FOUND,
    all_edges,
    color_class_components,
    edge,
    edge_index,
)

ENUMERATION_LIMIT = 10
DESK_SCALE_LIMIT = 6
LONG_RUN_ENV = "PLANETREES_LONG_RUN"
JOBS_ENV = "PLANETREES_JOBS"


def _decode_tree(n: int, seq: tuple[int, ...]) -> frozenset[Edge]:
    """Labeled tree on 0..n-1 from its length-(n-2) vertex sequence."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    ptr = 0
    leaf = -1
    for x in seq:
        if leaf < 0:
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
        edges.append(edge(leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            leaf = -1
    u = degree.index(1)
    v = degree.index(1, u + 1)
    edges.append(edge(u, v))
    return frozenset(edges)


def enumerate_spanning_trees(n: int, allow_large: bool = False) -> Iterator[EdgeSet]:
    """Yield every labeled spanning tree of K_n exactly once.

    Streams n^(n-2) trees in lexicographic order of their defining
    vertex sequences.  Refuses n > 10 unless ``allow_large`` is set.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    if n > ENUMERATION_LIMIT and not allow_large:
        raise ValueError(
            f"refusing to enumerate n^(n-2) = {n}^{n - 2} spanning trees for n={n}; "
            f"pass allow_large=True to override"
        )
    if n == 2:
        yield frozenset({(0, 1)})
        return
    seq = [0] * (n - 2)
    while True:
        yield _decode_tree(n, tuple(seq))
        i = n - 3
        while i >= 0 and seq[i] == n - 1:
            seq[i] = 0
            i -= 1
        if i < 0:
            return
        seq[i] += 1


@functools.lru_cache(maxsize=8)
def _tree_masks(n: int) -> tuple[int, ...]:
    """All spanning trees of K_n as edge-rank bitmasks (n <= 7 only)."""
    masks = []
    for tree in enumerate_spanning_trees(n):
        m = 0
        for e in tree:
            m |= 1 << edge_index(n, e)
        masks.append(m)
    return tuple(masks)


def _mask_to_edges(n: int, mask: int) -> EdgeSet:
    ranked = all_edges(n)
    return frozenset(e for i, e in enumerate(ranked) if mask >> i & 1)


def _conflict_masks(d: Drawing) -> list[int]:
    """conflict[i] = bitmask of edges crossing the edge of rank i."""
    m = d.n * (d.n - 1) // 2
    conflict = [0] * m
    for e, f in d.crossings:
        ie, jf = edge_index(d.n, e), edge_index(d.n, f)
        conflict[ie] |= 1 << jf
        conflict[jf] |= 1 << ie
    return conflict


def _mask_is_plane(mask: int, conflict: list[int]) -> bool:
    rest = mask
    while rest:
        low = rest & -rest
        i = low.bit_length() - 1
        if conflict[i] & mask:
            return False
        rest ^= low
    return True


def _iter_tree_masks(n: int, allow_large: bool) -> Iterator[int]:
    if n <= 7:
        yield from _tree_masks(n)
        return
    for tree in enumerate_spanning_trees(n, allow_large=allow_large):
        m = 0
        for e in tree:
            m |= 1 << edge_index(n, e)
        yield m


def find_plane_tree(
    d: Drawing,
    c: EdgeColoring,
    mode: str = "monochromatic",
    color: Optional[int] = None,
    allow_large: bool = False,
) -> SolveReport:
    """First plane spanning tree satisfying a color predicate.

    ``mode`` is one of ``monochromatic`` (one color; a specific one if
    ``color`` is given), ``avoid`` (no edge of ``color``), or
    ``hypochromatic`` (at least one of the k colors unused).  Returns a
    counterexample-candidate report when the exhaustive scan finds
    nothing.
    """
    if mode not in ("monochromatic", "avoid", "hypochromatic"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "avoid" and color is None:
        raise ValueError("avoid mode needs a color")
    if color is not None and not 0 <= color < c.k:
        raise ValueError(f"color {color} out of range 0..{c.k - 1}")
    n = d.n
    conflict = _conflict_masks(d)
    class_masks = [0] * c.k
    for i, col in enumerate(c.colors):
        class_masks[col] |= 1 << i
    full = (1 << (n * (n - 1) // 2)) - 1

    def satisfies(mask: int) -> Optional[frozenset[int]]:
        # Returns the avoided color set on success, None otherwise.
        if mode == "monochromatic":
            if color is not None:
                if mask & ~class_masks[color] == 0:
                    return frozenset(range(c.k)) - {color}
                return None
            for col, cm in enumerate(class_masks):
                if mask & ~cm == 0:
                    return frozenset(range(c.k)) - {col}
            return None
        if mode == "avoid":
            if mask & class_masks[color] == 0:
                return frozenset({color})
            return None
        used = {col for col, cm in enumerate(class_masks) if mask & cm}
        if len(used) < c.k:
            return frozenset(range(c.k)) - used
        return None

    for mask in _iter_tree_masks(n, allow_large):
        avoided = satisfies(mask)
        if avoided is None:
            continue
        if _mask_is_plane(mask, conflict):
            tree = _mask_to_edges(n, mask)
            return SolveReport(
                status=STATUS_TREE_FOUND,
                tree=tree,
                avoided_colors=avoided,
                checked_invariants=(("plane", True), ("spanning-tree", True)),
                witness={"mode": mode, "color": color},
            )
    return SolveReport(
        status=STATUS_COUNTEREXAMPLE,
        witness={
            "reason": "exhaustive scan found no plane spanning tree for the predicate",
            "mode": mode,
            "color": color,
            "n": n,
        },
    )


def nonspanning_fallback(d: Drawing, c: EdgeColoring, allow_large: bool = False) -> SolveReport:
    """Plane spanning tree avoiding a disconnected color class.

    When some color class does not connect all vertices, the remaining
    edges contain a complete bipartite subdrawing and a plane spanning
    tree avoiding that class always exists; this finds one by search.
    Returns not-applicable when every class is spanning.
    """
    bad = None
    for col in range(c.k):
        if len(color_class_components(d.n, c, col)) > 1:
            bad = col
            break
    if bad is None:
        return SolveReport(
            status=STATUS_NOT_APPLICABLE,
            witness={"reason": "every color class is spanning"},
        )
    report = find_plane_tree(d, c, mode="avoid", color=bad, allow_large=allow_large)
    if report.status != STATUS_TREE_FOUND:
        return SolveReport(
            status=STATUS_COUNTEREXAMPLE,
            witness={
                "reason": "no plane spanning tree avoids a non-spanning color class",
                "color": bad,
                "n": d.n,
            },
        )
    return report


@dataclass(frozen=True)
class VerifyReport:
    """Aggregate outcome of an exhaustive 2-coloring verification."""

    n: int
    colorings_checked: int
    failures: tuple[dict, ...] = ()
    plane_tree_count: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


def _plane_tree_mask_list(d: Drawing) -> list[int]:
    conflict = _conflict_masks(d)
    return [m for m in _iter_tree_masks(d.n, allow_large=True) if _mask_is_plane(m, conflict)]


def _verify_range(d: Drawing, start: int, stop: int, plane_masks: Optional[list[int]] = None) -> tuple[int, list[int]]:
    """Check colorings with index in [start, stop); returns count and failing indices.

    Coloring index bits are the colors of the edges after (0,1), whose
    color is fixed to 0 (global color swap symmetry).
    """
    if plane_masks is None:
        plane_masks = _plane_tree_mask_list(d)
    if not plane_masks:
        # Cannot happen for valid drawings (stars are pairwise adjacent,
        # hence always plane) but keeps malformed input honest.
        return stop - start, list(range(start, stop))
    failures = []
    checked = 0
    cached = plane_masks[0]
    for idx in range(start, stop):
        coloring_mask = idx << 1
        checked += 1
        hit = cached & coloring_mask == 0 or cached & coloring_mask == cached
        if not hit:
            for t in plane_masks:
                inter = t & coloring_mask
                if inter == 0 or inter == t:
                    cached = t
                    hit = True
                    break
        if not hit:
            failures.append(idx)
    return checked, failures


def _verify_range_star(args) -> tuple[int, list[int]]:
    d, start, stop = args
    return _verify_range(d, start, stop)


def _coloring_from_index(n: int, idx: int) -> EdgeColoring:
    m = n * (n - 1) // 2
    colors = [0] * m
    for i in range(1, m):
        colors[i] = idx >> (i - 1) & 1
    return EdgeColoring(n, 2, tuple(colors))


def long_run_enabled() -> bool:
    return os.environ.get(LONG_RUN_ENV, "").strip() not in ("", "0", "false")


def verify_all_colorings(
    d: Drawing,
    long_run: bool = False,
    jobs: int = 1,
) -> VerifyReport:
    """Check all 2-edge-colorings of a drawing for monochromatic plane trees.

    The color of edge (0,1) is fixed to 0, so 2^(C(n,2)-1) colorings are
    examined.  Any coloring without a monochromatic plane spanning tree
    is reported verbatim in the failures list.

    Exhaustive runs with n >= 7 are refused unless ``long_run`` is set
    (or the PLANETREES_LONG_RUN environment variable enables it): at
    n=7 a single drawing already needs 2^20 colorings, and at n=8 there
    are 5,370,725 weak isomorphism classes of drawings with more than
    10^8 colorings each, far beyond desk scale.
    """
    if d.n > DESK_SCALE_LIMIT and not (long_run or long_run_enabled()):
        raise ValueError(
            f"refusing exhaustive verification for n={d.n} > {DESK_SCALE_LIMIT} "
            f"without the long-run flag"
        )
    m = d.n * (d.n - 1) // 2
    total = 1 << (m - 1)
    plane_masks = _plane_tree_mask_list(d)
    if jobs <= 1:
        checked, failing = _verify_range(d, 0, total, plane_masks)
    else:
        bounds = [total * i // jobs for i in range(jobs + 1)]
        chunks = [(d, bounds[i], bounds[i + 1]) for i in range(jobs) if bounds[i] < bounds[i + 1]]
        checked = 0
        failing = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part_checked, part_failing in pool.map(_verify_range_star, chunks):
                checked += part_checked
                failing.extend(part_failing)
        failing.sort()
    failures = tuple(
        {"coloring_index": idx, "coloring": _coloring_from_index(d.n, idx).as_map()}
        for idx in failing
    )
    return VerifyReport(
        n=d.n,
        colorings_checked=checked,
        failures=failures,
        plane_tree_count=len(plane_masks),
    )


@dataclass(frozen=True)
class ClassFileReport:
    """Per-record results of verifying a file of crossing-set records."""

    records_verified: int
    colorings_checked: int
    failures: tuple[tuple[int, dict], ...] = ()
    first_record: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_class_file(
    path: str,
    long_run: bool = False,
    jobs: int = 1,
    start_index: int = 0,
) -> ClassFileReport:
    """Run verify_all_colorings on every drawing record of a class file.

    Each line is ``n;<crossing pairs comma-separated>``.  Verification
    is resumable via ``start_index`` (0-based record number).
    """
    from .formats import parse_class_file

    records = parse_class_file(path)
    verified = 0
    colorings = 0
    failures: list[tuple[int, dict]] = []
    for rec_no, drawing in enumerate(records):
        if rec_no < start_index:
            continue
        report = verify_all_colorings(drawing, long_run=long_run, jobs=jobs)
        verified += 1
        colorings += report.colorings_checked
        for fail in report.failures:
            failures.append((rec_no, fail))
    return ClassFileReport(
        records_verified=verified,
        colorings_checked=colorings,
        failures=tuple(failures),
        first_record=start_index,
    )
