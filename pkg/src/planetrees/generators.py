"""Seeded instance generators for every drawing class.

All generators are deterministic functions of their seed (each builds
its own ``random.Random``), so identical seeds reproduce identical
instances byte-for-byte after serialization.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .book import PAGE_BOTTOM, PAGE_TOP, BookLayout
from .core import EdgeColoring
from .cylindrical import TURN, CylindricalLayout, NotSimpleError, compile_layout
from .straightline import PointDrawing, orient


class GenerationError(RuntimeError):
    """A rejection-sampled generator ran out of attempts."""


def gen_coloring(n: int, k: int, seed: int) -> EdgeColoring:
    """Uniform random coloring; every class nonempty when C(n,2) >= k."""
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    if k < 2:
        raise ValueError(f"need k >= 2, got k={k}")
    rng = random.Random(f"coloring:{n}:{k}:{seed}")
    m = n * (n - 1) // 2
    for _ in range(100):
        colors = tuple(rng.randrange(k) for _ in range(m))
        if m < k or len(set(colors)) == k:
            return EdgeColoring(n, k, colors)
    # Force one edge per class, fill the rest uniformly.
    slots = list(range(m))
    rng.shuffle(slots)
    forced = {slot: col for col, slot in enumerate(slots[:k])}
    colors = tuple(forced.get(i, rng.randrange(k)) for i in range(m))
    return EdgeColoring(n, k, colors)


def _distinct_angles(rng: random.Random, count: int, resolution: int) -> tuple[Fraction, ...]:
    ticks = sorted(rng.sample(range(resolution), count))
    return tuple(Fraction(2 * t, resolution) for t in ticks)


def gen_cylindrical(
    n_inner: int,
    n_outer: int,
    seed: int,
    k: int = 2,
    wrap_prob: float = 0.15,
    max_resamples: int = 64,
) -> CylindricalLayout:
    """Random annulus layout accepted by the simplicity check.

    Windings start from the minimal representative of the angle
    difference and occasionally gain or lose a full turn; candidates
    are re-sampled until the compiled drawing is simple, with the wrap
    probability decaying to zero so the final attempts are the always
    simple minimal-winding layout.  Gives up with a diagnostic after
    ``max_resamples`` attempts.
    """
    n = n_inner + n_outer
    if n < 2:
        raise ValueError("need at least 2 vertices in total")
    rng = random.Random(f"cylindrical:{n_inner}:{n_outer}:{seed}")
    resolution = max(8 * n * n, 64)
    color = gen_coloring(n, k, seed)
    last_error = "no attempt made"
    for attempt in range(max_resamples):
        inner = _distinct_angles(rng, n_inner, resolution)
        outer = _distinct_angles(rng, n_outer, resolution)
        p_wrap = wrap_prob * max(0.0, 1.0 - attempt / max(1, max_resamples // 2))
        windings = []
        for i in range(n_inner):
            row = []
            for j in range(n_outer):
                base = (outer[j] - inner[i]) % TURN
                if rng.random() < p_wrap:
                    base += TURN if rng.random() < 0.5 else -TURN
                row.append(base)
            windings.append(tuple(row))
        layout = CylindricalLayout(inner, outer, tuple(windings), color)
        try:
            compile_layout(layout)
        except NotSimpleError as exc:
            last_error = str(exc)
            continue
        return layout
    raise GenerationError(
        f"no simple layout within {max_resamples} attempts "
        f"(n_inner={n_inner}, n_outer={n_outer}, seed={seed}); last rejection: {last_error}"
    )


def gen_book(n: int, seed: int, k: int = 2) -> BookLayout:
    """Random spine permutation and uniform page assignment."""
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    rng = random.Random(f"book:{n}:{seed}")
    spine = list(range(n))
    rng.shuffle(spine)
    m = n * (n - 1) // 2
    pages = tuple(PAGE_TOP if rng.random() < 0.5 else PAGE_BOTTOM for _ in range(m))
    return BookLayout(tuple(spine), pages, gen_coloring(n, k, seed))


def gen_points(n: int, seed: int, k: int = 2, max_resamples: int = 2000) -> PointDrawing:
    """Random general-position integer grid points.

    Points are added one at a time, rejecting any candidate that
    repeats an x-coordinate or closes a collinear triple; the grid
    grows with n to keep rejection workable.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    rng = random.Random(f"points:{n}:{seed}")
    grid = max(4 * n * n, 64)
    points: list[tuple[int, int]] = []
    attempts = 0
    while len(points) < n:
        attempts += 1
        if attempts > max_resamples:
            raise GenerationError(
                f"no general-position point set within {max_resamples} attempts "
                f"(n={n}, seed={seed})"
            )
        cand = (rng.randrange(grid), rng.randrange(grid))
        if any(cand[0] == p[0] for p in points):
            continue
        if any(
            orient(points[i], points[j], cand) == 0
            for i in range(len(points))
            for j in range(i + 1, len(points))
        ):
            continue
        points.append(cand)
    return PointDrawing(tuple(points), gen_coloring(n, k, seed))
