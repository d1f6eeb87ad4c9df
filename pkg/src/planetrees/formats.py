"""Line-oriented text formats for drawings, layouts, and colorings.

Every format is ASCII, human-diffable, and exact: angles and windings
are rationals in units of pi written as ``p/q``, point coordinates are
integers or plain rationals.  Serialization is canonical (edges and
crossing pairs sorted, rotations starting at the smallest neighbor),
so ``parse(serialize(x)) == x`` holds for every value.

Grammars (values in <>; ``#`` starts a comment; blank lines ignored):

    drawing n=<n>
    crossings:          (zero or more lines ``u-v w-x``)
    rotations:          (optional; lines ``v: a b c ...``)
    labels:             (optional; lines ``v: <tag>``)
    xorder: <v0> <v1> ...   (optional)
    colors: k=<k>       (optional; lines ``e u v : c``)

    coloring n=<n> k=<k>
    e <u> <v> : <c>     (one line per edge of K_n)

    cylindrical n_inner=<p> n_outer=<q>
    inner:              (lines ``v: p/q`` — angle in units of pi)
    outer:              (lines ``v: p/q``)
    windings:           (lines ``u w: p/q``)
    colors: k=<k>       (required; lines ``e u v : c``)

    book n=<n>
    spine: <v0> <v1> ...
    top: <u-v> ...      (edges on the top page, possibly none)
    bottom: <u-v> ...
    colors: k=<k>       (required)

    points n=<n>
    p <v>: <x> <y>      (one line per point)
    colors: k=<k>       (required)

Class files are one drawing per line, ``n;<crossing pairs comma-separated>``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .book import PAGE_BOTTOM, PAGE_TOP, BookLayout
from .core import Drawing, Edge, EdgeColoring, all_edges, crossing_pair, edge
from .cylindrical import CylindricalLayout
from .straightline import PointDrawing


class ParseError(ValueError):
    """Malformed input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class _Lines:
    """Token stream over non-blank, comment-stripped lines."""

    def __init__(self, text: str):
        self.items: list[tuple[int, str]] = []
        for i, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if line:
                self.items.append((i, line))
        self.pos = 0

    def peek(self) -> Optional[tuple[int, str]]:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self) -> tuple[int, str]:
        item = self.peek()
        if item is None:
            last = self.items[-1][0] if self.items else 0
            raise ParseError(last + 1, "unexpected end of input")
        self.pos += 1
        return item

    @property
    def exhausted(self) -> bool:
        return self.pos >= len(self.items)


def _parse_int(line_no: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, f"expected {what}, got {token!r}") from None


def _parse_header_fields(line_no: int, line: str, kind: str, fields: list[str]) -> list[int]:
    parts = line.split()
    if not parts or parts[0] != kind:
        raise ParseError(line_no, f"expected {kind!r} header, got {line!r}")
    if len(parts) != len(fields) + 1:
        raise ParseError(line_no, f"{kind} header needs fields {fields}")
    values = []
    for part, name in zip(parts[1:], fields):
        if not part.startswith(name + "="):
            raise ParseError(line_no, f"expected {name}=<int>, got {part!r}")
        values.append(_parse_int(line_no, part[len(name) + 1 :], f"{name} value"))
    return values


def _parse_edge_token(line_no: int, token: str, n: int) -> Edge:
    parts = token.split("-")
    if len(parts) != 2:
        raise ParseError(line_no, f"expected edge token u-v, got {token!r}")
    u = _parse_int(line_no, parts[0], "vertex")
    v = _parse_int(line_no, parts[1], "vertex")
    if u == v or not (0 <= u < n and 0 <= v < n):
        raise ParseError(line_no, f"edge {token!r} out of range for n={n}")
    return edge(u, v)


def parse_fraction(line_no: int, token: str) -> Fraction:
    try:
        if "/" in token:
            num, den = token.split("/", 1)
            return Fraction(int(num), int(den))
        return Fraction(int(token))
    except (ValueError, ZeroDivisionError):
        raise ParseError(line_no, f"expected rational p/q, got {token!r}") from None


def format_fraction(f: Union[int, Fraction]) -> str:
    f = Fraction(f)
    return f"{f.numerator}/{f.denominator}"


def _parse_color_lines(lines: _Lines, n: int, k: int) -> EdgeColoring:
    mapping: dict[Edge, int] = {}
    m = n * (n - 1) // 2
    while len(mapping) < m:
        line_no, line = lines.next()
        parts = line.split()
        if len(parts) != 5 or parts[0] != "e" or parts[3] != ":":
            raise ParseError(line_no, f"expected color line 'e u v : c', got {line!r}")
        u = _parse_int(line_no, parts[1], "vertex")
        v = _parse_int(line_no, parts[2], "vertex")
        c = _parse_int(line_no, parts[4], "color")
        if u == v or not (0 <= u < n and 0 <= v < n):
            raise ParseError(line_no, f"edge {u} {v} out of range for n={n}")
        e = edge(u, v)
        if e in mapping:
            raise ParseError(line_no, f"duplicate color for edge {e[0]}-{e[1]}")
        if not 0 <= c < k:
            raise ParseError(line_no, f"color index {c} out of range for k={k}")
        mapping[e] = c
    return EdgeColoring.from_map(n, k, mapping)


def _serialize_color_lines(c: EdgeColoring) -> list[str]:
    return [f"e {u} {v} : {c.color_of(u, v)}" for u, v in all_edges(c.n)]


def _parse_colors_section(lines: _Lines, n: int) -> EdgeColoring:
    line_no, line = lines.next()
    parts = line.split()
    if len(parts) != 2 or parts[0] != "colors:" or not parts[1].startswith("k="):
        raise ParseError(line_no, f"expected 'colors: k=<k>', got {line!r}")
    k = _parse_int(line_no, parts[1][2:], "k value")
    return _parse_color_lines(lines, n, k)


# ---------------------------------------------------------------------------
# Drawing
# ---------------------------------------------------------------------------


def serialize_drawing(
    d: Drawing,
    coloring: Optional[EdgeColoring] = None,
    x_order: Optional[tuple[int, ...]] = None,
) -> str:
    out = [f"drawing n={d.n}", "crossings:"]
    for e, f in sorted(d.crossings):
        out.append(f"{e[0]}-{e[1]} {f[0]}-{f[1]}")
    if d.rotations is not None:
        out.append("rotations:")
        for v, rot in enumerate(d.rotations):
            out.append(f"{v}: " + " ".join(str(w) for w in rot))
    if d.vertex_labels is not None:
        out.append("labels:")
        for v, tag in enumerate(d.vertex_labels):
            out.append(f"{v}: {tag}")
    if x_order is not None:
        out.append("xorder: " + " ".join(str(v) for v in x_order))
    if coloring is not None:
        out.append(f"colors: k={coloring.k}")
        out.extend(_serialize_color_lines(coloring))
    return "\n".join(out) + "\n"


def parse_drawing(
    text: str,
) -> tuple[Drawing, Optional[EdgeColoring], Optional[tuple[int, ...]]]:
    lines = _Lines(text)
    line_no, line = lines.next()
    (n,) = _parse_header_fields(line_no, line, "drawing", ["n"])
    crossings: set = set()
    rotations: Optional[list] = None
    labels: Optional[dict[int, str]] = None
    x_order: Optional[tuple[int, ...]] = None
    coloring: Optional[EdgeColoring] = None
    section = None
    while not lines.exhausted:
        line_no, line = lines.next()
        head = line.split()[0]
        if head == "crossings:":
            section = "crossings"
            continue
        if head == "rotations:":
            section = "rotations"
            rotations = [None] * n
            continue
        if head == "labels:":
            section = "labels"
            labels = {}
            continue
        if head == "xorder:":
            toks = line.split()[1:]
            x_order = tuple(_parse_int(line_no, t, "vertex") for t in toks)
            if sorted(x_order) != list(range(n)):
                raise ParseError(line_no, "xorder must be a permutation of the vertices")
            section = None
            continue
        if head == "colors:":
            lines.pos -= 1
            coloring = _parse_colors_section(lines, n)
            section = None
            continue
        if section == "crossings":
            toks = line.split()
            if len(toks) != 2:
                raise ParseError(line_no, f"expected crossing pair 'u-v w-x', got {line!r}")
            e = _parse_edge_token(line_no, toks[0], n)
            f = _parse_edge_token(line_no, toks[1], n)
            pair = crossing_pair(e, f)
            if pair in crossings:
                raise ParseError(line_no, f"duplicate crossing pair {line!r}")
            crossings.add(pair)
            continue
        if section == "rotations":
            v_tok, _, rest = line.partition(":")
            v = _parse_int(line_no, v_tok.strip(), "vertex")
            if not 0 <= v < n:
                raise ParseError(line_no, f"rotation vertex {v} out of range")
            rot = tuple(_parse_int(line_no, t, "vertex") for t in rest.split())
            assert rotations is not None
            rotations[v] = rot
            continue
        if section == "labels":
            v_tok, _, rest = line.partition(":")
            v = _parse_int(line_no, v_tok.strip(), "vertex")
            assert labels is not None
            labels[v] = rest.strip()
            continue
        raise ParseError(line_no, f"unexpected line {line!r}")
    rot_tuple = None
    if rotations is not None:
        missing = [v for v, r in enumerate(rotations) if r is None]
        if missing:
            raise ParseError(0, f"rotations section missing vertex {missing[0]}")
        rot_tuple = tuple(rotations)
    label_tuple = None
    if labels is not None:
        if sorted(labels) != list(range(n)):
            raise ParseError(0, "labels section must cover every vertex")
        label_tuple = tuple(labels[v] for v in range(n))
    return Drawing(n, frozenset(crossings), rot_tuple, label_tuple), coloring, x_order


# ---------------------------------------------------------------------------
# EdgeColoring
# ---------------------------------------------------------------------------


def serialize_coloring(c: EdgeColoring) -> str:
    out = [f"coloring n={c.n} k={c.k}"]
    out.extend(_serialize_color_lines(c))
    return "\n".join(out) + "\n"


def parse_coloring(text: str) -> EdgeColoring:
    lines = _Lines(text)
    line_no, line = lines.next()
    n, k = _parse_header_fields(line_no, line, "coloring", ["n", "k"])
    coloring = _parse_color_lines(lines, n, k)
    if not lines.exhausted:
        line_no, line = lines.next()
        raise ParseError(line_no, f"unexpected trailing line {line!r}")
    return coloring


# ---------------------------------------------------------------------------
# CylindricalLayout
# ---------------------------------------------------------------------------


def serialize_cylindrical(layout: CylindricalLayout) -> str:
    p = layout.n_inner
    out = [f"cylindrical n_inner={p} n_outer={layout.n_outer}"]
    out.append("inner:")
    for i, a in enumerate(layout.inner_angles):
        out.append(f"{i}: {format_fraction(a)}")
    out.append("outer:")
    for j, a in enumerate(layout.outer_angles):
        out.append(f"{p + j}: {format_fraction(a)}")
    out.append("windings:")
    for i in range(p):
        for j in range(layout.n_outer):
            out.append(f"{i} {p + j}: {format_fraction(layout.windings[i][j])}")
    out.append(f"colors: k={layout.color.k}")
    out.extend(_serialize_color_lines(layout.color))
    return "\n".join(out) + "\n"


def parse_cylindrical(text: str) -> CylindricalLayout:
    lines = _Lines(text)
    line_no, line = lines.next()
    p, q = _parse_header_fields(line_no, line, "cylindrical", ["n_inner", "n_outer"])
    n = p + q

    def expect_section(name: str) -> None:
        ln, lv = lines.next()
        if lv != name:
            raise ParseError(ln, f"expected section {name!r}, got {lv!r}")

    def angle_lines(count: int, offset: int, what: str) -> tuple[Fraction, ...]:
        angles: dict[int, Fraction] = {}
        for _ in range(count):
            ln, lv = lines.next()
            v_tok, sep, rest = lv.partition(":")
            if not sep:
                raise ParseError(ln, f"expected '<vertex>: <angle>', got {lv!r}")
            v = _parse_int(ln, v_tok.strip(), "vertex")
            if not offset <= v < offset + count:
                raise ParseError(ln, f"{what} vertex {v} out of range")
            if v in angles:
                raise ParseError(ln, f"duplicate angle for vertex {v}")
            angles[v] = parse_fraction(ln, rest.strip())
        return tuple(angles[v] for v in range(offset, offset + count))

    expect_section("inner:")
    inner = angle_lines(p, 0, "inner")
    expect_section("outer:")
    outer = angle_lines(q, p, "outer")
    expect_section("windings:")
    windings: dict[tuple[int, int], Fraction] = {}
    for _ in range(p * q):
        ln, lv = lines.next()
        head, sep, rest = lv.partition(":")
        toks = head.split()
        if not sep or len(toks) != 2:
            raise ParseError(ln, f"expected '<u> <w>: <winding>', got {lv!r}")
        u = _parse_int(ln, toks[0], "inner vertex")
        w = _parse_int(ln, toks[1], "outer vertex")
        if not (0 <= u < p and p <= w < n):
            raise ParseError(ln, f"winding pair {u} {w} out of range")
        if (u, w) in windings:
            raise ParseError(ln, f"duplicate winding for {u} {w}")
        windings[(u, w)] = parse_fraction(ln, rest.strip())
    color = _parse_colors_section(lines, n)
    if not lines.exhausted:
        ln, lv = lines.next()
        raise ParseError(ln, f"unexpected trailing line {lv!r}")
    wind = tuple(tuple(windings[(i, p + j)] for j in range(q)) for i in range(p))
    return CylindricalLayout(inner, outer, wind, color)


# ---------------------------------------------------------------------------
# BookLayout
# ---------------------------------------------------------------------------


def serialize_book(layout: BookLayout) -> str:
    n = layout.n
    out = [f"book n={n}"]
    out.append("spine: " + " ".join(str(v) for v in layout.spine))
    top = [e for e in all_edges(n) if layout.page_of(e) == PAGE_TOP]
    bottom = [e for e in all_edges(n) if layout.page_of(e) == PAGE_BOTTOM]
    out.append("top: " + " ".join(f"{u}-{v}" for u, v in top))
    out.append("bottom: " + " ".join(f"{u}-{v}" for u, v in bottom))
    out.append(f"colors: k={layout.color.k}")
    out.extend(_serialize_color_lines(layout.color))
    return "\n".join(out) + "\n"


def parse_book(text: str) -> BookLayout:
    lines = _Lines(text)
    line_no, line = lines.next()
    (n,) = _parse_header_fields(line_no, line, "book", ["n"])
    ln, lv = lines.next()
    if not lv.startswith("spine:"):
        raise ParseError(ln, f"expected 'spine: ...', got {lv!r}")
    spine = tuple(_parse_int(ln, t, "vertex") for t in lv.split()[1:])
    if sorted(spine) != list(range(n)):
        raise ParseError(ln, "spine must be a permutation of 0..n-1")
    pages: dict[Edge, str] = {}
    for name, page in (("top:", PAGE_TOP), ("bottom:", PAGE_BOTTOM)):
        ln, lv = lines.next()
        if lv.split()[0] != name:
            raise ParseError(ln, f"expected section {name!r}, got {lv!r}")
        for tok in lv.split()[1:]:
            e = _parse_edge_token(ln, tok, n)
            if e in pages:
                raise ParseError(ln, f"edge {tok} assigned to two pages")
            pages[e] = page
    missing = [e for e in all_edges(n) if e not in pages]
    if missing:
        raise ParseError(ln, f"edge {missing[0][0]}-{missing[0][1]} has no page")
    color = _parse_colors_section(lines, n)
    if not lines.exhausted:
        ln, lv = lines.next()
        raise ParseError(ln, f"unexpected trailing line {lv!r}")
    return BookLayout.from_maps(spine, pages, color)


# ---------------------------------------------------------------------------
# PointDrawing
# ---------------------------------------------------------------------------


def _format_coord(x) -> str:
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def serialize_points(p: PointDrawing) -> str:
    out = [f"points n={p.n}"]
    for v, (x, y) in enumerate(p.points):
        out.append(f"p {v}: {_format_coord(x)} {_format_coord(y)}")
    out.append(f"colors: k={p.color.k}")
    out.extend(_serialize_color_lines(p.color))
    return "\n".join(out) + "\n"


def _parse_coord(line_no: int, token: str):
    f = parse_fraction(line_no, token)
    return int(f) if f.denominator == 1 else f


def parse_points(text: str) -> PointDrawing:
    lines = _Lines(text)
    line_no, line = lines.next()
    (n,) = _parse_header_fields(line_no, line, "points", ["n"])
    pts: dict[int, tuple] = {}
    for _ in range(n):
        ln, lv = lines.next()
        parts = lv.split()
        if len(parts) != 4 or parts[0] != "p" or not parts[1].endswith(":"):
            raise ParseError(ln, f"expected 'p <v>: <x> <y>', got {lv!r}")
        v = _parse_int(ln, parts[1][:-1], "vertex")
        if not 0 <= v < n:
            raise ParseError(ln, f"point vertex {v} out of range")
        if v in pts:
            raise ParseError(ln, f"duplicate point for vertex {v}")
        pts[v] = (_parse_coord(ln, parts[2]), _parse_coord(ln, parts[3]))
    color = _parse_colors_section(lines, n)
    if not lines.exhausted:
        ln, lv = lines.next()
        raise ParseError(ln, f"unexpected trailing line {lv!r}")
    return PointDrawing(tuple(pts[v] for v in range(n)), color)


# ---------------------------------------------------------------------------
# Class files and auto-detection
# ---------------------------------------------------------------------------


def serialize_class_file(drawings: list[Drawing]) -> str:
    out = []
    for d in drawings:
        pairs = ",".join(f"{e[0]}-{e[1]} {f[0]}-{f[1]}" for e, f in sorted(d.crossings))
        out.append(f"{d.n};{pairs}")
    return "\n".join(out) + "\n"


def parse_class_file(path: str) -> list[Drawing]:
    with open(path, encoding="ascii") as fh:
        text = fh.read()
    drawings = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(";")
        if not sep:
            raise ParseError(line_no, "expected 'n;<crossing pairs>'")
        n = _parse_int(line_no, head.strip(), "vertex count")
        crossings = set()
        rest = rest.strip()
        for chunk in rest.split(",") if rest else []:
            toks = chunk.split()
            if len(toks) != 2:
                raise ParseError(line_no, f"expected crossing pair 'u-v w-x', got {chunk!r}")
            e = _parse_edge_token(line_no, toks[0], n)
            f = _parse_edge_token(line_no, toks[1], n)
            if set(e) & set(f):
                raise ParseError(line_no, f"adjacent edges cannot cross: {chunk!r}")
            pair = crossing_pair(e, f)
            if pair in crossings:
                raise ParseError(line_no, f"duplicate crossing pair {chunk!r}")
            crossings.add(pair)
        drawings.append(Drawing(n, frozenset(crossings)))
    return drawings


KINDS = ("drawing", "coloring", "cylindrical", "book", "points")


def detect_kind(text: str) -> str:
    """File kind from the header token; class files have ';' records."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head in KINDS:
            return head
        if ";" in line and line.split(";")[0].strip().isdigit():
            return "class"
        break
    raise ParseError(1, f"unrecognized file header {text.splitlines()[0][:40]!r}" if text else "empty file")


def parse_any(text: str):
    kind = detect_kind(text)
    if kind == "drawing":
        return parse_drawing(text)
    if kind == "coloring":
        return parse_coloring(text)
    if kind == "cylindrical":
        return parse_cylindrical(text)
    if kind == "book":
        return parse_book(text)
    if kind == "points":
        return parse_points(text)
    raise ParseError(1, f"cannot parse {kind} files as a single instance")
