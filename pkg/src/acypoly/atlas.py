"""Graph collections and root clouds.

Sources: every acyclic-dimension-3 graph of a given order (built from
integer partitions), exhaustive isomorphism classes of small order, and
graph6 streams from external generators.  Root clouds export to CSV, JSON
and a hand-written SVG scatter.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, TextIO

import mpmath

from .acyclic import analyze
from .classify import Degree3Witness, degree3_test
from .graph import (
    Graph,
    ParseError,
    canonical_code,
    complement,
    complete,
    disjoint_union,
    emit_graph6,
    empty,
    parse_graph6,
    star,
)
from .poly import Poly
from . import roots as R

CSV_COLUMNS = ["graph_id", "source", "n", "coeffs", "root_re", "root_im"]
ROOT_DIGITS = 20


@dataclass
class AtlasRecord:
    graph_id: str
    source: str
    n: int
    coefficients: Poly
    roots: list | None
    degree3: Degree3Witness | None = None
    method: str = ""
    error: str | None = None

    def root_strings(self) -> list[tuple[str, str]]:
        if not self.roots:
            return []
        return [(_num(z.real), _num(z.imag)) for z in self.roots]

    def to_json(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "source": self.source,
            "n": self.n,
            "coefficients": [str(c) for c in self.coefficients],
            "roots": [{"re": re, "im": im} for re, im in self.root_strings()],
            "degree3": None if self.degree3 is None else self.degree3.to_json(),
            "method": self.method,
            "error": self.error,
        }


def _num(x) -> str:
    return mpmath.nstr(x, ROOT_DIGITS)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, in reverse lexicographic order."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def star_forest(sizes: Iterable[int]) -> Graph:
    g = empty(0)
    for s in sizes:
        g = disjoint_union(g, star(s))
    return g


def gen_dimension3(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class of order-n graphs whose AC has degree 3."""
    if n < 3:
        return
    out = []
    for p in partitions(n):
        if len(p) >= 2 and p[0] >= 2:
            out.append(complement(star_forest(p)))
    out.append(disjoint_union(complete(1), complete(n - 1)))
    if n == 3:
        out.append(empty(3))
    seen = set()
    for g in out:
        if n <= 8:
            code = canonical_code(g)
            if code in seen:
                continue
            seen.add(code)
        yield g


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (empty(0),)
    found: dict[bytes, Graph] = {}
    for base in _classes(n - 1):
        for nbrs in range(1 << (n - 1)):
            adj = list(base.adj) + [nbrs]
            for v in range(n - 1):
                if nbrs >> v & 1:
                    adj[v] |= 1 << (n - 1)
            g = Graph(n, tuple(adj))
            found.setdefault(canonical_code(g), g)
    return tuple(found[c] for c in sorted(found))


def exhaustive_scan(n: int) -> Iterator[Graph]:
    """One representative per isomorphism class of order n (n <= 7).

    Classes are grown by adding a vertex to each class of order n - 1 in
    every possible way, then deduplicated by canonical code.
    """
    if not 0 <= n <= 7:
        raise ValueError(f"exhaustive_scan supports 0 <= n <= 7, got {n}")
    yield from _classes(n)


def ingest_graph6_stream(reader: Iterable[str], strict: bool = False,
                         errors: list | None = None) -> Iterator[Graph]:
    """Lazily parse one graph6 string per line.

    Blank lines are skipped.  A malformed line raises ParseError when
    ``strict`` is set; otherwise ``(line_number, message)`` is appended to
    ``errors`` and the stream continues.
    """
    for lineno, line in enumerate(reader, 1):
        text = line.strip()
        if not text:
            continue
        try:
            g = parse_graph6(text)
        except ParseError as e:
            if strict:
                raise ParseError(f"line {lineno}: {e}") from e
            if errors is not None:
                errors.append((lineno, str(e)))
            continue
        yield g


# ---------------------------------------------------------------------------
# Root clouds
# ---------------------------------------------------------------------------

def _record(item) -> AtlasRecord:
    gid, source, g, precision = item
    res = analyze(g)
    witness = degree3_test(g)
    rec = AtlasRecord(gid, source, g.n, res.ac, None,
                      degree3=witness if witness.is_degree3 else None, method=res.method)
    try:
        rec.roots = list(R.all_roots(res.ac, precision=precision).roots)
    except R.RootFindingError as e:
        rec.error = str(e)
    return rec


def _items(graphs, source: str, precision):
    for k, item in enumerate(graphs):
        if isinstance(item, tuple):
            gid, g = item
        else:
            g = item
            gid = emit_graph6(g) if g.n <= 62 else f"{source}-{k}"
        yield gid, source, g, precision


def root_cloud(graphs, source: str = "partition", precision: int | None = None,
               jobs: int = 1) -> Iterator[AtlasRecord]:
    """AC and all roots for each graph, in input order.

    ``graphs`` yields Graph objects or ``(graph_id, Graph)`` pairs.  With
    ``jobs > 1`` records are computed in a process pool; output order is
    still the input order.
    """
    items = _items(graphs, source, precision)
    if jobs <= 1:
        yield from map(_record, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_record, items)


def export_csv(records: Iterable[AtlasRecord], fh: TextIO) -> int:
    """One row per root; a record without roots still gets one row.  Returns rows written."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    rows = 0
    for rec in records:
        coeffs = ";".join(str(c) for c in rec.coefficients)
        pts = rec.root_strings() or [("", "")]
        for re, im in pts:
            w.writerow([rec.graph_id, rec.source, rec.n, coeffs, re, im])
            rows += 1
    return rows


def read_csv(fh: TextIO) -> list[dict]:
    rows = list(csv.DictReader(fh))
    for r in rows:
        if list(r) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV columns {list(r)}")
    return rows


def export_json(records: Iterable[AtlasRecord]) -> list[dict]:
    return [r.to_json() for r in records]


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

CURVE_SAMPLES = 720


def limit_curves(samples: int = CURVE_SAMPLES) -> tuple[list[complex], list[complex]]:
    """Polylines for the circle |z + 1/2| = 1/2 and the truncated limacon."""
    circle = [R.circle_point(2 * math.pi * k / samples) for k in range(samples + 1)]
    lo, hi = R.LIMACON_RANGE
    lim = [R.limacon_point(lo + (hi - lo) * k / samples) for k in range(samples + 1)]
    return circle, lim


def render_svg(records: Iterable[AtlasRecord], overlay_curves: bool = False,
               width: int = 640, height: int = 480) -> str:
    """Scatter of root positions in the complex plane as a standalone SVG document."""
    pts = [complex(z) for rec in records for z in (rec.roots or [])]
    curves = limit_curves() if overlay_curves else ()
    extent = pts + [w for c in curves for w in c]
    if not extent:
        extent = [complex(-1, -1), complex(1, 1)]
    x0 = min(w.real for w in extent)
    x1 = max(w.real for w in extent)
    y0 = min(w.imag for w in extent)
    y1 = max(w.imag for w in extent)
    span = max(x1 - x0, y1 - y0, 1e-9)
    pad = 0.05 * span
    x0, x1, y0, y1 = x0 - pad, x1 + pad, y0 - pad, y1 + pad
    scale = min(width / (x1 - x0), height / (y1 - y0))

    def sx(w: complex) -> str:
        return f"{(w.real - x0) * scale:.3f}"

    def sy(w: complex) -> str:
        return f"{(y1 - w.imag) * scale:.3f}"

    vw = (x1 - x0) * scale
    vh = (y1 - y0) * scale
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {vw:.3f} {vh:.3f}" '
        f'width="{vw:.0f}" height="{vh:.0f}">',
        f'<rect x="0" y="0" width="{vw:.3f}" height="{vh:.3f}" fill="white"/>',
    ]
    axes = []
    if x0 < 0 < x1:
        axes.append(f'<line x1="{sx(0j)}" y1="0" x2="{sx(0j)}" y2="{vh:.3f}"/>')
    if y0 < 0 < y1:
        axes.append(f'<line x1="0" y1="{sy(0j)}" x2="{vw:.3f}" y2="{sy(0j)}"/>')
    if axes:
        out.append('<g stroke="#999" stroke-width="0.5">' + "".join(axes) + "</g>")
    for c in curves:
        d = "M" + " L".join(f"{sx(w)},{sy(w)}" for w in c)
        out.append(f'<path d="{d}" fill="none" stroke="#c33" stroke-width="0.8"/>')
    out.append('<g fill="#236" fill-opacity="0.7">')
    for w in pts:
        out.append(f'<circle cx="{sx(w)}" cy="{sy(w)}" r="1.6"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def csv_text(records: Iterable[AtlasRecord]) -> str:
    buf = io.StringIO()
    export_csv(records, buf)
    return buf.getvalue()
