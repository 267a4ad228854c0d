"""Simple undirected graphs stored as bit-packed adjacency rows.

A :class:`Graph` is immutable.  Row ``adj[u]`` is an ``int`` whose bit ``v``
is set iff ``{u, v}`` is an edge.  Vertex sets are plain ``int`` masks over
``range(n)``.

Family constructors use a fixed, documented vertex order so that graph6
fixtures are byte-reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Invalid graph construction or unsupported size."""


class ParseError(GraphError):
    """Malformed graph6 or edge-list input."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphError("adjacency must have exactly n rows")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full or (row >> u) & 1:
                raise GraphError(f"row {u} has a loop or out-of-range bit")
            for v in bits(row):
                if not (self.adj[v] >> u) & 1:
                    raise GraphError(f"adjacency is not symmetric at ({u}, {v})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertices(self) -> int:
        """Mask of all vertices."""
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degrees(self) -> list[int]:
        return [popcount(r) for r in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def induced(self, mask: int) -> "Graph":
        """Induced subgraph on ``mask``, relabelled in increasing vertex order."""
        verts = list(bits(mask))
        index = {v: i for i, v in enumerate(verts)}
        rows = []
        for v in verts:
            rows.append(sum(1 << index[w] for w in bits(self.adj[v] & mask)))
        return Graph(len(verts), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph whose vertex ``perm[v]`` plays the role of old vertex ``v``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


# ---------------------------------------------------------------------------
# graph6 and edge lists
# ---------------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    """Decode a short-format graph6 string (n <= 62)."""
    s = text.strip()
    offset = 0
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
        offset = len(_G6_HEADER)
    if not s:
        raise ParseError("empty graph6 string")
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"byte {offset + i}: {ch!r} outside graph6 range 63..126")
    if s[0] == "~":
        raise ParseError(f"byte {offset}: long-format graph6 (n > 62) is not supported")
    n = ord(s[0]) - 63
    need = n * (n - 1) // 2
    nbytes = (need + 5) // 6
    body = s[1:]
    if len(body) < nbytes:
        raise ParseError(
            f"byte {offset + 1 + len(body)}: truncated bit stream, "
            f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    if len(body) > nbytes:
        raise ParseError(f"byte {offset + 1 + nbytes}: trailing data after bit stream")
    stream = 0
    for ch in body:
        stream = (stream << 6) | (ord(ch) - 63)
    total = 6 * nbytes
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (stream >> (total - 1 - k)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError(f"graph6 short format supports n <= 62, got n={g.n}")
    out = [chr(63 + g.n)]
    acc = 0
    width = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | ((g.adj[i] >> j) & 1)
            width += 1
            if width == 6:
                out.append(chr(63 + acc))
                acc = width = 0
    if width:
        out.append(chr(63 + (acc << (6 - width))))
    return "".join(out)


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` on the first line, then one ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored; duplicate edges collapse.
    """
    lines = text.splitlines()
    header = None
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise ParseError(f"line {lineno}: expected vertex count, got {raw!r}")
            header = int(parts[0])
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer endpoint in {raw!r}") from None
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at vertex {u}")
        if not (0 <= u < header and 0 <= v < header):
            raise ParseError(f"line {lineno}: endpoint out of range for n={header}")
        edges.append((u, v))
    if header is None:
        raise ParseError("line 1: missing vertex count")
    return Graph.from_edges(header, edges)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = g.vertices
    return Graph(g.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(g.adj)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    """H's vertices are relabelled above G's."""
    rows = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, tuple(rows))


def join(g: Graph, h: Graph) -> Graph:
    low = g.vertices
    high = h.vertices << g.n
    rows = [row | high for row in g.adj] + [(row << g.n) | low for row in h.adj]
    return Graph(g.n + h.n, tuple(rows))


def lexicographic(g: Graph, h: Graph) -> Graph:
    """G[H]: vertex ``(v, w)`` is numbered ``v * h.n + w``."""
    k = h.n
    block = (1 << k) - 1
    rows = []
    for v in range(g.n):
        outer = 0
        for u in bits(g.adj[v]):
            outer |= block << (u * k)
        for w in range(k):
            rows.append(outer | (h.adj[w] << (v * k)))
    return Graph(g.n * k, tuple(rows))


def cartesian(g: Graph, h: Graph) -> Graph:
    """G box H: vertex ``(v, w)`` is numbered ``v * h.n + w``."""
    k = h.n
    rows = []
    for v in range(g.n):
        for w in range(k):
            row = h.adj[w] << (v * k)
            for u in bits(g.adj[v]):
                row |= 1 << (u * k + w)
            rows.append(row)
    return Graph(g.n * k, tuple(rows))


# ---------------------------------------------------------------------------
# Structural queries
# ---------------------------------------------------------------------------

def components(g: Graph, mask: int | None = None) -> list[int]:
    """Connected components of ``G[mask]`` as vertex masks, ordered by least vertex."""
    remaining = g.vertices if mask is None else mask
    comps = []
    while remaining:
        frontier = remaining & -remaining
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & remaining & ~comp
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def induced_is_acyclic(g: Graph, s: int) -> bool:
    """True iff ``G[s]`` is a forest, i.e. |E| = |V| - (number of components)."""
    edges = sum(popcount(g.adj[v] & s) for v in bits(s)) // 2
    return edges == popcount(s) - len(components(g, s))


def is_forest(g: Graph) -> bool:
    return induced_is_acyclic(g, g.vertices)


def is_bipartite(g: Graph) -> bool:
    colour = {}
    for comp in components(g):
        start = (comp & -comp).bit_length() - 1
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in bits(g.adj[v]):
                if w not in colour:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return False
    return True


def girth_and_count(g: Graph) -> tuple[float | int, int | None]:
    """Return ``(g, sigma_g)``: shortest cycle length and number of such cycles.

    For a forest returns ``(math.inf, None)``.  At the girth every g-cycle is
    induced, so counting cycles equals counting vertex sets inducing one.
    """
    girth = _girth(g)
    if girth is None:
        return float("inf"), None
    return girth, _count_cycles(g, girth)


def _girth(g: Graph) -> int | None:
    best = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for v in queue:
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for w in bits(g.adj[v]):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif parent[v] != w:
                    length = dist[v] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def _count_cycles(g: Graph, length: int) -> int:
    # each cycle is found from its least vertex in two directions
    total = 0
    for start in range(g.n):
        allowed = g.vertices & ~((1 << (start + 1)) - 1)
        stack = [(start, 1 << start, 1)]
        while stack:
            v, used, depth = stack.pop()
            if depth == length:
                if g.has_edge(v, start):
                    total += 1
                continue
            for w in bits(g.adj[v] & allowed & ~used):
                stack.append((w, used | (1 << w), depth + 1))
    return total // 2


def max_clique_order(g: Graph) -> int:
    """Exact clique number by branch and bound (n <= 32)."""
    if g.n > 32:
        raise GraphError(f"max_clique_order supports n <= 32, got n={g.n}")
    best = 0

    def expand(size: int, cand: int) -> None:
        nonlocal best
        if not cand:
            best = max(best, size)
            return
        while cand:
            if size + popcount(cand) <= best:
                return
            v = cand.bit_length() - 1
            expand(size + 1, cand & g.adj[v])
            cand &= ~(1 << v)

    expand(0, g.vertices)
    return best


def is_complete_multipartite(g: Graph) -> tuple[bool, list[int]]:
    """Complement is a disjoint union of cliques; returns part sizes (sorted)."""
    comp = complement(g)
    parts = []
    for c in components(comp):
        size = popcount(c)
        for v in bits(c):
            if popcount(comp.adj[v]) != size - 1:
                return False, []
        parts.append(size)
    return True, sorted(parts)


def is_star(g: Graph, mask: int) -> bool:
    """``G[mask]`` is K_1 or K_{1,s}: a tree with a vertex adjacent to all others."""
    size = popcount(mask)
    if size <= 2:
        return len(components(g, mask)) == 1
    degs = [popcount(g.adj[v] & mask) for v in bits(mask)]
    return max(degs) == size - 1 and sorted(degs)[:-1] == [1] * (size - 1)


# ---------------------------------------------------------------------------
# Canonical codes (isomorphism classes, n <= 8)
# ---------------------------------------------------------------------------

def _refined_cells(g: Graph) -> list[list[int]]:
    """Equitable colour refinement, cells ordered by an isomorphism-invariant key."""
    colour = [0] * g.n
    ncolours = 1 if g.n else 0
    while True:
        sigs = [(colour[v], tuple(sorted(colour[w] for w in bits(g.adj[v]))))
                for v in range(g.n)]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colour = [rank[s] for s in sigs]
        if len(rank) == ncolours:
            break
        ncolours = len(rank)
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colour):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def canonical_code(g: Graph) -> bytes:
    """Isomorphism-complete code: equal codes iff the graphs are isomorphic.

    Minimises the upper-triangle adjacency bit string over every vertex order
    that lists the colour-refinement cells in their canonical order.  Since
    isomorphisms preserve the refined cells, this is a complete invariant.
    """
    if g.n > 8:
        raise GraphError(f"canonical_code supports n <= 8, got n={g.n}")
    cells = _refined_cells(g)
    pairs = [(i, j) for j in range(1, g.n) for i in range(j)]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [v for part in choice for v in part]
        code = 0
        for i, j in pairs:
            code = (code << 1) | ((g.adj[order[i]] >> order[j]) & 1)
        if best is None or code < best:
            best = code
    nbytes = (len(pairs) + 7) // 8
    return bytes([g.n]) + best.to_bytes(nbytes, "big")


# ---------------------------------------------------------------------------
# Named families
# ---------------------------------------------------------------------------

def empty(n: int) -> Graph:
    _need(n >= 0, "empty", n)
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    _need(n >= 0, "complete", n)
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << u) for u in range(n)))


def path(n: int) -> Graph:
    """Vertices 0..n-1 in path order."""
    _need(n >= 1, "path", n)
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    """Vertices 0..n-1 in cyclic order."""
    _need(n >= 3, "cycle", n)
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def star(n: int) -> Graph:
    """K_{1,n-1} with centre 0 (n vertices in total)."""
    _need(n >= 1, "star", n)
    return Graph.from_edges(n, ((0, i) for i in range(1, n)))


def complete_bipartite(m: int, n: int) -> Graph:
    """Parts {0..m-1} and {m..m+n-1}."""
    _need(m >= 0 and n >= 0, "complete_bipartite", (m, n))
    return join(empty(m), empty(n))


def complete_minus_edge(n: int) -> Graph:
    """K_n without the edge {0, 1}."""
    _need(n >= 2, "complete_minus_edge", n)
    g = complete(n)
    rows = list(g.adj)
    rows[0] &= ~0b10
    rows[1] &= ~0b1
    return Graph(n, tuple(rows))


def j_graph(n: int) -> Graph:
    """Complement of star(n-4) plus C_4; star on 0..n-5 (centre 0), cycle on the last four."""
    _need(n >= 5, "j_graph", n)
    return complement(disjoint_union(star(n - 4), cycle(4)))


def torus(m: int, n: int) -> Graph:
    """C_m box C_n, vertex (i, j) numbered i * n + j."""
    return cartesian(cycle(m), cycle(n))


def join_bar_k6(m: int) -> Graph:
    """K_m + empty(6): the clique on 0..m-1."""
    _need(m >= 0, "join_bar_k6", m)
    return join(complete(m), empty(6))


def star_k2(n: int) -> Graph:
    """K_{1,n-1}[K_2]."""
    return lexicographic(star(n), complete(2))


def _need(ok: bool, name: str, params) -> None:
    if not ok:
        raise GraphError(f"{name}: parameter {params} out of range")


FAMILIES = {
    "empty": (empty, 1),
    "kn": (complete, 1),
    "path": (path, 1),
    "cycle": (cycle, 1),
    "star": (star, 1),
    "kmn": (complete_bipartite, 2),
    "knminus": (complete_minus_edge, 1),
    "jn": (j_graph, 1),
    "torus": (torus, 2),
    "joinbar-k6": (join_bar_k6, 1),
    "star-k2": (star_k2, 1),
}


def family(name: str, *params: int) -> Graph:
    """Build a named family member, e.g. ``family("kmn", 3, 4)``."""
    try:
        ctor, arity = FAMILIES[name]
    except KeyError:
        raise GraphError(f"unknown family {name!r}; known: {', '.join(sorted(FAMILIES))}") from None
    if len(params) != arity:
        raise GraphError(f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    return ctor(*params)


def parse_family_spec(spec: str) -> tuple[str, tuple[int, ...]]:
    """Split ``name:p1,p2`` into its name and integer parameters."""
    name, _, rest = spec.partition(":")
    try:
        params = tuple(int(p) for p in rest.split(",") if p.strip()) if rest else ()
    except ValueError:
        raise ParseError(f"bad family parameters in {spec!r}") from None
    return name.strip(), params
