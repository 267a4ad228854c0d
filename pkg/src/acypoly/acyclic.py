"""Acyclic and independence polynomials.

Several independent routes compute AC(G, x):

* :func:`ac_brute` walks the hereditary complex of acyclic vertex sets;
* :func:`ac_union` / :func:`ac_join` combine the polynomials of two graphs;
* :func:`ac_cograph` folds those formulas over a cotree;
* :func:`ac_closed` evaluates closed forms for named families;
* :func:`ac_lex_multipartite` handles ``G[K_k]`` for complete multipartite G.

:func:`analyze` picks the cheapest applicable exact route and records it.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Union as _U

from . import graph as gr
from .graph import Graph, bits, popcount
from .poly import Poly, binomial, compose, scale_arg


class BudgetError(RuntimeError):
    """No exact method is available within the configured enumeration budget."""


@dataclass
class Budget:
    brute_force: int = 24


budget = Budget()

ONE = Poly([1])
X = Poly([0, 1])
ONE_PLUS_X = Poly([1, 1])


def _check_budget(g: Graph, limit: int | None, what: str) -> None:
    limit = budget.brute_force if limit is None else limit
    if g.n > limit:
        raise BudgetError(f"{what}: n={g.n} exceeds the brute-force budget of {limit} vertices")


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------

def ac_brute(g: Graph, limit: int | None = None) -> Poly:
    """Count acyclic vertex subsets by size.

    Sets are grown only by higher-indexed vertices and only while they stay
    acyclic, so only faces of the acyclic complex are visited.  A new vertex
    keeps the set acyclic iff it has at most one neighbour in each current
    component of the induced forest.
    """
    _check_budget(g, limit, "ac_brute")
    n, adj = g.n, g.adj
    counts = [0] * (n + 1)

    def extend(s: int, comps: list[int], size: int, start: int) -> None:
        counts[size] += 1
        for v in range(start, n):
            nb = adj[v] & s
            if not nb:
                extend(s | (1 << v), comps + [1 << v], size + 1, v + 1)
                continue
            merged = 1 << v
            rest = []
            ok = True
            for c in comps:
                hit = c & nb
                if not hit:
                    rest.append(c)
                elif hit & (hit - 1):
                    ok = False
                    break
                else:
                    merged |= c
            if ok:
                rest.append(merged)
                extend(s | (1 << v), rest, size + 1, v + 1)

    extend(0, [], 0, 0)
    return Poly(counts)


def independence_brute(g: Graph, limit: int | None = None) -> Poly:
    _check_budget(g, limit, "independence_brute")
    counts = [0] * (g.n + 1)
    adj = g.adj

    def extend(cand: int, size: int) -> None:
        counts[size] += 1
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            extend(cand & ~adj[v], size + 1)

    extend(g.vertices, 0)
    return Poly(counts)


# ---------------------------------------------------------------------------
# Union / join formulas
# ---------------------------------------------------------------------------

def ac_union(ac_g: Poly, ac_h: Poly) -> Poly:
    return ac_g * ac_h


def i_union(i_g: Poly, i_h: Poly) -> Poly:
    return i_g * i_h


def i_join(i_g: Poly, i_h: Poly) -> Poly:
    return i_g + i_h - 1


def ac_join(ac_g: Poly, ac_h: Poly, i_g: Poly, i_h: Poly, n_g: int, n_h: int) -> Poly:
    """AC(G + H) from the acyclic and independence polynomials of G and H.

    An acyclic set of the join meets one side in at most one vertex; when it
    meets that side in exactly one vertex the other side contributes an
    independent set.  The quadratic correction removes double counting of
    sets of size at most two.
    """
    n = n_g + n_h
    quad = binomial(n, 2) - 2 * n_g * n_h - binomial(n_g, 2) - binomial(n_h, 2)
    return (ac_g + ac_h + n_g * X * i_h + n_h * X * i_g
            + Poly([-1, -n, quad]))


# ---------------------------------------------------------------------------
# Cotrees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    vertex: int


@dataclass(frozen=True)
class Union:
    children: tuple


@dataclass(frozen=True)
class Join:
    children: tuple


Cotree = _U[Leaf, Union, Join]


@dataclass(frozen=True)
class NotCograph:
    """Four vertices ``(a, b, c, d)`` inducing the path a-b-c-d."""
    witness: tuple[int, int, int, int]


class _FoundP4(Exception):
    def __init__(self, witness):
        self.witness = witness


def cotree_build(g: Graph) -> Cotree | NotCograph:
    """Decompose a cograph, or return an induced P_4.

    Recursion alternates between connected components of G and of its
    complement on the current vertex set.  A vertex set of size >= 2 on
    which both G and its complement are connected contains an induced P_4.
    Children of a Union are connected and children of a Join are
    co-connected, so the tree is normalised.
    """
    if g.n == 0:
        raise ValueError("cotree of the empty graph is undefined")
    co = gr.complement(g)
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 4 * g.n + 100))

    def build(mask: int):
        if popcount(mask) == 1:
            return Leaf(mask.bit_length() - 1)
        comps = gr.components(g, mask)
        if len(comps) > 1:
            return Union(tuple(build(c) for c in comps))
        cocomps = gr.components(co, mask)
        if len(cocomps) > 1:
            return Join(tuple(build(c) for c in cocomps))
        raise _FoundP4(find_induced_p4(g, mask))

    try:
        return build(g.vertices)
    except _FoundP4 as exc:
        return NotCograph(exc.witness)
    finally:
        sys.setrecursionlimit(old_limit)


def find_induced_p4(g: Graph, mask: int | None = None) -> tuple[int, int, int, int] | None:
    mask = g.vertices if mask is None else mask
    adj = g.adj
    for b in bits(mask):
        for c in bits(adj[b] & mask):
            ends_a = adj[b] & mask & ~adj[c] & ~(1 << c)
            if not ends_a:
                continue
            ends_d = adj[c] & mask & ~adj[b] & ~(1 << b)
            for a in bits(ends_a):
                d_choices = ends_d & ~adj[a] & ~(1 << a)
                if d_choices:
                    return a, b, c, (d_choices & -d_choices).bit_length() - 1
    return None


def cotree_graph(tree: Cotree, n: int) -> Graph:
    """Rebuild the labelled graph described by ``tree`` on ``n`` vertices."""
    rows = [0] * n

    def walk(node) -> int:
        if isinstance(node, Leaf):
            return 1 << node.vertex
        masks = [walk(c) for c in node.children]
        if isinstance(node, Join):
            for i, a in enumerate(masks):
                others = 0
                for j, b in enumerate(masks):
                    if j != i:
                        others |= b
                for v in bits(a):
                    rows[v] |= others
        total = 0
        for m in masks:
            total |= m
        return total

    walk(tree)
    return Graph(n, tuple(rows))


def ac_cograph(tree: Cotree) -> tuple[Poly, Poly]:
    """(AC, I) of the cograph described by ``tree``, computed bottom-up."""

    def walk(node) -> tuple[Poly, Poly, int]:
        if isinstance(node, Leaf):
            return ONE_PLUS_X, ONE_PLUS_X, 1
        results = [walk(c) for c in node.children]
        ac, ind, order = results[0]
        for ac2, ind2, order2 in results[1:]:
            if isinstance(node, Union):
                ac, ind = ac_union(ac, ac2), i_union(ind, ind2)
            else:
                ac, ind = ac_join(ac, ac2, ind, ind2, order, order2), i_join(ind, ind2)
            order += order2
        return ac, ind, order

    ac, ind, _ = walk(tree)
    return ac, ind


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def _ac_knn(n: int) -> Poly:
    p = ONE_PLUS_X ** n
    return 2 * n * X * (p - n * X - 1) + Poly([0, 0, n * n]) + 2 * p - 1


def _ac_j(n: int) -> Poly:
    # n^2 + 5n - 34 = n(n+5) - 34 is always even
    return Poly([1, n, (n * n - n) // 2, (n * n + 5 * n - 34) // 2, 1])


def _ac_star_k2(n: int) -> Poly:
    big = n - 1
    return 2 * X * Poly([1, 2]) ** big + ONE_PLUS_X ** (2 * big) + Poly([0, 0, 1])


def _ac_joinbar_k6(m: int) -> Poly:
    return Poly([1, m + 6, binomial(m + 6, 2), 15 * m + 20, 20 * m + 15, 15 * m + 6, 6 * m + 1, m])


_CLOSED = {
    "complete": (lambda n: Poly([1, n, binomial(n, 2)]), lambda n: n >= 0),
    "cycle": (lambda n: ONE_PLUS_X ** n - X ** n, lambda n: n >= 3),
    "forest": (lambda n: ONE_PLUS_X ** n, lambda n: n >= 0),
    "complete_minus_edge": (lambda n: Poly([1, n, binomial(n, 2), n - 2]), lambda n: n >= 2),
    "j_graph": (_ac_j, lambda n: n >= 5),
    "knn": (_ac_knn, lambda n: n >= 1),
    "star_k2": (_ac_star_k2, lambda n: n >= 1),
    "joinbar_k6": (_ac_joinbar_k6, lambda m: m >= 0),
}

CLOSED_FAMILIES = tuple(_CLOSED)


def ac_closed(family: str, n: int) -> Poly:
    try:
        formula, valid = _CLOSED[family]
    except KeyError:
        raise ValueError(f"no closed form for family {family!r}") from None
    if not valid(n):
        raise ValueError(f"{family}: parameter {n} out of range")
    return formula(n)


def recognize_closed_family(g: Graph) -> tuple[str, int] | None:
    """Identify G as a member of a family with a closed form (labels ignored)."""
    n, m = g.n, g.edge_count()
    if gr.is_forest(g):
        return "forest", n
    if m == binomial(n, 2):
        return "complete", n
    if n >= 3 and gr.is_connected(g) and all(d == 2 for d in g.degrees()):
        return "cycle", n
    if n >= 2 and m == binomial(n, 2) - 1:
        return "complete_minus_edge", n
    ok, parts = gr.is_complete_multipartite(g)
    if ok and len(parts) == 2 and parts[0] == parts[1]:
        return "knn", parts[0]
    co = gr.complement(g)
    comps = gr.components(co)
    sizes = sorted(popcount(c) for c in comps)
    if n >= 5 and len(comps) == 2:
        four = [c for c in comps if popcount(c) == 4 and
                all(popcount(co.adj[v] & c) == 2 for v in bits(c))]
        other = [c for c in comps if c not in four[:1]]
        if four and len(other) == 1 and popcount(other[0]) == n - 4 and gr.is_star(co, other[0]):
            return "j_graph", n
    if n >= 6 and sizes[-1] == 6 and all(s == 1 for s in sizes[:-1]):
        six = [c for c in comps if popcount(c) == 6][0]
        if all(popcount(co.adj[v]) == 5 for v in bits(six)):
            return "joinbar_k6", n - 6
    return None


# ---------------------------------------------------------------------------
# Lexicographic products with cliques
# ---------------------------------------------------------------------------

def ac_lex_multipartite(g: Graph, k: int) -> Poly:
    """AC(G[K_k]) = AC(G, kx) + I(G, kx + C(k,2)x^2) - I(G, kx) for complete multipartite G."""
    ok, _ = gr.is_complete_multipartite(g)
    if not ok:
        raise ValueError("ac_lex_multipartite requires a complete multipartite graph")
    if k < 1:
        raise ValueError("clique size k must be >= 1")
    tree = cotree_build(g)
    ac, ind = ac_cograph(tree)
    return scale_arg(ac, k) + compose(ind, Poly([0, k, binomial(k, 2)])) - scale_arg(ind, k)


# ---------------------------------------------------------------------------
# Front door
# ---------------------------------------------------------------------------

@dataclass
class AcycResult:
    ac: Poly
    ind: Poly | None
    upsilon: int
    nabla: int
    method: str
    order: int = field(default=0)


def analyze(g: Graph, method: str | None = None, limit: int | None = None) -> AcycResult:
    """Compute AC(G) by the cheapest exact route: closed form, cograph, brute force.

    ``method`` forces one of ``"closed"``, ``"cograph"`` or ``"brute"``.
    """
    limit = budget.brute_force if limit is None else limit
    ac = ind = None
    used = None
    tree = None

    if method in (None, "closed"):
        fam = recognize_closed_family(g)
        if fam is not None:
            ac = ac_closed(*fam)
            used = f"closed:{fam[0]}"
        elif method == "closed":
            raise ValueError("graph is not a recognised closed-form family")
    if g.n and (ac is None or ind is None) and method in (None, "closed", "cograph"):
        t = cotree_build(g)
        if isinstance(t, NotCograph):
            if method == "cograph":
                raise ValueError(f"not a cograph: induced P4 on {t.witness}")
        else:
            tree = t
    if tree is not None:
        c_ac, ind = ac_cograph(tree)
        if ac is None:
            ac, used = c_ac, "cograph"
    if ac is None:
        if method not in (None, "brute"):
            raise ValueError(f"unknown method {method!r}")
        if g.n > limit:
            raise BudgetError(
                f"no exact method for this graph: not a recognised family or cograph, "
                f"and n={g.n} exceeds the brute-force budget of {limit}")
        ac, used = ac_brute(g, limit), "brute"
    if ind is None and g.n == 0:
        ind = ONE
    if ind is None and g.n <= min(limit, 20):
        ind = independence_brute(g, limit)
    upsilon = ac.degree
    return AcycResult(ac=ac, ind=ind, upsilon=upsilon, nabla=g.n - upsilon,
                      method=used, order=g.n)
