"""Acyclic polynomials of graphs.

AC(G, x) counts vertex subsets inducing a forest by size.  The package
computes it exactly (closed forms, cograph recursion, brute force), locates
its roots, and classifies graphs by the shape of the polynomial.
"""

from .acyclic import AcycResult, BudgetError, ac_brute, ac_closed, ac_join, ac_lex_multipartite, analyze
from .graph import Graph, GraphError, ParseError, emit_graph6, family, parse_graph6
from .classify import build_report, degree3_test
from .poly import Poly
from .roots import RootSet, all_roots, is_real_rooted, is_stable_hb

__all__ = [
    "AcycResult",
    "BudgetError",
    "Graph",
    "GraphError",
    "ParseError",
    "Poly",
    "RootSet",
    "ac_brute",
    "ac_closed",
    "ac_join",
    "ac_lex_multipartite",
    "all_roots",
    "analyze",
    "build_report",
    "degree3_test",
    "emit_graph6",
    "family",
    "is_real_rooted",
    "is_stable_hb",
    "parse_graph6",
]

__version__ = "0.1.0"
