"""Structural classification and per-graph reports.

Covers the star-forest characterization of acyclic dimension three, the
closed formula and bounds for its cubic coefficient, the classical lower
bounds on the acyclic dimension, and the coefficient identities every
acyclic polynomial satisfies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .acyclic import AcycResult, analyze
from .graph import (
    Graph,
    bits,
    complement,
    components,
    girth_and_count,
    is_bipartite,
    is_connected,
    is_star,
    max_clique_order,
    popcount,
)
from .poly import Poly, binomial
from . import roots as R


class ReportError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# Acyclic dimension three
# ---------------------------------------------------------------------------

K3BAR = "Disconnected_K3bar"
K1_KN1 = "Disconnected_K1_Kn1"
STAR_FOREST = "Connected_StarForestComplement"
NOT_DEGREE3 = "NotDegree3"


@dataclass(frozen=True)
class Degree3Witness:
    kind: str
    star_sizes: tuple[int, ...] = ()
    reason: str = ""

    def __post_init__(self):
        if self.kind == STAR_FOREST:
            s = self.star_sizes
            if len(s) < 2 or max(s) < 2:
                raise ValueError(f"invalid star forest witness {s}")

    @property
    def is_degree3(self) -> bool:
        return self.kind != NOT_DEGREE3

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == STAR_FOREST:
            out["star_sizes"] = list(self.star_sizes)
        if self.reason:
            out["reason"] = self.reason
        return out


def _is_clique(g: Graph, mask: int) -> bool:
    return all((g.adj[v] | (1 << v)) & mask == mask for v in bits(mask))


def degree3_test(g: Graph) -> Degree3Witness:
    """Decide from structure alone whether AC(G) has degree exactly three."""
    n = g.n
    if n < 3:
        return Degree3Witness(NOT_DEGREE3, reason=f"order {n} < 3")
    if n == 3 and g.edge_count() == 0:
        return Degree3Witness(K3BAR)
    comps = components(g)
    if len(comps) > 1:
        if len(comps) == 2:
            small, big = sorted(comps, key=popcount)
            if popcount(small) == 1 and _is_clique(g, big):
                return Degree3Witness(K1_KN1)
        return Degree3Witness(NOT_DEGREE3, reason="disconnected, not K1 + K(n-1) or 3K1")
    h = complement(g)
    parts = components(h)
    if len(parts) < 2:
        return Degree3Witness(NOT_DEGREE3, reason="complement is connected")
    if not all(is_star(h, c) for c in parts):
        return Degree3Witness(NOT_DEGREE3, reason="complement has a non-star component")
    sizes = tuple(sorted((popcount(c) for c in parts), reverse=True))
    if sizes[0] < 2:
        return Degree3Witness(NOT_DEGREE3, reason="complement is edgeless")
    return Degree3Witness(STAR_FOREST, sizes)


def a3_formula(n: int, star_sizes) -> int:
    """x^3 coefficient of AC(G) when the complement of G is the given star forest."""
    sizes = list(star_sizes)
    if sum(sizes) != n:
        raise ValueError("star sizes must sum to n")
    k = len(sizes)
    value = (Fraction(n) - Fraction(3, 2)) * (n - k) - Fraction(1, 2) * sum((s - 1) ** 2 for s in sizes)
    if value.denominator != 1:
        raise AssertionError(f"a3 formula gave a non-integer {value}")
    return int(value)


def a3_lower(n: int) -> int:
    return n - 2


def a3_upper(n: int) -> float:
    if n < 3:
        raise ValueError("a3_upper needs n >= 3")
    s = math.sqrt(2 * n - 2)
    return n * n - n * n / s - n * s / 2 - n / 2 + n / s


def a3_below_upper(n: int, a3) -> bool:
    """Exact test of a3 < a3_upper(n).

    The bound simplifies to n^2 - n/2 - n sqrt(2n - 2), so the comparison
    reduces to squaring a rational against an integer.
    """
    rest = Fraction(n * n) - Fraction(n, 2) - a3
    return rest > 0 and n * n * (2 * n - 2) < rest * rest


# ---------------------------------------------------------------------------
# Lower bounds on the acyclic dimension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Bound:
    name: str
    value: Fraction | None
    note: str = ""

    @property
    def applicable(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        out = {"value": None if self.value is None else str(self.value), "applicable": self.applicable}
        if self.note:
            out["note"] = self.note
        return out


def upsilon_lower_bounds(g: Graph) -> dict[str, Bound]:
    n = g.n
    deg = g.degrees()
    top = max(deg, default=0)
    m = g.edge_count()
    out = {}
    out["aks"] = Bound("aks", sum((min(Fraction(1), Fraction(2, 1 + d)) for d in deg), Fraction(0)))
    # 2n/(1+D) only follows from the per-vertex sum once D >= 1
    out["max_degree"] = Bound("max_degree", n * min(Fraction(1), Fraction(2, 1 + top)))
    if n and is_connected(g):
        out["shi_xu"] = Bound("shi_xu", Fraction(8 * n - 2 * m - 2, 9))
    else:
        out["shi_xu"] = Bound("shi_xu", None, "stated for connected graphs only")
    if n == 0 or m == 0:
        out["kogan"] = Bound("kogan", None, "needs at least one edge")
    elif n > 32:
        out["kogan"] = Bound("kogan", None, "clique number not computed above 32 vertices")
    else:
        out["kogan"] = Bound("kogan", Fraction(6 * n, 2 * top + max_clique_order(g) + 2))
    return out


# ---------------------------------------------------------------------------
# Coefficient identities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    failure: str = ""

    def __bool__(self) -> bool:
        return self.ok


def coefficient_identities(g: Graph, p: Poly) -> IdentityCheck:
    """Check the identities that tie AC(G) to order, girth and cycle counts.

    Returns the first failing check, if any.
    """
    n = g.n
    a = [p[i] for i in range(max(p.degree, n) + 2)]
    if a[0] != 1:
        return IdentityCheck(False, f"a_0 = {a[0]}, expected 1")
    if n >= 1 and a[1] != n:
        return IdentityCheck(False, f"a_1 = {a[1]}, expected {n}")
    if n >= 2 and a[2] != binomial(n, 2):
        return IdentityCheck(False, f"a_2 = {a[2]}, expected {binomial(n, 2)}")
    girth, sigma = girth_and_count(g)
    top = n if girth == math.inf else girth - 1
    for i in range(top + 1):
        if a[i] != binomial(n, i):
            return IdentityCheck(False, f"a_{i} = {a[i]}, expected C({n},{i}) = {binomial(n, i)}")
    if girth != math.inf:
        want = binomial(n, girth) - sigma
        if a[girth] != want:
            return IdentityCheck(False, f"a_{girth} = {a[girth]}, expected C({n},{girth}) - {sigma} = {want}")
    for i in range(n + 2, len(a)):
        if a[i] != 0:
            return IdentityCheck(False, f"a_{i} = {a[i]} is nonzero beyond the order")
    for i in range(1, len(a)):
        if i * a[i] > (n - i + 1) * a[i - 1]:
            return IdentityCheck(False, f"Sperner bound fails at i = {i}: {a[i]} > ({n - i + 1}/{i})*{a[i - 1]}")
    if any(a[i] <= 0 for i in range(p.degree + 1)):
        return IdentityCheck(False, "a zero or negative coefficient below the degree")
    return IdentityCheck(True)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class Report:
    order: int
    edge_count: int
    girth: int | None
    girth_count: int | None
    coefficients: list[int]
    upsilon: int
    nabla: int
    unimodal: bool
    log_concave: bool
    real_rooted: bool
    stable: bool
    annulus: R.Annulus | None
    rational_roots: list[Fraction]
    roots: R.RootSet | None
    degree3: Degree3Witness | None
    lower_bounds: dict[str, Bound]
    method: str
    bipartite: bool
    identities: IdentityCheck = field(default_factory=lambda: IdentityCheck(True))

    @property
    def polynomial(self) -> Poly:
        return Poly(self.coefficients)

    def validate(self) -> None:
        if self.nabla != self.order - self.upsilon:
            raise ReportError(f"nabla {self.nabla} != order - upsilon")
        for b in self.lower_bounds.values():
            if b.applicable and self.upsilon < b.value:
                raise ReportError(f"upsilon {self.upsilon} below the {b.name} bound {b.value}")
        if self.roots is not None and len(self.roots) != self.upsilon:
            raise ReportError("root count differs from the degree")

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "edge_count": self.edge_count,
            "girth": self.girth,
            "girth_cycles": self.girth_count,
            "coefficients": [str(c) for c in self.coefficients],
            "upsilon": self.upsilon,
            "nabla": self.nabla,
            "unimodal": self.unimodal,
            "log_concave": self.log_concave,
            "real_rooted": self.real_rooted,
            "stable": self.stable,
            "annulus": None if self.annulus is None else
            {"lo": str(self.annulus.lo), "hi": str(self.annulus.hi)},
            "rational_roots": [str(r) for r in self.rational_roots],
            "roots": None if self.roots is None else self.roots.to_json(),
            "degree3": None if self.degree3 is None else self.degree3.to_json(),
            "lower_bounds": {k: b.to_json() for k, b in self.lower_bounds.items()},
            "bipartite": self.bipartite,
            "identities": {"ok": self.identities.ok, "failure": self.identities.failure or None},
            "method": self.method,
        }


def build_report(g: Graph, analysis: AcycResult | None = None, precision: int | None = None,
                 with_roots: bool = True) -> Report:
    res = analysis if analysis is not None else analyze(g)
    p = res.ac
    girth, count = girth_and_count(g)
    rootset = None
    if with_roots and p.degree >= 1:
        try:
            rootset = R.all_roots(p, precision=precision)
        except R.RootFindingError as e:
            raise ReportError(f"root finding for AC of degree {p.degree}: {e}") from e
    deg3 = degree3_test(g)
    rep = Report(
        order=g.n,
        edge_count=g.edge_count(),
        girth=None if girth == math.inf else girth,
        girth_count=count,
        coefficients=list(p.coeffs),
        upsilon=res.upsilon,
        nabla=res.nabla,
        unimodal=R.is_unimodal(p),
        log_concave=R.is_log_concave(p),
        real_rooted=R.is_real_rooted(p) if p.degree >= 1 else True,
        stable=R.is_stable_hb(p) if p.degree >= 1 else True,
        annulus=R.enestrom_kakeya(p) if p.degree >= 2 else None,
        rational_roots=R.rational_roots(p),
        roots=rootset,
        degree3=deg3 if deg3.is_degree3 else None,
        lower_bounds=upsilon_lower_bounds(g),
        method=res.method,
        bipartite=is_bipartite(g),
        identities=coefficient_identities(g, p),
    )
    rep.validate()
    return rep
