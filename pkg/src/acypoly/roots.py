"""Root location for integer polynomials.

Numeric roots come from Aberth-Ehrlich simultaneous iteration (a double
precision pass to get close, then polishing in mpmath at the requested
precision).  Every yes/no verdict (real
rootedness, stability, interval counts) is made in exact rational
arithmetic with Sturm sequences instead.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
import mpmath
import numpy as np

from .poly import DEFAULT_PRECISION, Poly, derivative, even_odd_split, gcd, squarefree_part

HIGH_DEGREE = 120
HIGH_PRECISION = 256


class RootFindingError(ArithmeticError):
    """Simultaneous iteration did not reach the residual target."""

    def __init__(self, message, roots=None, residuals=None):
        super().__init__(message)
        self.roots = roots
        self.residuals = residuals


# ---------------------------------------------------------------------------
# Numeric roots
# ---------------------------------------------------------------------------

@dataclass
class RootSet:
    roots: list
    multiplicities: list[int]
    residuals: list
    precision: int

    def __len__(self) -> int:
        return len(self.roots)

    def as_complex(self) -> list[complex]:
        return [complex(z) for z in self.roots]

    def real_roots(self, tol: float = 1e-12) -> list:
        return [z for z in self.roots if abs(z.imag) <= tol * max(1, abs(z))]

    def distinct_real_count(self, tol: float = 1e-12) -> int:
        seen = set()
        for z, cluster in zip(self.roots, self.clusters):
            if abs(z.imag) <= tol * max(1, abs(z)):
                seen.add(cluster)
        return len(seen)

    clusters: list[int] = field(default_factory=list)

    def to_json(self) -> dict:
        digits = max(15, int(self.precision * math.log10(2)) - 4)
        return {
            "precision": self.precision,
            "roots": [
                {"re": mpmath.nstr(z.real, digits), "im": mpmath.nstr(z.imag, digits),
                 "multiplicity": m, "residual": mpmath.nstr(r, 6)}
                for z, m, r in zip(self.roots, self.multiplicities, self.residuals)
            ],
        }


def default_precision(degree: int) -> int:
    return HIGH_PRECISION if degree > HIGH_DEGREE else DEFAULT_PRECISION


def _initial_radius(p: Poly) -> float:
    c = p.coeffs
    if p.degree >= 2 and all(a > 0 for a in c):
        ann = enestrom_kakeya(p)
        return math.sqrt(float(ann.lo) * float(ann.hi))
    lead = abs(c[-1])
    return 1 + max(float(abs(Fraction(a) / lead)) for a in c[:-1])


def _initial_points(p: Poly) -> list[complex]:
    d = p.degree
    r = _initial_radius(p)
    return [r * cmath.exp(1j * (2 * math.pi * k / d + 0.4)) for k in range(d)]


def _aberth_double(p: Poly, z0: list[complex], iters: int = 400) -> np.ndarray | None:
    try:
        a = np.array([float(c) for c in reversed(p.coeffs)], dtype=complex)
    except OverflowError:
        return None
    z = np.array(z0, dtype=complex)
    d = len(z)
    ra = a[::-1]
    with np.errstate(all="ignore"):
        for _ in range(iters):
            # outside the unit disc evaluate the reversal to avoid overflow
            big = np.abs(z) > 1
            u = np.where(big, 1 / z, z)
            pv, dv = _np_horner2(a, ra, u, big)
            w = np.where(big, z / (d - u * dv / pv), pv / dv)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1)
            s = (1 / diff).sum(axis=1) - 1
            delta = w / (1 - w * s)
            delta[~np.isfinite(delta)] = 0
            z = z - delta
            if np.all(np.abs(delta) <= 1e-15 * np.maximum(np.abs(z), 1e-300)):
                break
    if not np.all(np.isfinite(z)):
        return None
    return z


def _np_horner2(a, ra, u, big):
    pv = np.where(big, ra[0], a[0]).astype(complex)
    dv = np.zeros_like(pv)
    for c, rc in zip(a[1:], ra[1:]):
        dv = dv * u + pv
        pv = pv * u + np.where(big, rc, c)
    return pv, dv


def _horner2(coeffs, z):
    pv = coeffs[-1]
    dv = 0
    mag = abs(coeffs[-1])
    az = abs(z)
    for c in reversed(coeffs[:-1]):
        dv = dv * z + pv
        pv = pv * z + c
        mag = mag * az + abs(c)
    return pv, dv, mag


def _to_mpf(x) -> mpmath.mpf:
    if gmpy2.is_nan(x) or gmpy2.is_infinite(x):
        return mpmath.mpf(float(x))
    num, den = x.as_integer_ratio()
    return mpmath.mpf(num) / den


def _to_mpc(z) -> mpmath.mpc:
    return mpmath.mpc(_to_mpf(z.real), _to_mpf(z.imag))


def all_roots(p: Poly, precision: int | None = None, tol: float = 1e-12,
              max_iter: int = 2000) -> RootSet:
    """All complex roots of ``p`` with backward error ``|p(z)| / sum|a_i||z|^i <= tol``.

    Deterministic: starts from equally spaced points (fixed phase) on a circle
    whose radius is the geometric mean of the Enestrom-Kakeya bounds when
    those apply.  Roots come back as ``mpmath.mpc`` at ``precision`` bits.
    """
    d = p.degree
    if d < 1:
        raise ValueError("all_roots needs a polynomial of degree >= 1")
    prec = default_precision(d) if precision is None else precision
    start = _initial_points(p)
    fast = _aberth_double(p, start)
    if fast is not None:
        start = list(fast)
    with gmpy2.context(gmpy2.get_context(), precision=prec):
        coeffs = [gmpy2.mpc(gmpy2.mpq(c.numerator, c.denominator)) if isinstance(c, Fraction)
                  else gmpy2.mpc(c) for c in p.coeffs]
        z = [gmpy2.mpc(s) for s in start]
        # nudge coincident starts apart
        for i in range(d):
            for j in range(i):
                if z[i] == z[j]:
                    z[i] += gmpy2.mpc(0, 2.0 ** -20 * (i + 1))
        eps = gmpy2.mpfr(2) ** -prec
        step_tol = eps * 2 ** 10
        be_tol = eps * 16 * (d + 1)
        noise = gmpy2.mpfr(2) ** -(prec // 2)
        residuals = [gmpy2.inf()] * d
        last = [gmpy2.inf()] * d
        active = set(range(d))
        for _ in range(max_iter):
            if not active:
                break
            sums = _pair_sums(z)
            for i in sorted(active):
                pv, dv, mag = _horner2(coeffs, z[i])
                be = abs(pv) / mag if mag else gmpy2.mpfr(0)
                residuals[i] = be
                if be <= be_tol:
                    active.discard(i)
                    continue
                if dv == 0:
                    z[i] += gmpy2.mpc(noise, noise)
                    continue
                w = pv / dv
                s = sums[i]
                if s is None:
                    s = sum(1 / (z[i] - z[j]) for j in range(d) if j != i)
                delta = w / (1 - w * s)
                z[i] -= delta
                step = abs(delta) / max(abs(z[i]), eps)
                # converged, or stuck at the rounding floor
                if step <= step_tol or (step < noise and step > last[i] / 2):
                    active.discard(i)
                last[i] = step
        for i in range(d):
            pv, _, mag = _horner2(coeffs, z[i])
            residuals[i] = abs(pv) / mag if mag else gmpy2.mpfr(0)
        clusters = _clusters(coeffs, z)
    with mpmath.workprec(prec):
        roots = [_to_mpc(w) for w in z]
        res = [_to_mpf(r) for r in residuals]
    worst = max(res)
    if worst > tol:
        raise RootFindingError(
            f"Aberth iteration did not converge: worst residual {mpmath.nstr(worst, 5)}",
            roots=roots, residuals=res)
    counts = {}
    for c in clusters:
        counts[c] = counts.get(c, 0) + 1
    return RootSet(roots=roots, multiplicities=[counts[c] for c in clusters],
                   residuals=res, precision=prec, clusters=clusters)


def _pair_sums(z) -> list:
    """sum_j 1/(z_i - z_j) in double precision, None where roots crowd together.

    The Aberth correction only needs this sum to low relative accuracy once
    the Newton step is small, so the quadratic part runs in numpy.
    """
    zc = np.array([complex(w) for w in z])
    diff = zc[:, None] - zc[None, :]
    np.fill_diagonal(diff, np.inf)
    scale = np.maximum(np.abs(zc), 1.0)
    crowded = np.abs(diff).min(axis=1) < 1e-8 * scale
    with np.errstate(all="ignore"):
        s = (1 / diff).sum(axis=1)
    return [None if c or not np.isfinite(v) else gmpy2.mpc(complex(v)) for c, v in zip(crowded, s)]


def _clusters(coeffs, z) -> list[int]:
    """Group roots whose Newton inclusion discs, radius d|p/p'|, overlap."""
    d = len(z)
    radius = []
    for w in z:
        pv, dv, _ = _horner2(coeffs, w)
        radius.append(d * abs(pv / dv) if dv != 0 else gmpy2.inf())
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i):
            if abs(z[i] - z[j]) <= radius[i] + radius[j]:
                parent[find(i)] = find(j)
    labels = {}
    return [labels.setdefault(find(i), len(labels)) for i in range(d)]


def is_stable_numeric(p: Poly, margin: float = 1e-9, precision: int | None = None) -> bool:
    """Every computed root has real part < -margin.  Cross-check oracle only."""
    rs = all_roots(p, precision=precision)
    return all(z.real < -margin for z in rs.roots)


# ---------------------------------------------------------------------------
# Sturm machinery
# ---------------------------------------------------------------------------

def sturm_chain(p: Poly) -> list[Poly]:
    """f_0 = p, f_1 = p', f_i = -rem(f_{i-2}, f_{i-1}) until the remainder vanishes."""
    if not p:
        raise ValueError("Sturm chain of the zero polynomial is undefined")
    chain = [p]
    d = derivative(p)
    while d:
        chain.append(d)
        d = -(chain[-2] % chain[-1])
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _value_sign(f: Poly, x) -> int:
    if x == math.inf:
        return _sign(f.leading)
    if x == -math.inf:
        return _sign(f.leading) * (-1) ** f.degree
    return _sign(f(x))


def sign_changes(chain: list[Poly], x) -> int:
    signs = [s for s in (_value_sign(f, x) for f in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots_in(p: Poly, a=-math.inf, b=math.inf, chain: list[Poly] | None = None) -> int:
    """Number of distinct real roots in the open interval (a, b); a, b rational or infinite."""
    fa = a if a in (math.inf, -math.inf) else Fraction(a)
    fb = b if b in (math.inf, -math.inf) else Fraction(b)
    if not fa < fb:
        raise ValueError("count_real_roots_in requires a < b")
    for e in (fa, fb):
        if e not in (math.inf, -math.inf) and p(e) == 0:
            raise ValueError(f"endpoint {e} is a root; perturb it")
    chain = sturm_chain(p) if chain is None else chain
    return sign_changes(chain, fa) - sign_changes(chain, fb)


def cauchy_bound(p: Poly) -> Fraction:
    """Every root has modulus strictly below this value."""
    lead = abs(Fraction(p.leading))
    return 1 + max((abs(Fraction(a)) / lead for a in p.coeffs[:-1]), default=Fraction(0))


def _split_point(p: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    for k in range(1, 1000):
        for num, den in ((1, 2), (k, 2 * k + 1), (k + 1, 2 * k + 1)):
            m = lo + (hi - lo) * num / den
            if p(m) != 0:
                return m
    raise ArithmeticError("no non-root split point found")


def isolate_real_roots(p: Poly, lo=None, hi=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals, in increasing order, each holding one distinct real root."""
    bound = cauchy_bound(p)
    lo = -bound if lo is None else Fraction(lo)
    hi = bound if hi is None else Fraction(hi)
    chain = sturm_chain(p)
    out = []
    stack = [(lo, hi, count_real_roots_in(p, lo, hi, chain))]
    while stack:
        a, b, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = _split_point(p, a, b)
        stack.append((m, b, count_real_roots_in(p, m, b, chain)))
        stack.append((a, m, count_real_roots_in(p, a, m, chain)))
    return sorted(out)


def real_root_in(p: Poly, a, b, width=Fraction(1, 10 ** 30)) -> Fraction:
    """Bisect a sign change of ``p`` on (a, b) down to ``width``."""
    a, b = Fraction(a), Fraction(b)
    sa = _sign(p(a))
    if sa == 0:
        return a
    if sa == _sign(p(b)):
        raise ValueError("no sign change on the interval")
    while b - a > width:
        m = (a + b) / 2
        sm = _sign(p(m))
        if sm == 0:
            return m
        if sm == sa:
            a = m
        else:
            b = m
    return (a + b) / 2


def is_real_rooted(p: Poly) -> bool:
    """All roots real, decided exactly on the square-free part.

    True iff the Sturm sequence of the square-free part drops degree by one
    at every step down to a constant and every leading coefficient is positive.
    """
    if p.degree < 1:
        raise ValueError("is_real_rooted needs degree >= 1")
    if p.leading <= 0:
        raise ValueError("is_real_rooted needs a positive leading coefficient")
    q = squarefree_part(p)
    chain = sturm_chain(q)
    degrees = [f.degree for f in chain]
    if degrees != list(range(q.degree, -1, -1)):
        return False
    return all(f.leading > 0 for f in chain)


def has_degree_gap(chain: list[Poly]) -> bool:
    return any(b.degree <= a.degree - 2 for a, b in zip(chain, chain[1:]))


def is_stable_hb(p: Poly) -> bool:
    """Hurwitz stability (all roots in the open left half-plane), decided exactly.

    With p(x) = f_e(x^2) + x f_o(x^2): p is stable iff all coefficients are
    positive, f_e and f_o have only simple negative real roots, they share no
    root, and those roots strictly alternate starting from f_e nearest zero:
    0 > e_1 > o_1 > e_2 > o_2 > ...
    """
    if p.degree < 1:
        raise ValueError("is_stable_hb needs degree >= 1")
    if p.leading <= 0:
        raise ValueError("is_stable_hb needs a standard polynomial (positive leading coefficient)")
    if any(a <= 0 for a in p.coeffs):
        return False
    fe, fo = even_odd_split(p)
    if gcd(fe, fo).degree > 0:
        return False
    zero = Fraction(0)
    bound = max(cauchy_bound(fe), cauchy_bound(fo)) + 1
    if fe.degree and count_real_roots_in(fe, -bound, zero) != fe.degree:
        return False
    if fo.degree and count_real_roots_in(fo, -bound, zero) != fo.degree:
        return False
    if fo.degree == 0:
        return True
    fe_chain = sturm_chain(fe)
    # isolate roots of f_o, nearest zero first, away from every root of f_e
    cells = []
    for a, b in reversed(isolate_real_roots(fo, -bound, zero)):
        while fe(a) == 0 or fe(b) == 0 or count_real_roots_in(fe, a, b, fe_chain) > 0:
            m = _split_point(fo, a, b)
            if _sign(fo(a)) != _sign(fo(m)):
                b = m
            else:
                a = m
        cells.append((a, b))
    upper = zero
    for a, b in cells:
        if count_real_roots_in(fe, b, upper, fe_chain) != 1:
            return False
        upper = a
    return count_real_roots_in(fe, -bound - 1, upper, fe_chain) == fe.degree - fo.degree


# ---------------------------------------------------------------------------
# Coefficient-level bounds and tests
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Annulus:
    lo: Fraction
    hi: Fraction

    def contains(self, modulus, slack: float = 0.0) -> bool:
        return float(self.lo) * (1 - slack) <= modulus <= float(self.hi) * (1 + slack)


def enestrom_kakeya(p: Poly) -> Annulus:
    """Min / max of consecutive ratios a_{i-1}/a_i bound every root modulus."""
    if p.degree < 2:
        raise ValueError("Enestrom-Kakeya needs degree >= 2")
    if any(a <= 0 for a in p.coeffs):
        raise ValueError("Enestrom-Kakeya needs strictly positive coefficients")
    ratios = [Fraction(p.coeffs[i - 1], p.coeffs[i]) if not isinstance(p.coeffs[i], Fraction)
              else Fraction(p.coeffs[i - 1]) / p.coeffs[i] for i in range(1, len(p.coeffs))]
    return Annulus(min(ratios), max(ratios))


def cubic_discriminant(a, b, c, d):
    """Discriminant of a x^3 + b x^2 + c x + d."""
    if a == 0:
        raise ValueError("leading coefficient must be nonzero")
    return 18 * a * b * c * d - 4 * b ** 3 * d + b * b * c * c - 4 * a * c ** 3 - 27 * a * a * d * d


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: Poly) -> list[Fraction]:
    """Rational roots of a constant-term-1, positive-coefficient polynomial.

    Such roots are -1/k with k dividing the leading coefficient.
    """
    if p[0] != 1 or any(a <= 0 for a in p.coeffs):
        raise ValueError("rational_roots needs constant term 1 and positive coefficients")
    hits = [Fraction(-1, k) for k in _divisors(p.leading) if p(Fraction(-1, k)) == 0]
    return sorted(hits)


def is_unimodal(p) -> bool:
    c = list(p)
    i = 0
    while i + 1 < len(c) and c[i] <= c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] >= c[i + 1]:
        i += 1
    return i + 1 >= len(c)


def is_log_concave(p) -> bool:
    c = list(p)
    nz = [i for i, a in enumerate(c) if a != 0]
    if nz and nz != list(range(nz[0], nz[-1] + 1)):
        return False
    return all(c[i] * c[i] >= c[i - 1] * c[i + 1] for i in range(1, len(c) - 1))


# ---------------------------------------------------------------------------
# Limit curves of AC(K_{1,n-1}[K_2])
# ---------------------------------------------------------------------------

SQRT2 = math.sqrt(2)
LIMACON_RANGE = (math.pi / 4, 7 * math.pi / 4)
_SAMPLES = 10_000


def limacon_point(theta: float) -> complex:
    return (SQRT2 - 2 * math.cos(theta)) * cmath.exp(1j * theta)


def circle_point(t: float) -> complex:
    return -0.5 + 0.5 * cmath.exp(1j * t)


def _golden_min(f, a: float, b: float, tol: float = 1e-13) -> tuple[float, float]:
    inv = (math.sqrt(5) - 1) / 2
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def limit_curve_distance(z) -> float:
    """Distance from z to |z + 1/2| = 1/2 united with r = sqrt2 - 2cos(theta), pi/4 < theta < 7pi/4."""
    w = complex(z)
    circle = abs(abs(w + 0.5) - 0.5)
    lo, hi = LIMACON_RANGE
    step = (hi - lo) / _SAMPLES
    thetas = [lo + step * k for k in range(_SAMPLES + 1)]

    def dist(t: float) -> float:
        return abs(w - limacon_point(t))

    values = [dist(t) for t in thetas]
    k = min(range(len(values)), key=values.__getitem__)
    a = thetas[max(k - 1, 0)]
    b = thetas[min(k + 1, _SAMPLES)]
    _, best = _golden_min(dist, a, b)
    return min(circle, best, values[k])
