"""Exact dense univariate polynomials.

:class:`Poly` holds coefficients lowest degree first.  Coefficients are
Python ``int`` (arbitrary precision) or :class:`fractions.Fraction`; the same
class serves as the integer polynomial for acyclic / independence
polynomials and as the rational polynomial for Sturm sequences.  Trailing
zeros are stripped so the zero polynomial has ``coeffs == ()``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import mpmath

DEFAULT_PRECISION = 128


def _strip(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(a) if isinstance(a, Fraction) and a.denominator == 1 else a for a in c)


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip(coeffs))

    def __setattr__(self, key, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == _strip([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                terms.append(f"{a}")
            elif i == 1:
                terms.append(f"{a}x")
            else:
                terms.append(f"{a}x^{i}")
        return " + ".join(terms)

    # ring operations ------------------------------------------------------

    def __add__(self, other) -> "Poly":
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-a for a in self.coeffs])

    def __sub__(self, other) -> "Poly":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "Poly":
        return _lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = _lift(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        result = Poly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over the rationals."""
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(a) for a in self.coeffs]
        lead = Fraction(other.leading)
        db = other.degree
        quot = [Fraction(0)] * max(0, len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] / lead
            if c == 0:
                continue
            quot[i - db] = c
            for j, b in enumerate(other.coeffs):
                rem[i - db + j] -= c * b
        return Poly(quot), Poly(rem[:db] if db > 0 else [])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # evaluation -----------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation; exact for int / Fraction arguments."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def monic(self) -> "Poly":
        lead = Fraction(self.leading)
        return Poly([Fraction(a) / lead for a in self.coeffs])

    def content_primitive(self) -> "Poly":
        """Scale rational coefficients to a primitive integer polynomial with positive lead."""
        if not self.coeffs:
            return self
        fr = [Fraction(a) for a in self.coeffs]
        den = math.lcm(*(a.denominator for a in fr))
        ints = [int(a * den) for a in fr]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return Poly([a // g for a in ints])


def _lift(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, Rational):
        return Poly([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def power(p: Poly, k: int) -> Poly:
    return p ** k


def derivative(p: Poly) -> Poly:
    return Poly([i * a for i, a in enumerate(p.coeffs)][1:])


def scale_arg(p: Poly, k) -> Poly:
    """p(kx)."""
    out = []
    factor = 1
    for a in p.coeffs:
        out.append(a * factor)
        factor *= k
    return Poly(out)


def compose(p: Poly, q: Poly) -> Poly:
    """p(q(x)) by Horner's scheme."""
    acc = Poly()
    for a in reversed(p.coeffs):
        acc = acc * q + a
    return acc


def reverse(p: Poly) -> Poly:
    """x^deg(p) * p(1/x)."""
    if not p:
        raise ValueError("reverse of the zero polynomial is undefined")
    return Poly(reversed(p.coeffs))


def even_odd_split(p: Poly) -> tuple[Poly, Poly]:
    """(f_e, f_o) with p(x) = f_e(x^2) + x f_o(x^2)."""
    return Poly(p.coeffs[0::2]), Poly(p.coeffs[1::2])


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over the rationals (zero if both are zero)."""
    while q:
        p, q = q, p % q
    return p.monic() if p else p


def squarefree_part(p: Poly) -> Poly:
    g = gcd(p, derivative(p))
    return p // g if g.degree > 0 else p


def binomial(n: int, k: int) -> int:
    """C(n, k); zero when k is out of range."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def eval_rational_exact(p: Poly, r) -> Fraction:
    return Fraction(p(Fraction(r)))


def eval_complex(p: Poly, z, precision: int = DEFAULT_PRECISION) -> tuple[mpmath.mpc, mpmath.mpf]:
    """Horner evaluation at ``z`` with ``precision`` mantissa bits.

    Returns the value and a running rounding-error bound
    (Higham's bound ``gamma_{2d} * sum |a_i| |z|^i``).
    """
    with mpmath.workprec(precision):
        z = mpmath.mpc(z)
        acc = mpmath.mpc(0)
        absz = abs(z)
        mag = mpmath.mpf(0)
        for a in reversed(p.coeffs):
            acc = acc * z + _mp(a)
            mag = mag * absz + abs(_mp(a))
        u = mpmath.ldexp(1, -precision)
        d = max(p.degree, 0)
        bound = 2 * (d + 1) * u * mag / (1 - 2 * (d + 1) * u)
        return +acc, +bound


def _mp(a):
    if isinstance(a, Fraction):
        return mpmath.mpf(a.numerator) / a.denominator
    return mpmath.mpf(a)


def to_decimal_strings(p: Poly) -> list[str]:
    """Exact serialisation: integers as decimal, rationals as ``p/q``."""
    return [str(a) for a in p.coeffs]


def from_strings(items: Sequence[str]) -> Poly:
    return Poly(Fraction(s) for s in items)
