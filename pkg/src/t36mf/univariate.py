"""Dense univariate polynomials over the rationals.

A polynomial is a tuple of :class:`~fractions.Fraction` coefficients, lowest
degree first, with no trailing zeros; ``()`` is zero.  These back the Smith
normal form over k[t] and root finding for rational pencils.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, List, Sequence, Tuple

UPoly = Tuple[Fraction, ...]

ZERO: UPoly = ()
ONE: UPoly = (Fraction(1),)


def make(coeffs: Iterable) -> UPoly:
    c = [Fraction(v) for v in coeffs]
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def deg(p: UPoly) -> int:
    return len(p) - 1


def add(p: UPoly, q: UPoly) -> UPoly:
    n = max(len(p), len(q))
    return make((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def neg(p: UPoly) -> UPoly:
    return tuple(-c for c in p)


def sub(p: UPoly, q: UPoly) -> UPoly:
    return add(p, neg(q))


def mul(p: UPoly, q: UPoly) -> UPoly:
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return make(out)


def scale(p: UPoly, c) -> UPoly:
    return make(a * c for a in p)


def divmod_(p: UPoly, d: UPoly) -> Tuple[UPoly, UPoly]:
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(p)
    q = [Fraction(0)] * max(len(p) - len(d) + 1, 0)
    lead = d[-1]
    while len(r) >= len(d) and r:
        c = r[-1] / lead
        k = len(r) - len(d)
        q[k] = c
        for i, b in enumerate(d):
            r[k + i] -= c * b
        while r and not r[-1]:
            r.pop()
    return make(q), make(r)


def monic(p: UPoly) -> UPoly:
    return scale(p, 1 / p[-1]) if p else ZERO


def gcd_(p: UPoly, q: UPoly) -> UPoly:
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def divides(d: UPoly, p: UPoly) -> bool:
    if not d:
        return not p
    return not divmod_(p, d)[1]


def valuation(p: UPoly) -> float:
    """Order of vanishing at t = 0; ``inf`` for zero."""
    for i, c in enumerate(p):
        if c:
            return i
    return float("inf")


def evaluate(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def interpolate(xs: Sequence, ys: Sequence) -> UPoly:
    """Lagrange interpolation through distinct nodes."""
    acc: UPoly = ZERO
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis: UPoly = ONE
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = mul(basis, make((-xj, 1)))
                denom *= xi - xj
        acc = add(acc, scale(basis, Fraction(yi) / denom))
    return acc


def to_str(p: UPoly, var: str = "t") -> str:
    if not p:
        return "0"
    parts: List[str] = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = str(a) if (a != 1 or not mono) else ""
        term = body + ("*" if body and mono else "") + mono
        parts.append((sign, term))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, term in parts[1:]:
        out += f" {s} {term}"
    return out


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p: UPoly) -> List[Tuple[Fraction, int]]:
    """Rational roots with multiplicities (rational root test)."""
    if not p:
        raise ValueError("zero polynomial has every root")
    out: List[Tuple[Fraction, int]] = []
    v = valuation(p)
    if v:
        out.append((Fraction(0), int(v)))
        p = p[int(v):]
    # clear denominators, make primitive
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    cands = set()
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    cur = make(ints)
    for r in sorted(cands):
        m = 0
        while deg(cur) > 0 and evaluate(cur, r) == 0:
            cur = divmod_(cur, make((-r, 1)))[0]
            m += 1
        if m:
            out.append((r, m))
    return sorted(out)
