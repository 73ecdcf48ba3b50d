"""Dense univariate polynomials over Q (coefficient lists, lowest degree first).

Provides exact gcd, Sturm sequences, real-root counting and isolation with
bisection refinement, and exact rational-root extraction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from typing import Sequence

Poly = list[Fraction]


def strip(p: Sequence) -> Poly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(strip(p)) - 1


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return strip([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, [-c for c in q])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return strip(out)


def derivative(p: Sequence) -> Poly:
    return strip([i * p[i] for i in range(1, len(p))])


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    p, q = strip(p), strip(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lc = q[-1]
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = r[-1] / lc
        quot[k] = c
        for i, b in enumerate(q):
            r[i + k] -= c * b
        r = strip(r)
    return strip(quot), r


def monic(p: Sequence) -> Poly:
    p = strip(p)
    return [c / p[-1] for c in p] if p else []


def gcd(p: Sequence, q: Sequence) -> Poly:
    a, b = strip(p), strip(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def gcd_many(polys: Sequence[Sequence]) -> Poly:
    g: Poly = []
    for p in polys:
        g = gcd(g, p) if g else monic(p)
        if len(g) == 1:
            break
    return g


def squarefree(p: Sequence) -> Poly:
    p = strip(p)
    if len(p) <= 2:
        return monic(p)
    return monic(divmod_poly(p, gcd(p, derivative(p)))[0])


def sturm_sequence(p: Sequence) -> list[Poly]:
    """Sturm chain of the square-free part of ``p``."""
    p0 = squarefree(p)
    seq = [p0, derivative(p0)]
    while seq[-1]:
        r = divmod_poly(seq[-2], seq[-1])[1]
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign_changes(vals: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in vals if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_at_inf(seq: Sequence[Poly], negative: bool) -> int:
    vals = []
    for s in seq:
        lc = s[-1]
        d = len(s) - 1
        vals.append(-lc if negative and d % 2 else lc)
    return _sign_changes(vals)


def count_real_roots(p: Sequence, lo=None, hi=None) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]
    (whole line when bounds are None)."""
    p = strip(p)
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    if len(p) == 1:
        return 0
    seq = sturm_sequence(p)
    va = _sign_at_inf(seq, True) if lo is None else _sign_changes([evaluate(s, lo) for s in seq])
    vb = _sign_at_inf(seq, False) if hi is None else _sign_changes([evaluate(s, hi) for s in seq])
    return va - vb


def cauchy_bound(p: Sequence) -> Fraction:
    p = strip(p)
    lc = abs(p[-1])
    return 1 + max((abs(c) / lc for c in p[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RealRoot:
    """A real root: exact when ``value`` is set, else the unique root of the
    square-free ``poly`` inside the open interval (lo, hi)."""

    lo: Fraction
    hi: Fraction
    value: Fraction | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None

    def midpoint(self) -> Fraction:
        return self.value if self.value is not None else (self.lo + self.hi) / 2


def isolate_real_roots(p: Sequence, width=Fraction(1, 2**20)) -> list[RealRoot]:
    """Isolate all real roots of ``p``; rational roots are reported exactly."""
    p = strip(p)
    if len(p) <= 1:
        return []
    sf = squarefree(p)
    exact = sorted(set(rational_roots(sf)))
    rest = sf
    for r in exact:
        rest = divmod_poly(rest, [-r, 1])[0]
    out = [RealRoot(r, r, r) for r in exact]
    if len(rest) > 1:
        seq = sturm_sequence(rest)
        B = cauchy_bound(rest)

        def changes(x):
            return _sign_changes([evaluate(s, x) for s in seq])

        stack = [(-B, B)]
        while stack:
            a, b = stack.pop()
            n = changes(a) - changes(b)
            if n == 0:
                continue
            if n == 1 and b - a <= width:
                out.append(RealRoot(a, b))
                continue
            m = (a + b) / 2
            if evaluate(rest, m) == 0:  # cannot happen for irrational roots
                raise AssertionError("unexpected rational root")
            stack.extend([(a, m), (m, b)])
    return sorted(out, key=lambda r: r.lo)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.extend([i, n // i])
        i += 1
    return sorted(set(out))


def integer_coeffs(p: Sequence) -> list[int]:
    p = strip(p)
    den = 1
    for c in p:
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = igcd(g, c)
    return [c // g for c in ints] if g else ints


def rational_roots(p: Sequence) -> list[Fraction]:
    """All distinct rational roots (rational root theorem; fine for the small
    coefficients arising here)."""
    p = strip(p)
    if len(p) <= 1:
        return []
    roots = []
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    q = integer_coeffs(p[k:])
    if len(q) == 1:
        return roots
    if len(q) == 2:
        return roots + [Fraction(-q[0], q[1])]
    if len(q) == 3:
        a, b, c = q[2], q[1], q[0]
        disc = b * b - 4 * a * c
        s = _isqrt_exact(disc)
        if s is None:
            return roots
        return roots + sorted({Fraction(-b + s, 2 * a), Fraction(-b - s, 2 * a)})
    for num in _divisors(q[0]):
        for den in _divisors(q[-1]):
            for sgn in (1, -1):
                r = Fraction(sgn * num, den)
                if r not in roots and evaluate(q, r) == 0:
                    roots.append(r)
    return sorted(roots)


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    if n < 0:
        return None
    s = isqrt(n)
    return s if s * s == n else None


def binary_to_univariate(coeffs_by_power: dict[int, Fraction], degree: int) -> tuple[Poly, bool]:
    """Dehomogenise a binary form sum c_k s^(deg-k) t^k at s = 1.

    Returns the polynomial in t and whether (0:1) (the point at infinity of
    the chart) is a root, i.e. whether the t^deg coefficient vanishes.
    """
    p = strip([coeffs_by_power.get(k, Fraction(0)) for k in range(degree + 1)])
    return p, coeffs_by_power.get(degree, Fraction(0)) == 0
