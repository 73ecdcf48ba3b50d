"""Exact homogeneous ternary forms, projective points/lines over Q and the
projective linear action on forms.

Everything here works with :class:`fractions.Fraction`; there is no floating
point anywhere in this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

Exp = tuple[int, int, int]
Vec3 = tuple[Fraction, Fraction, Fraction]

VARS = ("x", "y", "z")


def Q(v) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not accepted as exact coefficients")
    return Fraction(v)


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[Exp, ...]:
    """Exponent triples of the given degree in graded-lex (descending) order."""
    out = [(a, b, degree - a - b) for a in range(degree, -1, -1) for b in range(degree - a, -1, -1)]
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(degree: int) -> dict[Exp, int]:
    return {m: i for i, m in enumerate(monomials(degree))}


class TernaryForm:
    """A homogeneous polynomial in x, y, z with rational coefficients.

    Terms map exponent triples to nonzero Fractions. Instances are treated as
    immutable values; arithmetic always returns new objects.
    """

    __slots__ = ("degree", "_terms", "_hash")

    def __init__(self, degree: int, terms: Mapping[Exp, object] | None = None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean: dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != degree:
                raise ValueError(f"exponent {e} does not fit degree {degree}")
            c = Q(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.degree = degree
        self._terms = clean
        self._hash = None

    # -- construction ---------------------------------------------------
    @classmethod
    def zero(cls, degree: int) -> "TernaryForm":
        return cls(degree, {})

    @classmethod
    def monomial(cls, exp: Exp, coef=1) -> "TernaryForm":
        return cls(sum(exp), {tuple(exp): coef})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "TernaryForm":
        a, b, c = coeffs
        return cls(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    @classmethod
    def from_vector(cls, degree: int, vec: Sequence) -> "TernaryForm":
        mons = monomials(degree)
        if len(vec) != len(mons):
            raise ValueError("vector length does not match the monomial count")
        return cls(degree, {m: c for m, c in zip(mons, vec) if c})

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "TernaryForm":
        from .textio import parse_form

        return parse_form(text, degree)

    # -- basic protocol -------------------------------------------------
    @property
    def terms(self) -> dict[Exp, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: Exp) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def to_vector(self) -> list[Fraction]:
        return [self._terms.get(m, Fraction(0)) for m in monomials(self.degree)]

    def __eq__(self, other) -> bool:
        if isinstance(other, TernaryForm):
            if not self._terms and not other._terms:
                return True
            return self.degree == other.degree and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"TernaryForm({self.degree}, {str(self)!r})"

    def __str__(self) -> str:
        from .textio import format_form

        return format_form(self)

    # -- arithmetic -----------------------------------------------------
    def _check_degree(self, other: "TernaryForm") -> None:
        if self.degree != other.degree and self._terms and other._terms:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if not isinstance(other, TernaryForm):
            return NotImplemented
        self._check_degree(other)
        deg = self.degree if self._terms else other.degree
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TernaryForm(deg, out)

    def __neg__(self) -> "TernaryForm":
        return TernaryForm(self.degree, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def scale(self, c) -> "TernaryForm":
        c = Q(c)
        return TernaryForm(self.degree, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TernaryForm):
            return NotImplemented
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return TernaryForm(self.degree + other.degree, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "TernaryForm":
        out = TernaryForm(0, {(0, 0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    # -- calculus and evaluation ----------------------------------------
    def __call__(self, *pt) -> Fraction:
        if len(pt) == 1:
            pt = tuple(pt[0])
        a, b, c = (Q(v) for v in pt)
        total = Fraction(0)
        for (i, j, k), coef in self._terms.items():
            total += coef * a**i * b**j * c**k
        return total

    def derivative(self, var: int) -> "TernaryForm":
        out: dict[Exp, Fraction] = {}
        for e, c in self._terms.items():
            if e[var]:
                ne = list(e)
                ne[var] -= 1
                out[tuple(ne)] = c * e[var]
        return TernaryForm(max(self.degree - 1, 0), out)

    def gradient_forms(self) -> tuple["TernaryForm", "TernaryForm", "TernaryForm"]:
        return tuple(self.derivative(i) for i in range(3))  # type: ignore[return-value]

    def substitute(self, rows: Sequence[Sequence]) -> "TernaryForm":
        """Return ``f(R v)``: variable i is replaced by the linear form ``rows[i]``."""
        lin = [TernaryForm.linear(r) for r in rows]
        # cache powers of each substituted linear form
        powers = [[TernaryForm(0, {(0, 0, 0): 1})] for _ in range(3)]
        for i in range(3):
            for _ in range(self.degree):
                powers[i].append(powers[i][-1] * lin[i])
        out = TernaryForm.zero(self.degree)
        for (a, b, c), coef in self._terms.items():
            out = out + (powers[0][a] * powers[1][b] * powers[2][c]).scale(coef)
        return out

    def normalized(self) -> "TernaryForm":
        """Scale so the graded-lex first nonzero coefficient equals 1."""
        for m in monomials(self.degree):
            c = self._terms.get(m)
            if c:
                return self.scale(1 / c)
        return self

    def variables_used(self) -> set[int]:
        return {i for e in self._terms for i in range(3) if e[i]}


def form(text: str, degree: int | None = None) -> TernaryForm:
    """Shorthand for :meth:`TernaryForm.parse`."""
    return TernaryForm.parse(text, degree)


def sum_of_squares(qs: Iterable[TernaryForm]) -> TernaryForm:
    qs = list(qs)
    if not qs:
        return TernaryForm.zero(4)
    out = TernaryForm.zero(2 * qs[0].degree)
    for q in qs:
        out = out + q * q
    return out


# ---------------------------------------------------------------------------
# projective points and lines


def _canonical(v: Sequence) -> Vec3:
    v = tuple(Q(c) for c in v)
    if len(v) != 3:
        raise ValueError("expected three coordinates")
    for c in v:
        if c:
            return tuple(x / c for x in v)  # type: ignore[return-value]
    raise ValueError("the zero vector is not a projective point")


def cross(u: Sequence, v: Sequence) -> Vec3:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Q(a) * Q(b) for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class ProjPoint:
    """A point of the real projective plane with rational coordinates,
    stored with its first nonzero coordinate equal to 1."""

    coords: Vec3

    def __init__(self, *coords):
        if len(coords) == 1:
            coords = tuple(coords[0])
        object.__setattr__(self, "coords", _canonical(coords))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"

    def __repr__(self) -> str:
        return f"ProjPoint{str(self)}"


@dataclass(frozen=True)
class ProjLine:
    """A line, stored as the coefficient vector of a linear form vanishing on
    it (canonical representative as for points)."""

    coeffs: Vec3

    def __init__(self, *coeffs):
        if len(coeffs) == 1:
            coeffs = tuple(coeffs[0])
        object.__setattr__(self, "coeffs", _canonical(coeffs))

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    def as_form(self) -> TernaryForm:
        return TernaryForm.linear(self.coeffs)

    def points(self) -> tuple[Vec3, Vec3]:
        """Two independent vectors spanning the line, chosen deterministically."""
        found: list[Vec3] = []
        for e in E_VECS:
            v = cross(self.coeffs, e)
            if any(v) and (not found or any(cross(found[0], v))):
                found.append(v)
            if len(found) == 2:
                break
        return found[0], found[1]

    def __str__(self) -> str:
        return f"Var({self.as_form()})"

    def __repr__(self) -> str:
        return f"ProjLine[{':'.join(str(c) for c in self.coeffs)}]"


E_VECS: tuple[Vec3, ...] = (
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1)),
)

e1 = ProjPoint(1, 0, 0)
e2 = ProjPoint(0, 1, 0)
e3 = ProjPoint(0, 0, 1)
e4 = ProjPoint(1, 1, 1)


def eval_at(f: TernaryForm, p: ProjPoint) -> Fraction:
    return f(p.coords)


def gradient(f: TernaryForm, p) -> Vec3:
    pt = p.coords if isinstance(p, ProjPoint) else tuple(p)
    return tuple(d(pt) for d in f.gradient_forms())  # type: ignore[return-value]


def incident(p: ProjPoint, l: ProjLine) -> bool:
    return dot(p.coords, l.coeffs) == 0


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    c = cross(p.coords, q.coords)
    if not any(c):
        raise ValueError(f"cannot join a point with itself: {p}")
    return ProjLine(c)


def meet(l: ProjLine, k: ProjLine) -> ProjPoint:
    c = cross(l.coeffs, k.coeffs)
    if not any(c):
        raise ValueError("lines coincide")
    return ProjPoint(c)


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return det3([p.coords, q.coords, r.coords]) == 0


def _translate(f: TernaryForm, cols: Sequence[Sequence]) -> TernaryForm:
    """``f(c0*x + c1*y + c2*z)`` for column vectors c0, c1, c2."""
    rows = [[cols[j][i] for j in range(3)] for i in range(3)]
    return f.substitute(rows)


def local_frame(p: ProjPoint) -> tuple[Vec3, Vec3, Vec3]:
    """Deterministic frame (p, u, v): u, v are the first two standard basis
    vectors that complete p to a basis."""
    vecs = [p.coords]
    for e in E_VECS:
        trial = vecs + [e]
        if len(trial) == 3:
            if det3(trial):
                vecs = trial
                break
        elif any(cross(trial[0], trial[1])):
            vecs = trial
    return tuple(vecs)  # type: ignore[return-value]


def ord_at(f: TernaryForm, p: ProjPoint) -> int:
    """Order of vanishing of ``f`` at ``p``."""
    if f.is_zero():
        raise ValueError("ord_at is undefined for the zero form")
    g = _translate(f, local_frame(p))
    # in these coordinates p = e1; local degree is total degree in (y, z)
    return min(e[1] + e[2] for e, _ in g.items())


def divide_exact(f: TernaryForm, g: TernaryForm) -> TernaryForm | None:
    """Return ``q`` with ``f == g*q`` or ``None`` when ``g`` does not divide ``f``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        return TernaryForm.zero(max(f.degree - g.degree, 0))
    if g.degree > f.degree:
        return None
    order = monomial_index(g.degree)
    lead_g = min(g._terms, key=lambda e: order[e])
    lc = g._terms[lead_g]
    rem = f
    quot: dict[Exp, Fraction] = {}
    qdeg = f.degree - g.degree
    rorder = monomial_index(f.degree)
    while rem:
        lead = min(rem._terms, key=lambda e: rorder[e])
        e = tuple(a - b for a, b in zip(lead, lead_g))
        if min(e) < 0:
            return None
        c = rem._terms[lead] / lc
        quot[e] = c
        rem = rem - g * TernaryForm(qdeg, {e: c})
    return TernaryForm(qdeg, quot)


# ---------------------------------------------------------------------------
# 3x3 rational matrices and the projective action


def det3(m: Sequence[Sequence]) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def mat_inv3(m: Sequence[Sequence]) -> tuple[Vec3, Vec3, Vec3]:
    d = det3(m)
    if d == 0:
        raise ValueError("matrix is singular")
    (a, b, c), (dd, e, f), (g, h, i) = [[Q(v) for v in r] for r in m]
    adj = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - dd * i, a * i - c * g, c * dd - a * f),
        (dd * h - e * g, b * g - a * h, a * e - b * dd),
    )
    return tuple(tuple(x / d for x in r) for r in adj)  # type: ignore[return-value]


def mat_mul3(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[Vec3, Vec3, Vec3]:
    return tuple(
        tuple(sum((Q(a[i][k]) * Q(b[k][j]) for k in range(3)), Fraction(0)) for j in range(3))
        for i in range(3)
    )  # type: ignore[return-value]


def mat_vec3(a: Sequence[Sequence], v: Sequence) -> Vec3:
    return tuple(sum((Q(a[i][k]) * Q(v[k]) for k in range(3)), Fraction(0)) for i in range(3))  # type: ignore[return-value]


@dataclass(frozen=True)
class Transform:
    """An invertible 3x3 rational matrix acting on points by ``p -> M p`` and
    on forms by ``f -> f(M^-1 x)``."""

    matrix: tuple[Vec3, Vec3, Vec3]

    def __init__(self, matrix):
        m = tuple(tuple(Q(v) for v in row) for row in matrix)
        if len(m) != 3 or any(len(r) != 3 for r in m):
            raise ValueError("expected a 3x3 matrix")
        if det3(m) == 0:
            raise ValueError("transform matrix must be invertible")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "Transform":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "Transform":
        """Matrix sending e_i to e_perm[i]."""
        m = [[0] * 3 for _ in range(3)]
        for i, j in enumerate(perm):
            m[j][i] = 1
        return cls(m)

    @property
    def inverse_matrix(self):
        return mat_inv3(self.matrix)

    def inverse(self) -> "Transform":
        return Transform(self.inverse_matrix)

    def __matmul__(self, other: "Transform") -> "Transform":
        return Transform(mat_mul3(self.matrix, other.matrix))

    def apply_point(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(mat_vec3(self.matrix, p.coords))

    def apply_line(self, l: ProjLine) -> ProjLine:
        inv = self.inverse_matrix
        return ProjLine(tuple(sum(l.coeffs[i] * inv[i][j] for i in range(3)) for j in range(3)))

    def apply_form(self, f: TernaryForm) -> TernaryForm:
        return act(self, f)

    def same_projective(self, other: "Transform") -> bool:
        a = [v for r in self.matrix for v in r]
        b = [v for r in other.matrix for v in r]
        k = next(i for i, v in enumerate(a) if v)
        if b[k] == 0:
            return False
        s = a[k] / b[k]
        return all(x == s * y for x, y in zip(a, b))

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in r] for r in self.matrix]

    @classmethod
    def from_json(cls, data) -> "Transform":
        return cls([[Fraction(v) for v in r] for r in data])


def act(sigma: Transform, f: TernaryForm) -> TernaryForm:
    """``(sigma . f)(x) = f(sigma^-1 x)``; exact, no rescaling."""
    return f.substitute(sigma.inverse_matrix)


def frame_transform(targets: Sequence[ProjPoint]) -> Transform:
    """The transform sending e1, e2, e3, e4 to the four given points."""
    if len(targets) != 4:
        raise ValueError("need exactly four target points")
    pts = [t.coords for t in targets]
    for i in range(4):
        for j in range(i + 1, 4):
            for k in range(j + 1, 4):
                if det3([pts[i], pts[j], pts[k]]) == 0:
                    raise ValueError("three of the target points are collinear")
    cols = pts[:3]
    basis = [[cols[j][i] for j in range(3)] for i in range(3)]
    lam = mat_vec3(mat_inv3(basis), pts[3])
    m = [[cols[j][i] * lam[j] for j in range(3)] for i in range(3)]
    return Transform(m)


def all_rational_points(bound: int) -> Iterable[ProjPoint]:
    """Canonical points with integer coordinates in ``[-bound, bound]``."""
    seen = set()
    for v in product(range(-bound, bound + 1), repeat=3):
        if any(v):
            p = ProjPoint(v)
            if p not in seen:
                seen.add(p)
                yield p
