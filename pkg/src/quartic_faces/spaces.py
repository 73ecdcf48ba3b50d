"""Zero configurations and the linear spaces they cut out.

``J_S`` is the space of quadrics whose squares vanish on the configuration S,
``I_S`` the space of quartics singular at every point of S with the extra
tangency condition at directed points. Also here: real zero sets of nets of
conics (resultants plus Sturm isolation) and the fullness test.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import upoly
from .blowup import ChartFrame, d2_at_zero, inp
from .forms import (
    ProjLine,
    ProjPoint,
    TernaryForm,
    Transform,
    act,
    collinear,
    gradient,
    incident,
    monomials,
    ord_at,
    sum_of_squares,
)
from .linalg import LinSubspace, nullspace, quadratic_matrix, rank, rref, signature
from .textio import parse_rational, vec_to_json


class InvalidConfig(ValueError):
    pass


class ZeroSetIsPlane(ValueError):
    """Raised when asked for the zero set of the zero space (all of P^2)."""


@dataclass(frozen=True)
class ZeroConfig:
    """Simple zeros ``simple_points`` and zeros with a tangent direction ``directed``."""

    simple_points: tuple[ProjPoint, ...] = ()
    directed: tuple[tuple[ProjPoint, ProjLine], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "simple_points", tuple(self.simple_points))
        object.__setattr__(self, "directed", tuple((p, l) for p, l in self.directed))
        pts = self.points()
        if len(set(pts)) != len(pts):
            raise InvalidConfig("configuration points must be pairwise distinct")
        for p, l in self.directed:
            if not incident(p, l):
                raise InvalidConfig(f"{p} does not lie on its line {l}")

    def points(self) -> list[ProjPoint]:
        return list(self.simple_points) + [p for p, _ in self.directed]

    @property
    def n(self) -> int:
        return len(self.simple_points)

    @property
    def m(self) -> int:
        return len(self.directed)

    def transform(self, sigma: Transform) -> "ZeroConfig":
        return ZeroConfig(
            tuple(sigma.apply_point(s) for s in self.simple_points),
            tuple((sigma.apply_point(p), sigma.apply_line(l)) for p, l in self.directed),
        )

    def same_as(self, other: "ZeroConfig") -> bool:
        return set(self.simple_points) == set(other.simple_points) and set(self.directed) == set(other.directed)

    def to_json(self) -> dict:
        return {
            "points": [vec_to_json(p.coords) for p in self.simple_points],
            "directed": [{"p": vec_to_json(p.coords), "l": vec_to_json(l.coeffs)} for p, l in self.directed],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZeroConfig":
        def vec(v):
            return tuple(parse_rational(c) for c in v)

        unknown = set(data) - {"points", "directed"}
        if unknown:
            raise InvalidConfig(f"unknown keys in configuration: {sorted(unknown)}")
        return cls(
            tuple(ProjPoint(vec(p)) for p in data.get("points", [])),
            tuple((ProjPoint(vec(d["p"])), ProjLine(vec(d["l"]))) for d in data.get("directed", [])),
        )

    def __str__(self) -> str:
        parts = [str(s) for s in self.simple_points] + [f"({p}, {l})" for p, l in self.directed]
        return "{" + ", ".join(parts) + "}"


# ---------------------------------------------------------------------------
# J_S and I_S


def _solution_space(degree: int, rows: list[list[Fraction]]) -> LinSubspace:
    n = len(monomials(degree))
    if not rows:
        return LinSubspace.full(degree)
    ker = nullspace(rows, n)
    return LinSubspace.from_vectors(degree, ker) if ker else LinSubspace.zero(degree)


def _monomial_forms(degree: int) -> list[TernaryForm]:
    return [TernaryForm.monomial(m) for m in monomials(degree)]


def j_of_config(S: ZeroConfig) -> LinSubspace:
    mons = _monomial_forms(2)
    rows = []
    for s in S.simple_points:
        rows.append([m(s.coords) for m in mons])
    for p, l in S.directed:
        a = ChartFrame(p, l).along
        rows.append([m(p.coords) for m in mons])
        rows.append([sum(g * v for g, v in zip(gradient(m, p), a)) for m in mons])
    return _solution_space(2, rows)


def i_of_config(S: ZeroConfig) -> LinSubspace:
    """Quartics with ord >= 2 at every point and, at a directed point (p, l),
    a chart polynomial vanishing to order >= 2 at the direction of l.

    In frame coordinates the latter means the X^2, XY and X^3 coefficients
    vanish (with the gradient conditions already imposed).
    """
    mons = _monomial_forms(4)
    rows = []
    for s in S.points():
        for v in range(3):
            rows.append([m.derivative(v)(s.coords) for m in mons])
    for p, l in S.directed:
        fr = ChartFrame(p, l)
        locs = [fr.local(m) for m in mons]
        for e in ((2, 2, 0), (2, 1, 1), (1, 3, 0)):
            rows.append([loc.coeff(e) for loc in locs])
    return _solution_space(4, rows)


def square_span(J: LinSubspace) -> LinSubspace:
    d = 2 * J.degree
    prods = [J.basis[i] * J.basis[j] for i in range(J.dim) for j in range(i, J.dim)]
    return LinSubspace.span(prods, d) if prods else LinSubspace.zero(d)


# ---------------------------------------------------------------------------
# G_J(p) and E_J(p)


@dataclass(frozen=True)
class GradientSpan:
    """Span of the gradients at a point of the members of a space of forms."""

    vectors: tuple[tuple[Fraction, ...], ...]

    @property
    def linear_dim(self) -> int:
        return len(self.vectors)

    @property
    def projective_dim(self) -> int:
        """Dimension as a projective subspace; -1 means empty."""
        return len(self.vectors) - 1

    def is_empty(self) -> bool:
        return not self.vectors


def g_set(J: LinSubspace, p: ProjPoint) -> GradientSpan:
    rows = [list(gradient(q, p)) for q in J.basis]
    red, _ = rref(rows) if rows else ([], [])
    return GradientSpan(tuple(tuple(r) for r in red))


def e_set(J: LinSubspace, p: ProjPoint) -> LinSubspace:
    """Members of J singular at p."""
    if not J.basis:
        return LinSubspace.zero(J.degree)
    grads = [gradient(q, p) for q in J.basis]
    vals = [q(p.coords) for q in J.basis]
    rows = [[g[i] for g in grads] for i in range(3)] + [vals]
    ker = nullspace(rows, J.dim)
    out = []
    for k in ker:
        f = TernaryForm.zero(J.degree)
        for c, b in zip(k, J.basis):
            f = f + b.scale(c)
        out.append(f)
    return LinSubspace.span(out, J.degree) if out else LinSubspace.zero(J.degree)


# ---------------------------------------------------------------------------
# real zero sets of spaces of conics


@dataclass(frozen=True)
class ZeroSet:
    """Real projective zero set of a set of conics.

    kind: ``finite`` (points exact; ``n_irrational`` counts certified
    irrational zeros), ``infinite`` (``contains_line`` tells whether a real
    line lies inside), ``plane`` (no nonzero generators) or ``uncertified``
    (irrational candidates that the exact machinery could not settle).
    """

    kind: str
    points: tuple[ProjPoint, ...] = ()
    n_irrational: int = 0
    contains_line: bool | None = None
    note: str = ""

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def count(self) -> int | None:
        return len(self.points) + self.n_irrational if self.is_finite else None


def _restrict_to_fiber(q: TernaryForm, base: Sequence[Fraction]) -> list[Fraction]:
    """q(base + t e3) as a polynomial in t."""
    out = [Fraction(0)] * (q.degree + 1)
    for (a, b, c), coef in q.items():
        out[c] += coef * base[0] ** a * base[1] ** b
    return upoly.strip(out)


def _z_coeffs(q: TernaryForm) -> list[TernaryForm]:
    """Coefficients of z^0, z^1, z^2 of a conic, as binary forms in x, y."""
    out = [TernaryForm.zero(2 - k) for k in range(3)]
    for (a, b, c), coef in q.items():
        out[c] = out[c] + TernaryForm(a + b, {(a, b, 0): coef})
    return out


def resultant_z(g: TernaryForm, h: TernaryForm) -> TernaryForm:
    """Sylvester resultant in z of two conics (a binary quartic in x, y)."""
    a0, a1, a2 = _z_coeffs(g)
    b0, b1, b2 = _z_coeffs(h)
    t1 = a2 * b0 - a0 * b2
    return t1 * t1 - (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1)


def _binary_gcd(forms: Iterable[TernaryForm]) -> tuple[list[Fraction], bool] | None:
    """gcd of binary forms in x, y: (gcd of the dehomogenised polys at y=1,
    whether (1:0) is a common root). None if all forms vanish identically."""
    polys, inf_common, seen = [], True, False
    for f in forms:
        if f.is_zero():
            continue
        seen = True
        d = f.degree
        p = upoly.strip([f.coeff((i, d - i, 0)) for i in range(d + 1)])
        polys.append(p)
        if f.coeff((d, 0, 0)) != 0:
            inf_common = False
    if not seen:
        return None
    return upoly.gcd_many(polys), inf_common


def _conic_zero_set(q: TernaryForm) -> ZeroSet:
    M = quadratic_matrix(q)
    pos, neg, _ = signature(M)
    r = pos + neg
    if r == 3:
        if pos == 3 or neg == 3:
            return ZeroSet("finite")
        return ZeroSet("infinite", contains_line=False, note="nondegenerate indefinite conic")
    if r == 2:
        if pos == 2 or neg == 2:
            ker = nullspace(M, 3)
            return ZeroSet("finite", (ProjPoint(ker[0]),))
        return ZeroSet("infinite", contains_line=True, note="pair of real lines")
    return ZeroSet("infinite", contains_line=True, note="double line")


def real_zero_set(forms: Iterable[TernaryForm], seed: int = 0, attempts: int = 8) -> ZeroSet:
    """Common real zeros of conics.

    A random rational change of coordinates puts the projection center e3
    off both of two generic combinations g1, g2. Real common zeros project
    to real roots of gcd_i Res_z(g1, q_i); above each rational root the fiber
    is solved exactly. Irrational roots of that gcd cannot be settled here and
    yield kind ``uncertified``.
    """
    J = LinSubspace.span([f for f in forms if f], 2) if any(forms := list(forms)) else LinSubspace.zero(2)
    if J.dim == 0:
        return ZeroSet("plane", contains_line=True)
    if J.dim == 1:
        return _conic_zero_set(J.basis[0])
    rng = random.Random(seed)
    zero_resultants = 0
    for _ in range(attempts):
        while True:
            m = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
            try:
                sigma = Transform(m)
                break
            except ValueError:
                continue
        qs = [act(sigma, q) for q in J.basis]
        combos = []
        for _ in range(2):
            c = [rng.randint(1, 7) * rng.choice((1, -1)) for _ in qs]
            g = TernaryForm.zero(2)
            for ci, qi in zip(c, qs):
                g = g + qi.scale(ci)
            combos.append(g)
        g1, g2 = combos
        if not g1 or not g2 or g1((0, 0, 1)) == 0 or g2((0, 0, 1)) == 0:
            continue
        R = resultant_z(g1, g2)
        if R.is_zero():
            zero_resultants += 1
            if zero_resultants >= 3:
                return ZeroSet("infinite", contains_line=True, note="common linear factor")
            continue
        res = _binary_gcd([R] + [resultant_z(g1, q) for q in qs])
        assert res is not None
        G, inf_root = res
        bases: list[tuple[Fraction, Fraction]] = []
        if len(G) > 1:
            for r in upoly.isolate_real_roots(G):
                if not r.exact:
                    return ZeroSet("uncertified", note="irrational root of the eliminant")
                bases.append((r.value, Fraction(1)))
        if inf_root:
            bases.append((Fraction(1), Fraction(0)))
        sigma_inv = sigma.inverse()
        pts: list[ProjPoint] = []
        n_irr = 0
        for b in bases:
            fib = upoly.gcd_many([_restrict_to_fiber(q, b) for q in qs if _restrict_to_fiber(q, b)])
            if len(fib) <= 1:
                continue
            for r in upoly.isolate_real_roots(fib):
                if r.exact:
                    pts.append(sigma_inv.apply_point(ProjPoint(b[0], b[1], r.value)))
                else:
                    n_irr += 1
        return ZeroSet("finite", tuple(sorted(set(pts), key=lambda p: p.coords)), n_irr)
    return ZeroSet("uncertified", note="no generic projection found")


def verify_zero_set(J: LinSubspace, expected: Iterable[ProjPoint]) -> bool:
    """True iff the real zero set of J is exactly ``expected``."""
    if J.dim == 0:
        raise ZeroSetIsPlane("the zero space vanishes on all of P^2")
    Z = real_zero_set(J.basis)
    return Z.is_finite and Z.n_irrational == 0 and set(Z.points) == set(expected)


def zeros_on_line(forms: Sequence[TernaryForm], p: ProjPoint, l: ProjLine) -> ZeroSet:
    """Common real zeros of ``forms`` on the line l (p on l)."""
    a = ChartFrame(p, l).along
    polys = []
    all_vanish_at_a = True
    for f in forms:
        # f(u p + a) as a polynomial in u; u = infinity is p itself
        coeffs = [Fraction(0)] * (f.degree + 1)
        loc = f.substitute([[p.coords[i], a[i], 0] for i in range(3)])
        for (i, j, _), c in loc.items():
            coeffs[i] += c
        poly = upoly.strip(coeffs)
        if poly:
            polys.append(poly)
        if f(p.coords) != 0:
            all_vanish_at_a = False
    if not polys:
        return ZeroSet("infinite", contains_line=True, note="line contained in the zero set")
    g = upoly.gcd_many(polys)
    pts = []
    n_irr = 0
    for r in upoly.isolate_real_roots(g) if len(g) > 1 else []:
        if r.exact:
            pts.append(ProjPoint(tuple(r.value * pc + ac for pc, ac in zip(p.coords, a))))
        else:
            n_irr += 1
    if all_vanish_at_a:
        pts.append(p)
    return ZeroSet("finite", tuple(pts), n_irr)


# ---------------------------------------------------------------------------
# fullness


@dataclass
class Condition:
    name: str
    point: ProjPoint | None
    ok: bool
    detail: str = ""


@dataclass
class FullnessReport:
    config: ZeroConfig
    J: LinSubspace
    conditions: list[Condition] = field(default_factory=list)
    inner_form: TernaryForm | None = None
    blowup_checks: list[Condition] = field(default_factory=list)
    dim_I: int = 0
    dim_square_span: int = 0
    span_equals_I: bool = False

    @property
    def full(self) -> bool:
        return all(c.ok for c in self.conditions)

    def failures(self) -> list[Condition]:
        return [c for c in self.conditions if not c.ok]


def fullness_check(S: ZeroConfig, J: LinSubspace | None = None) -> FullnessReport:
    JS = j_of_config(S)
    J = JS if J is None else J
    if not J.issubspace(JS):
        raise ValueError("J must be contained in J_S")
    rep = FullnessReport(S, J)
    I = i_of_config(S)
    sq = square_span(JS)
    rep.dim_I, rep.dim_square_span = I.dim, sq.dim
    rep.span_equals_I = sq == I

    if J.dim == 0:
        rep.conditions.append(Condition("(i) zero set", None, False, "J = 0 vanishes everywhere"))
        return rep
    Z = real_zero_set(J.basis)
    ok = Z.is_finite and Z.n_irrational == 0 and set(Z.points) == set(S.points())
    detail = f"Z(J) = {[str(p) for p in Z.points]}" if Z.is_finite else f"Z(J) is {Z.kind} ({Z.note})"
    rep.conditions.append(Condition("(i) zero set", None, ok, detail))
    for s in S.simple_points:
        G = g_set(J, s)
        rep.conditions.append(Condition("(ii) gradients span a line", s, G.projective_dim == 1, f"projective dim {G.projective_dim}"))
    for p, l in S.directed:
        G = g_set(J, p)
        rep.conditions.append(Condition("(iii) some gradient nonzero", p, not G.is_empty(), f"projective dim {G.projective_dim}"))
        E = e_set(J, p)
        if E.dim == 0:
            rep.conditions.append(Condition("(iv) singular members meet l only at p", p, False, "E_J(p) = 0"))
        else:
            ZL = zeros_on_line(E.basis, p, l)
            good = ZL.is_finite and ZL.n_irrational == 0 and set(ZL.points) == {p}
            rep.conditions.append(Condition("(iv) singular members meet l only at p", p, good, f"Z(E) on l: {ZL.kind} {[str(x) for x in ZL.points]}"))
    if rep.full:
        f = sum_of_squares(J.basis)
        rep.inner_form = f
        for s in S.simple_points:
            rep.blowup_checks.append(Condition("inp empty", s, inp(f, s).is_empty()))
        for p, l in S.directed:
            rep.blowup_checks.append(Condition("ord = 2", p, ord_at(f, p) == 2))
            d2 = d2_at_zero(f, ChartFrame(p, l))
            rep.blowup_checks.append(Condition("D''(0) != 0", p, d2 != 0, f"D''(0) = {d2}"))
    return rep


def random_transform(rng: random.Random, bound: int = 3) -> Transform:
    while True:
        m = [[rng.randint(-bound, bound) for _ in range(3)] for _ in range(3)]
        try:
            return Transform(m)
        except ValueError:
            continue


def general_position(points: Sequence[ProjPoint]) -> bool:
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                if collinear(pts[i], pts[j], pts[k]):
                    return False
    return True


def rank_of(forms: Sequence[TernaryForm]) -> int:
    return rank([f.to_vector() for f in forms]) if forms else 0
