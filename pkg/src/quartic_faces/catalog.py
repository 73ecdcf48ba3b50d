"""The twenty equivalence classes of faces, and classification of zero
configurations and of sums of squares into them.

Face types: A (the zero set contains a real line), B (faces F_S cut out by a
zero configuration) and C (the remaining faces, lying strictly inside some
F_S).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .blowup import ChartFrame, d2_at_zero, inp
from .certify import ExposednessFunctional, max_gram_rank
from .forms import (
    ProjLine,
    ProjPoint,
    TernaryForm,
    Transform,
    act,
    collinear,
    cross,
    divide_exact,
    e1,
    e2,
    e3,
    e4,
    form,
    frame_transform,
    incident,
    join,
    meet,
    ord_at,
    sum_of_squares,
)
from .linalg import LinSubspace, nullspace, orthogonal_basis, quadratic_matrix, rank, signature
from .spaces import ZeroConfig, j_of_config, real_zero_set


class Unclassifiable(ValueError):
    """The input does not reduce to a catalog representative."""


@dataclass(frozen=True)
class TypeAFace:
    """A face l^2 * (psd quadrics vanishing on U): ``kind`` describes U."""

    line: ProjLine
    kind: str  # empty | point-off | point-on | second-line | same-line | plane
    point: ProjPoint | None = None
    second: ProjLine | None = None

    def describe(self) -> str:
        extra = f" {self.point}" if self.point else f" {self.second}" if self.second else ""
        return f"line {self.line}, U = {self.kind}{extra}"


@dataclass(frozen=True)
class FaceClass:
    id: str
    face_type: str
    j_basis: LinSubspace
    inner_form: TernaryForm
    exposed: bool
    zero_data: object
    functional: ExposednessFunctional | None = None
    note: str = ""

    @property
    def dim_J(self) -> int:
        return self.j_basis.dim

    @property
    def dim_F(self) -> int:
        from .spaces import square_span

        return square_span(self.j_basis).dim

    @property
    def config(self) -> ZeroConfig | None:
        z = self.zero_data
        if isinstance(z, ZeroConfig):
            return z
        if isinstance(z, tuple) and z and isinstance(z[0], ZeroConfig):
            return z[0]
        return None

    def describe_zeros(self) -> str:
        z = self.zero_data
        if isinstance(z, ZeroConfig):
            return str(z)
        if isinstance(z, TypeAFace):
            return z.describe()
        if isinstance(z, tuple):
            return f"{z[0]} ({z[1]})"
        return str(z)


def _span(*texts: str) -> LinSubspace:
    if not texts:
        return LinSubspace.zero(2)
    return LinSubspace.span([form(t, 2) for t in texts], 2)


def _pts(*coords) -> tuple[ProjPoint, ...]:
    return tuple(ProjPoint(c) for c in coords)


VAR_X = ProjLine(1, 0, 0)
VAR_Y = ProjLine(0, 1, 0)
VAR_Z = ProjLine(0, 0, 1)
VAR_Y_MINUS_Z = ProjLine(0, 1, -1)

CANONICAL_CONFIGS: dict[str, ZeroConfig] = {
    "Fempty": ZeroConfig(),
    "S1": ZeroConfig((e1,)),
    "S2": ZeroConfig((e1, e2)),
    "S3": ZeroConfig((e1, e2, e3)),
    "S4": ZeroConfig((e1, e2, e3, e4)),
    "T1": ZeroConfig((), ((e1, VAR_Y),)),
    "T2": ZeroConfig((e2,), ((e1, VAR_Y),)),
    "T3": ZeroConfig((), ((e1, VAR_Y), (e2, VAR_X))),
    "T4": ZeroConfig((e2, e3), ((e1, VAR_Y_MINUS_Z),)),
    "Q": ZeroConfig(_pts((1, 1, 0), (0, 1, 1), (3, 5, 4), (4, 5, 3), (5, 13, 12))),
}

_LINE_POINTS = _pts((1, 0, 0), (0, 1, 0), (1, 1, 0))
_SIX_GENERAL = _pts((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, -1, 2))

IDS = (
    "L0", "L1", "L2", "L3", "L4", "F0",
    "Fempty", "S1", "S2", "S3", "S4", "T1", "T2", "T3", "T4", "Q",
    "D", "T1*", "T1**", "T2*",
)


def _entry(id_, ftype, J, exposed, zero_data, points=None, inner=None, note=""):
    inner = inner if inner is not None else (sum_of_squares(J.basis) if J.dim else TernaryForm.zero(4))
    fun = ExposednessFunctional.uniform(points) if points is not None else None
    return FaceClass(id_, ftype, J, inner, exposed, zero_data, fun, note)


@lru_cache(maxsize=1)
def catalog() -> tuple[FaceClass, ...]:
    cc = CANONICAL_CONFIGS
    na = "no point functional has this kernel; see the product witness"
    out = [
        _entry("L0", "A", _span("x*z", "y*z", "z^2"), True, TypeAFace(VAR_Z, "empty"), _LINE_POINTS),
        _entry("L1", "A", _span("x*z", "y*z"), True, TypeAFace(VAR_Z, "point-off", point=e3), _LINE_POINTS + (e3,)),
        _entry("L2", "A", _span("y*z", "z^2"), False, TypeAFace(VAR_Z, "point-on", point=e1), _LINE_POINTS, note=na),
        _entry("L3", "A", _span("x*z"), True, TypeAFace(VAR_Z, "second-line", second=VAR_X), _LINE_POINTS + _pts((0, 0, 1), (0, 1, 1))),
        _entry("L4", "A", _span("z^2"), False, TypeAFace(VAR_Z, "same-line"), _LINE_POINTS, note=na),
        _entry("F0", "A", _span(), True, TypeAFace(VAR_Z, "plane"), _SIX_GENERAL),
        _entry("Fempty", "B", LinSubspace.full(2), True, cc["Fempty"], ()),
    ]
    for k in ("S1", "S2", "S3", "S4"):
        out.append(_entry(k, "B", j_of_config(cc[k]), True, cc[k], cc[k].simple_points))
    for k in ("T1", "T2", "T3", "T4"):
        out.append(_entry(k, "B", j_of_config(cc[k]), False, cc[k]))
    out.append(_entry("Q", "B", _span("x^2 - y^2 + z^2"), True, cc["Q"], cc["Q"].simple_points))
    out += [
        _entry("D", "C", _span("y^2", "y*z", "z^2"), False, "order-4 zero at (1:0:0); span is all quartics in y, z"),
        _entry("T1*", "C", _span("x*y + z^2", "y*z", "y^2"), False, (cc["T1"], "D''(0) = 0, Gram rank 3")),
        _entry("T1**", "C", _span("x*y + z^2", "y^2"), False, (cc["T1"], "D''(0) = 0, Gram rank 2")),
        _entry("T2*", "C", _span("x*y + z^2", "y*z"), False, (cc["T2"], "D''(0) = 0 at the directed zero")),
    ]
    return tuple(out)


def get_class(id_: str) -> FaceClass:
    aliases = {"F_empty": "Fempty", "F∅": "Fempty", "empty": "Fempty", "0": "F0", "T3*": "T2*"}
    key = aliases.get(id_, id_)
    for c in catalog():
        if c.id == key:
            return c
    raise KeyError(f"unknown face class {id_!r}; expected one of {', '.join(IDS)}")


# ---------------------------------------------------------------------------
# helpers


def from_columns(cols: Sequence[Sequence]) -> Transform:
    """The transform sending e1, e2, e3 to the given vectors."""
    return Transform([[cols[j][i] for j in range(3)] for i in range(3)])


def _to_canonical(cols: Sequence[Sequence]) -> Transform:
    """sigma with sigma(cols[i]) = e_i."""
    return from_columns(cols).inverse()


def _point_off(l: ProjLine, avoid: Sequence[ProjPoint] = ()) -> tuple:
    for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)):
        p = ProjPoint(v)
        if not incident(p, l) and p not in avoid:
            return p.coords
    raise AssertionError


def _other_point_on(l: ProjLine, p: ProjPoint) -> tuple:
    for v in l.points():
        if any(cross(v, p.coords)):
            return v
    raise AssertionError


def _common_line(J: LinSubspace) -> ProjLine | None:
    """Linear form dividing every member of J (dim J >= 2), as a line."""
    cols = None
    for q in J.basis:
        M = quadratic_matrix(q)
        image = LinSubspace.from_vectors(1, [r for r in M if any(r)])
        cols = image if cols is None else cols.intersection(image)
    if cols is None or cols.dim != 1:
        return None
    l = cols.basis[0]
    if all(divide_exact(q, l) is not None for q in J.basis):
        return ProjLine(l.to_vector())
    return None


def _conic_lines(q: TernaryForm) -> tuple[ProjLine, ProjLine] | None:
    """The two lines of a rank-2 indefinite conic when they are rational."""
    from . import upoly

    u = ProjPoint(nullspace(quadratic_matrix(q), 3)[0])
    l = next(ProjLine(c) for c in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)) if not incident(u, ProjLine(c)))
    a, b = l.points()
    # q(s a + t b) = alpha s^2 + beta s t + gamma t^2
    alpha, gamma = q(a), q(b)
    beta = q(tuple(x + y for x, y in zip(a, b))) - alpha - gamma
    roots = [(r, Fraction(1)) for r in upoly.rational_roots([gamma, beta, alpha])]
    if alpha == 0:
        roots.append((Fraction(1), Fraction(0)))
    if len(roots) != 2:
        return None
    pts = [tuple(s * x + t * y for x, y in zip(a, b)) for s, t in roots]
    return join(u, ProjPoint(pts[0])), join(u, ProjPoint(pts[1]))


def classify_subspace_type_a(J: LinSubspace) -> tuple[str, Transform | None, TypeAFace | None] | None:
    """Classify J = l * W. Returns (class id, sigma mapping J onto the
    canonical J, type-A data) or None when J has no common linear factor."""
    if J.dim == 0:
        return "F0", Transform.identity(), None
    if J.dim == 1:
        q = J.basis[0]
        pos, neg, _ = signature(quadratic_matrix(q))
        if pos + neg == 1:
            M = quadratic_matrix(q)
            l = ProjLine(next(r for r in M if any(r)))
            a1, a2 = l.points()
            return "L4", _to_canonical([a1, a2, _point_off(l)]), TypeAFace(l, "same-line")
        if pos + neg == 2 and pos == 1:
            lines = _conic_lines(q)
            if lines is None:
                return "L3", None, None
            l, k = lines
            r = meet(l, k)
            return "L3", _to_canonical([_other_point_on(l, r), r.coords, _other_point_on(k, r)]), TypeAFace(l, "second-line", second=k)
        return None
    l = _common_line(J)
    if l is None:
        return None
    lf = l.as_form()
    W = LinSubspace.span([divide_exact(q, lf) for q in J.basis], 1)
    a1, a2 = l.points()
    if W.dim == 3:
        return "L0", _to_canonical([a1, a2, _point_off(l)]), TypeAFace(l, "empty")
    if W.dim == 2:
        u = ProjPoint(cross(W.basis[0].to_vector(), W.basis[1].to_vector()))
        if incident(u, l):
            return "L2", _to_canonical([u.coords, _other_point_on(l, u), _point_off(l)]), TypeAFace(l, "point-on", point=u)
        return "L1", _to_canonical([a1, a2, u.coords]), TypeAFace(l, "point-off", point=u)
    k = ProjLine(W.basis[0].to_vector())
    if k == l:
        return "L4", _to_canonical([a1, a2, _point_off(l)]), TypeAFace(l, "same-line")
    r = meet(l, k)
    return "L3", _to_canonical([_other_point_on(l, r), r.coords, _other_point_on(k, r)]), TypeAFace(l, "second-line", second=k)


def _general_completion(points: Sequence[ProjPoint]) -> list[ProjPoint]:
    """Extend up to four points with no three collinear by small rational points."""
    out = list(points)
    cand = [ProjPoint(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (1, -1, 2), (2, 3, -1), (1, 3, 7))]
    for c in cand:
        if len(out) == 4:
            break
        if c in out:
            continue
        if any(collinear(out[i], out[j], c) for i in range(len(out)) for j in range(i + 1, len(out))):
            continue
        out.append(c)
    return out


def _check_general_position(S: ZeroConfig) -> None:
    pts = S.points()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                if collinear(pts[i], pts[j], pts[k]):
                    raise Unclassifiable("three collinear points without a line in the zero set")
    for p, l in S.directed:
        for q in pts:
            if q != p and incident(q, l):
                raise Unclassifiable(f"the line {l} of {p} passes through {q}")


def classify_config(S: ZeroConfig) -> tuple[FaceClass, Transform]:
    """Class of F_S and sigma with act(sigma, J_S) = J of the representative
    (for Q only up to rescaling the diagonal)."""
    J = j_of_config(S)
    a = classify_subspace_type_a(J)
    if a is not None:
        id_, sigma, _ = a
        if sigma is None:
            raise Unclassifiable("type A face whose lines are irrational")
        return get_class(id_), sigma
    n, m = S.n, S.m
    if n + 2 * m >= 5:
        if J.dim == 1:
            q = J.basis[0]
            pos, neg, _ = signature(quadratic_matrix(q))
            if pos + neg == 3 and pos and neg:
                return get_class("Q"), _diagonalizing(q)
        raise Unclassifiable(f"no catalog class for J_S = {J}")
    _check_general_position(S)
    if m == 0:
        key = f"S{n}" if n else "Fempty"
        if n == 0:
            return get_class(key), Transform.identity()
        targets = _general_completion(S.simple_points)
        return get_class(key), frame_transform(targets).inverse()
    if (n, m) == (0, 1):
        p, l = S.directed[0]
        b = _point_off(l)
        return get_class("T1"), _to_canonical([p.coords, b, _other_point_on(l, p)])
    if (n, m) == (1, 1):
        (s,), ((p, l),) = S.simple_points, S.directed
        return get_class("T2"), _to_canonical([p.coords, s.coords, _other_point_on(l, p)])
    if (n, m) == (0, 2):
        (p1, l1), (p2, l2) = S.directed
        return get_class("T3"), _to_canonical([p1.coords, p2.coords, meet(l1, l2).coords])
    if (n, m) == (2, 1):
        (s1, s2), ((p, l),) = S.simple_points, S.directed
        # l meets s1 v s2 in alpha s1 + beta s2
        r = meet(l, join(s1, s2)).coords
        alpha, beta = _coeffs_in(r, s1.coords, s2.coords)
        return get_class("T4"), _to_canonical([p.coords, [alpha * v for v in s1.coords], [beta * v for v in s2.coords]])
    raise Unclassifiable(f"configuration with n={n}, m={m} is not in the catalog")


def _coeffs_in(r, u, v) -> tuple[Fraction, Fraction]:
    """(alpha, beta) with r = alpha u + beta v."""
    from .linalg import solve

    sol = solve([[u[i], v[i]] for i in range(3)], list(r))
    assert sol is not None
    return sol[0], sol[1]


def _diagonalizing(q: TernaryForm) -> Transform:
    """sigma with act(sigma, q) = a x^2 - b y^2 + c z^2, a, b, c > 0 (or its negative)."""
    P, d = orthogonal_basis(quadratic_matrix(q))
    signs = [d[i] > 0 for i in range(3)]
    majority = sum(signs) >= 2
    maj = [i for i in range(3) if signs[i] == majority]
    mino = [i for i in range(3) if signs[i] != majority]
    order = [maj[0], mino[0], maj[1]]
    return from_columns([P[i] for i in order]).inverse()


# ---------------------------------------------------------------------------
# classification of sums of squares


@dataclass(frozen=True)
class FormClassification:
    face_type: str
    class_id: str
    config: ZeroConfig | None
    detail: str = ""


def face_type_of(f: TernaryForm, squares: Sequence[TernaryForm] | None) -> FormClassification:
    """Classify the face of which f = sum q_i^2 is an inner point.

    The squares are required: nonnegativity itself is never decided here.
    """
    if squares is None:
        raise ValueError("an SOS witness (list of quadrics) is required")
    squares = [q for q in squares if q]
    if sum_of_squares(squares) != f if squares else not f.is_zero():
        raise ValueError("the squares do not sum to the form")
    if f.is_zero():
        return FormClassification("A", "F0", None, "zero form")
    J0 = LinSubspace.span(squares, 2)
    Z = real_zero_set(J0.basis)
    if Z.kind == "uncertified":
        raise Unclassifiable(f"zero set could not be certified: {Z.note}")
    if Z.contains_line:
        return FormClassification("A", _type_a_class_of_form(f, J0), None, Z.note or "zero set contains a line")
    if Z.kind == "infinite":
        return FormClassification("B", "Q", None, "square of an indefinite irreducible conic")
    if Z.n_irrational:
        raise Unclassifiable("irrational zeros")
    if not Z.points:
        return FormClassification("B", "Fempty", ZeroConfig(), "strictly positive")
    simple, directed, degenerate = [], [], []
    for p in Z.points:
        o = ord_at(f, p)
        if o >= 4:
            if len(Z.points) != 1:
                raise Unclassifiable("order-4 zero together with other zeros")
            return FormClassification("C", "D", None, f"ord 4 at {p}")
        ip = inp(f, p)
        if ip.is_empty():
            simple.append(p)
            continue
        if ip.irrational or len(ip.lines) != 1:
            raise Unclassifiable(f"unexpected infinitely near points at {p}")
        l = ip.lines[0]
        directed.append((p, l))
        if d2_at_zero(f, ChartFrame(p, l)) == 0:
            degenerate.append(p)
    S = ZeroConfig(tuple(simple), tuple(directed))
    if not degenerate:
        cls, _ = classify_config(S)
        return FormClassification("B", cls.id, S, "all zeros satisfy the fullness test")
    if (S.n, S.m) == (1, 1):
        return FormClassification("C", "T2*", S, "second derivative of D vanishes at the directed zero")
    if (S.n, S.m) == (0, 1):
        cls, sigma = classify_config(S)
        r = max_gram_rank(act(sigma, f), cls.j_basis)
        cid = {3: "T1*", 2: "T1**"}.get(r)
        if cid is None:
            raise Unclassifiable(f"unexpected Gram rank {r} over the T1 space")
        return FormClassification("C", cid, S, f"maximal Gram rank {r} over the T1 space")
    raise Unclassifiable(f"degenerate directed zeros in a configuration of shape n={S.n}, m={S.m}")


def _type_a_class_of_form(f: TernaryForm, J0: LinSubspace) -> str:
    if J0.dim == 1:
        a = classify_subspace_type_a(J0)
        if a is None:
            raise Unclassifiable("single square without a line")
        return a[0]
    l = _common_line(J0)
    if l is None:
        raise Unclassifiable("no common linear factor found")
    lf = l.as_form()
    h = divide_exact(f, lf * lf)
    assert h is not None
    M = quadratic_matrix(h)
    r = rank(M)
    if r == 3:
        return "L0"
    if r == 2:
        u = ProjPoint(nullspace(M, 3)[0])
        return "L2" if incident(u, l) else "L1"
    k = ProjLine(next(row for row in M if any(row)))
    return "L4" if k == l else "L3"


# f - eps * g fails to be nonnegative along (1 : -t^2 : t) for every eps > 0,
# so no face strictly between F_f and the next type-B face contains g
FALSIFIER_DIRECTIONS: dict[str, str] = {
    "T1*": "z^4",
    "T1**": "y^2*z^2",
    "T2*": "z^4",
}


def falsifier_value(id_: str, eps, t) -> Fraction:
    """(f - eps g)(1, -t^2, t) for the inner form f of a starred class."""
    c = get_class(id_)
    g = form(FALSIFIER_DIRECTIONS[c.id], 4)
    t = Fraction(t)
    h = c.inner_form - g.scale(Fraction(eps))
    return h(1, -t * t, t)


def falsify(id_: str, eps, ts, seed: int = 0) -> tuple[Fraction, Fraction] | None:
    """First t (in an order shuffled by ``seed``) with a negative curve value."""
    order = list(ts)
    random.Random(seed).shuffle(order)
    for t in order:
        v = falsifier_value(id_, eps, t)
        if v < 0:
            return Fraction(t), v
    return None
