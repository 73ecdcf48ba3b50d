"""Blow-up chart data at a singular point of a quartic.

Coordinates: for a chart frame (p, l) we pick a second point ``a`` on ``l``
and a point ``b`` off ``l`` and write ``f(p + X a + Y b) = f2 + f3 + f4`` with
``f_k`` homogeneous of degree k in (X, Y). The line ``l`` is ``Y = 0``, and the
affine chart ``(x, y) -> (X, Y) = (x, x y)`` of the blow-up gives

    delta_f(x, y) = f(x, x y) / x^2 = f2(1, y) + x f3(1, y) + x^2 f4(1, y).

The exceptional line is ``x = 0`` and the direction of ``l`` is ``y = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import upoly
from .forms import (
    E_VECS,
    ProjLine,
    ProjPoint,
    TernaryForm,
    Vec3,
    _translate,
    cross,
    dot,
    incident,
    join,
    ord_at,
)


class OrderTooLow(ValueError):
    """The form does not vanish to order 2 at the chart center."""


class BivariatePoly:
    """Sparse polynomial in two variables (x, y) over Q."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, int], Fraction] = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[e] = self.terms.get(e, Fraction(0)) + c
                if not self.terms[e]:
                    del self.terms[e]

    def __call__(self, x, y) -> Fraction:
        return sum((c * Fraction(x) ** i * Fraction(y) ** j for (i, j), c in self.terms.items()), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePoly) and self.terms == other.terms

    def __mul__(self, other: "BivariatePoly") -> "BivariatePoly":
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (i, j), d in other.terms.items():
                out[(a + i, b + j)] = out.get((a + i, b + j), Fraction(0)) + c * d
        return BivariatePoly(out)

    def restrict_x0(self) -> list[Fraction]:
        """The univariate polynomial delta(0, y)."""
        return upoly.strip([self.terms.get((0, j), Fraction(0)) for j in range(self.degree_in(1) + 1)])

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=0)

    def order_at_origin(self) -> int | None:
        return min((i + j for i, j in self.terms), default=None)

    def univariate(self) -> list[Fraction]:
        """Coefficients in y for a polynomial free of x."""
        if any(i for i, _ in self.terms):
            raise ValueError("polynomial depends on x")
        return self.restrict_x0()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
            mono = "*".join(s for s in (f"x^{i}" if i > 1 else "x" if i else "", f"y^{j}" if j > 1 else "y" if j else "") if s)
            a = abs(c)
            coef = "" if a == 1 and mono else (str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}")
            body = f"{coef}*{mono}" if coef and mono else coef or mono
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"BivariatePoly({self})"


def univariate_str(p, var: str = "y") -> str:
    return str(BivariatePoly({(0, j): c for j, c in enumerate(p)})).replace("y", var)


@dataclass(frozen=True)
class ChartFrame:
    """Affine frame at ``center`` in which ``direction_line`` is ``Y = 0``."""

    center: ProjPoint
    direction_line: ProjLine
    along: Vec3 = field(init=False)
    completion: Vec3 = field(init=False)

    def __post_init__(self):
        if not incident(self.center, self.direction_line):
            raise ValueError(f"{self.center} does not lie on {self.direction_line}")
        p = self.center.coords
        along = None
        for v in self.direction_line.points():
            if any(cross(v, p)):
                along = v
                break
        completion = next(e for e in E_VECS if dot(e, self.direction_line.coeffs))
        object.__setattr__(self, "along", along)
        object.__setattr__(self, "completion", completion)

    @classmethod
    def default(cls, p: ProjPoint) -> "ChartFrame":
        """A frame at ``p`` whose line joins ``p`` to the first standard point
        different from it."""
        for e in E_VECS:
            q = ProjPoint(e)
            if q != p:
                return cls(p, join(p, q))
        raise AssertionError

    def columns(self) -> tuple[Vec3, Vec3, Vec3]:
        return (self.center.coords, self.along, self.completion)

    def local(self, f: TernaryForm) -> TernaryForm:
        """``f(w p + X a + Y b)`` as a form in (w, X, Y) stored in the (x, y, z) slots."""
        return _translate(f, self.columns())

    def components(self, f: TernaryForm) -> dict[int, dict[tuple[int, int], Fraction]]:
        """Homogeneous pieces ``f_k`` keyed by k, each as {(i, j): coef of X^i Y^j}."""
        out: dict[int, dict] = {}
        for (w, i, j), c in self.local(f).items():
            out.setdefault(i + j, {})[(i, j)] = c
        return out

    def direction_point(self, slope) -> Vec3:
        """The point ``a + slope * b``: the exceptional direction with chart coordinate ``slope``."""
        s = Fraction(slope)
        return tuple(a + s * b for a, b in zip(self.along, self.completion))  # type: ignore[return-value]

    def line_for_slope(self, slope) -> ProjLine:
        return join(self.center, ProjPoint(self.direction_point(slope)))

    def line_at_infinity(self) -> ProjLine:
        return join(self.center, ProjPoint(self.completion))


def _require_order2(f: TernaryForm, p: ProjPoint) -> None:
    if f.is_zero():
        return
    if ord_at(f, p) < 2:
        raise OrderTooLow(f"ord_p(f) < 2 at {p}; the chart polynomial is not defined")


def delta(f: TernaryForm, frame: ChartFrame) -> BivariatePoly:
    _require_order2(f, frame.center)
    out: dict = {}
    for k, comp in frame.components(f).items():
        for (i, j), c in comp.items():
            out[(k - 2, j)] = out.get((k - 2, j), Fraction(0)) + c
    return BivariatePoly(out)


def component_at_one(f: TernaryForm, frame: ChartFrame, k: int) -> list[Fraction]:
    """``f_k(1, y)`` as a coefficient list in y."""
    comp = frame.components(f).get(k, {})
    return upoly.strip([comp.get((k - j, j), Fraction(0)) for j in range(k + 1)])


def discriminant_D(f: TernaryForm, frame: ChartFrame) -> list[Fraction]:
    """``(f3^2 - 4 f2 f4)(1, y)``, the x-discriminant of delta_f."""
    _require_order2(f, frame.center)
    f2, f3, f4 = (component_at_one(f, frame, k) for k in (2, 3, 4))
    return upoly.sub(upoly.mul(f3, f3), upoly.mul([Fraction(4)], upoly.mul(f2, f4)))


def d2_at_zero(f: TernaryForm, frame: ChartFrame) -> Fraction:
    D = discriminant_D(f, frame)
    return 2 * (D[2] if len(D) > 2 else Fraction(0))


@dataclass(frozen=True)
class InpSet:
    """Real first-order infinitely near points of ``f`` at ``center``.

    ``all_of_p1`` marks the case where the whole exceptional line belongs to
    the curve. Otherwise rational directions are given as lines through the
    center and irrational ones as isolating slope intervals in ``frame``.
    """

    center: ProjPoint
    all_of_p1: bool
    lines: tuple[ProjLine, ...] = ()
    irrational: tuple[upoly.RealRoot, ...] = ()
    frame: ChartFrame | None = None

    def is_empty(self) -> bool:
        return not self.all_of_p1 and not self.lines and not self.irrational

    def __len__(self) -> int:
        if self.all_of_p1:
            raise TypeError("the whole exceptional line is infinite")
        return len(self.lines) + len(self.irrational)

    def __contains__(self, line: ProjLine) -> bool:
        if not incident(self.center, line):
            return False
        return self.all_of_p1 or line in self.lines

    def describe(self) -> str:
        if self.all_of_p1:
            return "all of P^1"
        if self.is_empty():
            return "empty"
        parts = [str(l) for l in self.lines]
        parts += [f"slope in ({r.lo}, {r.hi})" for r in self.irrational]
        return ", ".join(parts)


def inp(f: TernaryForm, p: ProjPoint, frame: ChartFrame | None = None) -> InpSet:
    _require_order2(f, p)
    frame = frame or ChartFrame.default(p)
    if f.is_zero() or ord_at(f, p) > 2:
        return InpSet(p, True, frame=frame)
    f2 = component_at_one(f, frame, 2)
    lines: list[ProjLine] = []
    irr: list[upoly.RealRoot] = []
    # f2(1, y) = alpha + beta y + gamma y^2; gamma = 0 puts a root at infinity
    if len(f2) < 3:
        lines.append(frame.line_at_infinity())
    if len(f2) > 1:
        for r in upoly.isolate_real_roots(f2):
            if r.exact:
                lines.append(frame.line_for_slope(r.value))
            else:
                irr.append(r)
    return InpSet(p, False, tuple(dict.fromkeys(lines)), tuple(irr), frame)


# D''(0) = MINOR_CONSTANT * sum of squared 2x2 minors; fixed by expanding
# q1 = Y, q2 = X^2 in frame coordinates, where D(y) = -4 y^2
MINOR_CONSTANT = Fraction(-8)


def minor_data(q: TernaryForm, frame: ChartFrame) -> tuple[Fraction, Fraction]:
    """(b, c) for a quadric q = b Y + c X^2 + (terms in XY, Y^2) in frame coordinates."""
    loc = frame.local(q)
    if loc.coeff((2, 0, 0)) or loc.coeff((1, 1, 0)):
        raise ValueError("q must vanish at the center with its gradient orthogonal to the line")
    return loc.coeff((1, 0, 1)), loc.coeff((0, 2, 0))


def minor_sum(squares, frame: ChartFrame) -> Fraction:
    """Sum over i < j of (c_i b_j - b_i c_j)^2."""
    data = [minor_data(q, frame) for q in squares]
    total = Fraction(0)
    for i in range(len(data)):
        for j in range(i + 1, len(data)):
            bi, ci = data[i]
            bj, cj = data[j]
            total += (ci * bj - bi * cj) ** 2
    return total
