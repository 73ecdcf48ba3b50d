"""Text and JSON formats for forms, points, lines and zero configurations.

Text grammar: terms joined by ``+``/``-``, a term being ``[coef][*]x^a[*]y^b[*]z^c``
with ``coef`` an integer or ``p/q``. Whitespace is ignored; exponent 1 and
coefficient 1 may be omitted. Printing is canonical, so ``parse(format(f)) == f``
and ``format(parse(s)) == s`` for canonically printed ``s``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .forms import VARS, ProjLine, ProjPoint, TernaryForm, monomials


class ParseError(ValueError):
    """Raised for malformed input; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset
        self.text = text


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exp, compact: bool = False) -> str:
    parts = []
    for v, k in zip(VARS, exp):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return ("" if compact else "*").join(parts)


def format_form(f: TernaryForm, compact: bool = False) -> str:
    """Canonical text; ``compact`` drops the optional '*' (``3/2xy - yz``)."""
    if f.is_zero():
        return "0"
    out = []
    for m in monomials(f.degree):
        c = f.coeff(m)
        if not c:
            continue
        mono = format_monomial(m, compact)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _fmt_coef(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coef(a)}{'' if compact else '*'}{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xyz])|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    data = text.encode()
    toks = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", len(text[:pos].encode()), text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), len(text[:start].encode())))
        pos = m.end()
    toks.append(("end", "", len(data)))
    return toks


def parse_form(text: str, degree: int | None = None) -> TernaryForm:
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        t = toks[i]
        i += 1
        return t

    terms: list[tuple[Fraction, tuple[int, int, int], int]] = []
    sign = 1
    first = True
    while True:
        kind, val, off = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-'", off, text)
        kind, val, off = peek()
        if kind == "end":
            raise ParseError("unexpected end of input", off, text)
        term_off = off
        coef = Fraction(1)
        exp = [0, 0, 0]
        saw_factor = False
        if kind == "num":
            take()
            coef = Fraction(int(val))
            if peek()[0] == "op" and peek()[1] == "/":
                take()
                k2, v2, o2 = take()
                if k2 != "num":
                    raise ParseError("expected denominator", o2, text)
                if int(v2) == 0:
                    raise ParseError("zero denominator", o2, text)
                coef /= int(v2)
            saw_factor = True
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                if peek()[0] != "var":
                    raise ParseError("expected variable after '*'", peek()[2], text)
        while peek()[0] == "var":
            _, v, _ = take()
            k = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                k2, v2, o2 = take()
                if k2 != "num":
                    raise ParseError("expected exponent", o2, text)
                k = int(v2)
            exp[VARS.index(v)] += k
            saw_factor = True
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                if peek()[0] != "var":
                    raise ParseError("expected variable after '*'", peek()[2], text)
        if not saw_factor:
            raise ParseError(f"unexpected token {val!r}", off, text)
        terms.append((sign * coef, tuple(exp), term_off))
        first = False
        if peek()[0] == "end":
            break
    if degree is None:
        nonzero = [sum(e) for c, e, _ in terms if c]
        degree = nonzero[0] if nonzero else max(sum(e) for _, e, _ in terms)
    for c, e, off in terms:
        if c and sum(e) != degree:
            raise ParseError(f"term of degree {sum(e)} in a form of degree {degree}", off, text)
    acc: dict = {}
    for c, e, _ in terms:
        if c:
            acc[e] = acc.get(e, Fraction(0)) + c
    return TernaryForm(degree, acc)


def form_to_json(f: TernaryForm) -> dict:
    return {
        "degree": f.degree,
        "terms": [{"exp": list(m), "coef": _fmt_coef(f.coeff(m))} for m in monomials(f.degree) if f.coeff(m)],
    }


def form_from_json(data) -> TernaryForm:
    if isinstance(data, str):
        return parse_form(data)
    return TernaryForm(int(data["degree"]), {tuple(t["exp"]): Fraction(str(t["coef"])) for t in data["terms"]})


def parse_rational(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {s!r}") from exc


def parse_point(text: str) -> ProjPoint:
    """Accepts ``1,0,0``, ``(1:0:0)`` or ``[1, 0, 0]``."""
    parts = [p for p in re.split(r"[,:\s]+", text.strip().strip("()[]")) if p]
    if len(parts) != 3:
        raise ParseError("a point needs three coordinates", 0, text)
    return ProjPoint(tuple(parse_rational(p) for p in parts))


def parse_line(text: str) -> ProjLine:
    """A line is given by coefficients (``0,1,0``) or by a linear form (``y - z``)."""
    t = text.strip()
    if re.search(r"[xyz]", t):
        f = parse_form(t, 1)
        return ProjLine(f.to_vector())
    parts = [p for p in re.split(r"[,:\s]+", t.strip("()[]")) if p]
    if len(parts) != 3:
        raise ParseError("a line needs three coefficients", 0, text)
    return ProjLine(tuple(parse_rational(p) for p in parts))


def vec_to_json(v) -> list[str]:
    return [_fmt_coef(Fraction(c)) for c in v]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
