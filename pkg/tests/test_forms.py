from fractions import Fraction

import pytest

from quartic_faces.forms import (
    ProjLine,
    ProjPoint,
    Transform,
    act,
    divide_exact,
    e1,
    e2,
    e3,
    e4,
    eval_at,
    form,
    frame_transform,
    gradient,
    incident,
    join,
    ord_at,
)
from quartic_faces.textio import ParseError, form_from_json, form_to_json, format_form, parse_form


def test_evaluation():
    assert eval_at(form("x^2*y^2 - z^4"), e4) == 0
    assert eval_at(form("x*y^2*z - x*y*z^2"), ProjPoint(1, 2, 1)) == 2
    assert eval_at(form("z^4"), e1) == 0


def test_gradient():
    assert gradient(form("x*y"), e2) == (1, 0, 0)
    assert gradient(form("y*z"), e2) == (0, 0, 1)
    assert gradient(form("x^2+y^2+z^2"), e1) == (2, 0, 0)


def test_order():
    assert ord_at(form("x^2*y^2 + 2*x*y*z^2 + z^4 + y^4"), e1) == 2
    assert ord_at(form("z^4 + y^4"), e1) == 4
    assert ord_at(form("x^4"), e1) == 0


def test_action_is_exact_pullback_by_inverse():
    f = form("x*y^3 - 2*z^4")
    assert act(Transform.identity(), f) == f
    swap = Transform(((1, 0, 0), (0, 0, 1), (0, 1, 0)))
    assert act(swap, form("y^4")) == form("z^4")
    # f(sigma^-1 x) with sigma = diag(1, 2, 1): y -> y/2
    assert act(Transform(((1, 0, 0), (0, 2, 0), (0, 0, 1))), form("x*y + 2*z^2", 2)) == form("1/2*x*y + 2*z^2", 2)


def test_normalized_scales_to_primitive_integers():
    f = form("1/2*x*y + 2*z^2", 2)
    assert f.normalized() == form("x*y + 4*z^2", 2)


def test_exact_division():
    assert divide_exact(form("y^2*z^2 + z^4"), form("z^2", 2)) == form("y^2 + z^2", 2)
    assert divide_exact(form("x*y^2*z - x*y*z^2"), form("z^3", 3)) is None
    assert divide_exact(form("0", 4), form("z", 1)).is_zero()


def test_lines():
    assert join(e1, e3) == ProjLine(0, 1, 0)
    assert not incident(e2, ProjLine(0, 1, 0))
    assert join(e1, e4) == ProjLine(0, 1, -1)


def test_frame_transform():
    assert frame_transform((e1, e2, e3, e4)).same_projective(Transform.identity())
    swap = frame_transform((e2, e1, e3, e4))
    assert swap.same_projective(Transform(((0, 1, 0), (1, 0, 0), (0, 0, 1))))
    targets = (ProjPoint(1, 2, 3), ProjPoint(1, 0, 0), ProjPoint(0, 1, 1), ProjPoint(2, 1, 0))
    s = frame_transform(targets)
    assert [s.apply_point(p) for p in (e1, e2, e3, e4)] == list(targets)


def test_text_format_and_json():
    f = parse_form("x^2*y^2 - 2*x*y*z^2 + z^4")
    assert format_form(f) == "x^2*y^2 - 2*x*y*z^2 + z^4"
    assert format_form(f, compact=True) == "x^2y^2 - 2xyz^2 + z^4"
    assert form_from_json(form_to_json(f)) == f
    assert parse_form("3/2 xy - yz", 2).coeff((1, 1, 0)) == Fraction(3, 2)


@pytest.mark.parametrize("text, offset", [("x^2 + + y^2", 6), ("x^2 + y", 6), ("x^2 + 1/0*y^2", 8), ("x^2 ? y^2", 4)])
def test_parse_errors_report_byte_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_form(text, 2)
    assert info.value.offset == offset
    assert f"byte {offset}" in str(info.value)
