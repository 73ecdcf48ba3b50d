from fractions import Fraction

import pytest

from quartic_faces.blowup import (
    BivariatePoly,
    ChartFrame,
    OrderTooLow,
    d2_at_zero,
    delta,
    discriminant_D,
    inp,
    minor_sum,
)
from quartic_faces.catalog import VAR_Y
from quartic_faces.forms import ProjLine, ProjPoint, e1, form, join
from quartic_faces import upoly

T1_STAR = "x^2*y^2 + 2*x*y*z^2 + z^4 + y^2*z^2 + y^4"
T1_STAR_STAR = "x^2*y^2 + 2*x*y*z^2 + z^4 + y^4"
FRAME = ChartFrame(e1, VAR_Y)


def test_frame_is_deterministic_and_puts_line_at_y0():
    fr = ChartFrame(e1, VAR_Y)
    assert fr.columns() == ChartFrame(e1, VAR_Y).columns()
    with pytest.raises(ValueError):
        ChartFrame(ProjPoint(0, 1, 0), VAR_Y)


def test_delta_of_quadratic_part_only():
    # in the frame at e1 with l = Var(y), Y is the y coordinate
    f = form("x^2*y^2")
    assert delta(f, FRAME) == BivariatePoly({(0, 2): 1})


def test_delta_on_exceptional_line_has_double_root_at_l():
    d = delta(form(T1_STAR_STAR), FRAME)
    assert d.restrict_x0() == [0, 0, 1]


def test_order_below_two_is_rejected():
    with pytest.raises(OrderTooLow):
        delta(form("x^3*y"), FRAME)
    with pytest.raises(OrderTooLow):
        inp(form("x^4 + y^4"), e1)


def test_inp():
    assert inp(form("x^2*y^2 + x^2*z^2"), e1).is_empty()
    assert inp(form("z^4 + y^4"), e1).all_of_p1
    s = inp(form(T1_STAR), e1)
    assert s.lines == (VAR_Y,) and len(s) == 1
    s = inp(form("x^2*y*z"), e1)
    assert set(s.lines) == {VAR_Y, ProjLine(0, 0, 1)}


def test_inp_irrational_directions_are_isolated():
    s = inp(form("x^2*y^2 - 2*x^2*z^2"), e1)
    assert not s.lines and len(s.irrational) == 2


def test_discriminant():
    assert discriminant_D(form(T1_STAR), FRAME) == [0, 0, 0, 0, -4, 0, -4]
    assert discriminant_D(form(T1_STAR_STAR), FRAME) == [0, 0, 0, 0, 0, 0, -4]
    # a perfect square in x has zero discriminant
    assert discriminant_D(form("x^2*y^2 + 2*x*y^3 + y^4"), FRAME) == []


def test_discriminant_nonpositive_for_nonnegative_delta():
    D = discriminant_D(form(T1_STAR), FRAME)
    for k in range(-10, 11):
        assert upoly.evaluate(D, Fraction(k, 3)) <= 0


def test_d2_at_zero():
    # the T1 inner form has a nondegenerate directed zero, the starred forms do not
    assert d2_at_zero(form("y^4 + z^4 + x^2*y^2 + y^2*z^2"), FRAME) == -8
    assert d2_at_zero(form(T1_STAR), FRAME) == 0
    assert d2_at_zero(form(T1_STAR_STAR), FRAME) == 0


def test_minor_sum_examples():
    b_par = [form("x*y", 2), form("2*x*y", 2)]
    assert minor_sum(b_par, FRAME) == 0
    f = form("x^2*y^2 + z^4")
    qs = [form("x*y", 2), form("z^2", 2)]
    assert minor_sum(qs, FRAME) == 1 and d2_at_zero(f, FRAME) == -8


def test_minor_data_rejects_quadrics_not_in_the_tangent_space():
    with pytest.raises(ValueError):
        minor_sum([form("x*z", 2)], FRAME)
