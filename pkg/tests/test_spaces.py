import json

import pytest

from quartic_faces.certify import max_gram_rank
from quartic_faces.catalog import CANONICAL_CONFIGS, VAR_Y
from quartic_faces.forms import ProjLine, ProjPoint, e1, e2, e3, e4, form
from quartic_faces.linalg import LinSubspace
from quartic_faces.spaces import (
    InvalidConfig,
    ZeroConfig,
    e_set,
    fullness_check,
    g_set,
    i_of_config,
    j_of_config,
    real_zero_set,
    square_span,
    verify_zero_set,
    zeros_on_line,
)


def span(*texts):
    return LinSubspace.span([form(t, 2) for t in texts], 2)


def test_j_spaces():
    assert j_of_config(ZeroConfig((e1, e2, e3))) == span("x*y", "x*z", "y*z")
    assert j_of_config(ZeroConfig((), ((e1, VAR_Y),))) == span("y^2", "z^2", "x*y", "y*z")
    assert j_of_config(ZeroConfig((e2, e3), ((e1, ProjLine(0, 1, -1)),))) == span("y*z", "x*y - x*z")


def test_i_spaces():
    assert i_of_config(ZeroConfig()).dim == 15
    assert i_of_config(ZeroConfig((e1,))).dim == 12
    assert i_of_config(CANONICAL_CONFIGS["T1"]).dim == 9


def test_square_span():
    assert square_span(span("x*y", "x*z", "y*z")).dim == 6
    assert square_span(span("x^2 - y*z")).dim == 1
    assert square_span(span("x*y + z^2", "y*z", "y^2")).dim == 6


def test_gradient_and_singular_sets():
    J = span("x*y - y*z", "y*z - x*z")
    assert g_set(J, e1).projective_dim == 1
    JT2 = span("z^2", "x*y", "y*z")
    assert not g_set(JT2, e1).is_empty()
    E = e_set(JT2, e1)
    assert E == span("y*z", "z^2")
    Z = zeros_on_line(E.basis, e1, ProjLine(0, 1, 0))
    assert Z.is_finite and set(Z.points) == {e1}
    assert g_set(span("y^2", "z^2"), e1).is_empty()


def test_zero_sets():
    assert verify_zero_set(span("z^2", "x*y", "y*z"), [e1, e2])
    assert verify_zero_set(span("x*y + z^2", "y^2"), [e1])
    assert not verify_zero_set(span("x*y"), [e1])
    Z = real_zero_set(span("x*y").basis)
    assert Z.kind == "infinite" and Z.contains_line
    assert real_zero_set(span("x^2 + y^2 + z^2").basis).points == ()
    Zc = real_zero_set(span("x^2 - y^2 + z^2").basis)
    assert Zc.kind == "infinite" and not Zc.contains_line


def test_zero_set_of_generic_net():
    pts = [ProjPoint(1, 2, 3), ProjPoint(2, -1, 1), ProjPoint(0, 1, 5), ProjPoint(3, 3, -2)]
    J = j_of_config(ZeroConfig(tuple(pts)))
    assert verify_zero_set(J, pts)


def test_config_validation_and_json():
    with pytest.raises(InvalidConfig):
        ZeroConfig((e1, e1))
    with pytest.raises(InvalidConfig):
        ZeroConfig((), ((e2, VAR_Y),))
    S = ZeroConfig((e2,), ((e1, VAR_Y),))
    assert ZeroConfig.from_json(json.loads(json.dumps(S.to_json()))) == S


def test_fullness():
    rep = fullness_check(ZeroConfig((e1, e2, e3, e4)), span("x*y - y*z", "y*z - x*z"))
    assert rep.full and rep.span_equals_I
    J = span("x*y - y*z", "y*z - x*z")
    f = form("x*y - y*z", 2) ** 2 + form("y*z - x*z", 2) ** 2
    assert max_gram_rank(f, J) == 2 == max_gram_rank(rep.inner_form, J)
    rep = fullness_check(CANONICAL_CONFIGS["T2"])
    assert rep.full and all(c.ok for c in rep.blowup_checks)


def test_collinear_points_fail_zero_set_condition():
    S = ZeroConfig((e1, e2, ProjPoint(1, 1, 0)))
    rep = fullness_check(S)
    assert not rep.full
    assert rep.failures()[0].name.startswith("(i)")
    assert square_span(j_of_config(S)).dim < i_of_config(S).dim
