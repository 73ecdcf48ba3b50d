import random

import pytest

from quartic_faces.catalog import (
    CANONICAL_CONFIGS,
    IDS,
    catalog,
    classify_config,
    face_type_of,
    falsifier_value,
    get_class,
)
from quartic_faces.forms import ProjPoint, act, e1, e2, form
from quartic_faces.spaces import ZeroConfig, random_transform


def test_twenty_classes_in_fixed_order():
    assert tuple(c.id for c in catalog()) == IDS
    assert len(IDS) == 20


def test_representative_entries():
    q = get_class("Q")
    assert (q.dim_F, q.dim_J) == (1, 1)
    assert q.inner_form == form("x^2 - y^2 + z^2", 2) ** 2
    assert (get_class("D").dim_F, get_class("D").dim_J) == (5, 3)
    assert (get_class("L0").dim_F, get_class("L0").dim_J) == (6, 3)
    assert get_class("T3*").id == "T2*"


def test_face_type_of_forms():
    z = form("z", 1)
    assert face_type_of(form("z^2*x^2 + z^2*y^2 + z^4"), [z * form("x", 1), z * form("y", 1), z * z]).face_type == "A"
    r = face_type_of(form("x*y - y*z", 2) ** 2 + form("y*z - x*z", 2) ** 2, [form("x*y - y*z", 2), form("y*z - x*z", 2)])
    assert (r.face_type, r.class_id) == ("B", "S4")
    qs = [form("x*y + z^2", 2), form("y^2", 2)]
    r = face_type_of(qs[0] ** 2 + qs[1] ** 2, qs)
    assert (r.face_type, r.class_id) == ("C", "T1**")


def test_face_type_of_requires_squares():
    with pytest.raises(ValueError):
        face_type_of(form("x^4"), None)


def test_classify_configurations():
    S = ZeroConfig((ProjPoint(1, 2, 3), ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(0, 0, 1)))
    c, sigma = classify_config(S)
    assert c.id == "S4"
    # sigma carries the input onto the representative
    assert {sigma.apply_point(p) for p in S.points()} == set(CANONICAL_CONFIGS["S4"].points())
    assert classify_config(ZeroConfig((e1,)))[0].id == "S1"
    assert classify_config(ZeroConfig((e1, e2, ProjPoint(1, 1, 0))))[0].face_type == "A"


@pytest.mark.parametrize("class_id", ["S1", "S2", "S3", "S4", "T1", "T2", "T3", "T4", "Q"])
def test_classification_is_invariant(class_id):
    rng = random.Random(7)
    S = CANONICAL_CONFIGS[class_id]
    for _ in range(5):
        sigma = random_transform(rng)
        T = S.transform(sigma)
        c, tau = classify_config(T)
        assert c.id == class_id
        if class_id != "Q":  # the conic is matched only up to a diagonal rescaling
            assert T.transform(tau).same_as(S)


@pytest.mark.parametrize("class_id, eps", [("T1*", 1), ("T1**", "1/2"), ("T2*", "1/10")])
def test_falsifier_curves_go_negative(class_id, eps):
    assert falsifier_value(class_id, eps, "1/8") < 0
