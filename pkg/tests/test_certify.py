import json

import pytest

from quartic_faces.catalog import get_class
from quartic_faces.certify import (
    ExposednessFunctional,
    GramCertificate,
    NonExposednessWitness,
    exposedness_certificate,
    gram_slice,
    max_gram_rank,
    nonexposedness_search,
    sos_in_subspace,
)
from quartic_faces.forms import ProjPoint, e1, e2, e3, form
from quartic_faces.linalg import LinSubspace


def J(id_):
    return get_class(id_).j_basis


def span(*texts):
    return LinSubspace.span([form(t, 2) for t in texts], 2)


def test_diagonal_certificate():
    cert, reason = sos_in_subspace(form("y^4 + y^2*z^2"), J("T1*"))
    assert cert is not None and cert.verify()
    assert cert.rank == 2


def test_rank_one_certificate_for_a_square():
    cert, _ = sos_in_subspace(form("x*y + z^2", 2) ** 2, J("T2*"))
    assert cert is not None and cert.rank == 1


def test_non_member_on_zero_dimensional_slice():
    cert, reason = sos_in_subspace(form("z^4"), J("T2*"))
    assert cert is None
    assert reason == "rejected (0-dimensional Gram slice)"


def test_numeric_probe_is_reverified_exactly():
    # x^4 + y^4 + z^4 over all quadrics: the slice has positive dimension
    cert, reason = sos_in_subspace(form("x^4 + y^4 + z^4 + x^2*y^2"), LinSubspace.full(2))
    assert cert is not None and cert.verify()
    assert gram_slice(form("x^4 + y^4 + z^4 + x^2*y^2"), LinSubspace.full(2)).dim > 0


def test_indefinite_gram_is_rejected():
    basis = (form("x^2", 2), form("y^2", 2))
    cert = GramCertificate(basis, ((1, 0), (0, -1)), form("x^4 - y^4"))
    assert not cert.verify()
    assert any("semidefinite" in p or "PSD" in p for p in cert.check())


def test_json_round_trip():
    cert, _ = sos_in_subspace(form("y^4 + y^2*z^2"), J("T1*"))
    back = GramCertificate.from_json(json.loads(json.dumps(cert.to_json())))
    assert back.verify() and back.gram == cert.gram


def test_max_gram_rank_separates_starred_classes():
    assert max_gram_rank(get_class("T1*").inner_form, J("T1*")) == 3
    assert max_gram_rank(get_class("T1**").inner_form, J("T1*")) == 2


def test_exposedness_functionals():
    L = ExposednessFunctional.uniform([e1, e2, e3])
    assert exposedness_certificate(span("x*y", "x*z", "y*z"), L)
    pts = [ProjPoint(1, 1, 0), ProjPoint(0, 1, 1), ProjPoint(3, 5, 4), ProjPoint(4, 5, 3), ProjPoint(5, 13, 12)]
    L = ExposednessFunctional.uniform(pts)
    assert L.kernel() == span("x^2 - y^2 + z^2")
    assert not exposedness_certificate(J("T1"), ExposednessFunctional.uniform([e1]))
    with pytest.raises(ValueError):
        ExposednessFunctional(((e1, 0),))


def test_nonexposedness_witnesses():
    w = nonexposedness_search(J("T4"))
    assert (w.f, w.g, w.c, w.d) == (form("y*z", 2), form("x^2", 2), form("x*y", 2), form("x*z", 2))
    w = nonexposedness_search(J("D"))
    assert w.f == form("y^2", 2) and w.c == w.d == form("x*y", 2)
    for k in ("T1", "T2", "T3", "D", "T1*", "T1**", "T2*"):
        w = nonexposedness_search(J(k))
        assert w is not None and w.verify(J(k))
        assert NonExposednessWitness.from_json(w.to_json()) == w


def test_witness_checks():
    bad = NonExposednessWitness(form("y^2", 2), form("z^2", 2), form("y*z", 2), form("y*z", 2))
    assert "c must not lie in J" in bad.check(J("T1*"))
