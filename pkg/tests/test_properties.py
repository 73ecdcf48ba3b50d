"""Randomized invariants: equivariance, certificate round trips, chart identities."""
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from quartic_faces import acceptance
from quartic_faces.blowup import MINOR_CONSTANT, ChartFrame, d2_at_zero, discriminant_D, minor_sum
from quartic_faces.catalog import IDS, VAR_Y
from quartic_faces.forms import ProjPoint, TernaryForm, act
from quartic_faces.textio import format_form, parse_form
from quartic_faces import upoly

from .strategies import forms, transforms

SEEDS = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("class_id", IDS)
@settings(max_examples=100)
@given(sigma=transforms())
def test_equivariance_of_j_i_and_inp(class_id, sigma):
    assert acceptance.equivariance_failures(class_id, sigma) == []


@settings(max_examples=1000)
@given(seed=SEEDS)
def test_gram_certificate_round_trip(seed):
    assert acceptance.gram_roundtrip_case(random.Random(seed))


@settings(max_examples=500)
@given(seed=SEEDS)
def test_chart_identity(seed):
    assert acceptance.chart_identity_case(random.Random(seed))


@settings(max_examples=200)
@given(seed=SEEDS)
def test_d2_matches_minor_identity(seed):
    assert acceptance.minor_identity_case(random.Random(seed))


def test_minor_constant_from_symbolic_expansion():
    assert acceptance.derived_minor_constant() == MINOR_CONSTANT == -8


@settings(max_examples=200)
@given(f=forms(4), compact=st.booleans())
def test_text_round_trip(f, compact):
    assert parse_form(format_form(f, compact), 4) == f


@settings(max_examples=100)
@given(f=forms(4), s=transforms(), t=transforms())
def test_action_composes(f, s, t):
    assert act(s, act(t, f)) == act(s @ t, f)
    assert act(s.inverse(), act(s, f)) == f


@settings(max_examples=100)
@given(b=st.lists(st.integers(-3, 3), min_size=4, max_size=4), c=st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_d2_equals_three_point_interpolation(b, c):
    # an SOS with a directed zero at (e1, Var(y)) in canonical coordinates
    qs = [TernaryForm(2, {(1, 1, 0): b[i], (0, 2, 0): c[i], (0, 1, 1): b[(i + 1) % 4], (0, 0, 2): c[(i + 2) % 4]}) for i in range(2)]
    f = qs[0] * qs[0] + qs[1] * qs[1]
    assume(not f.is_zero())
    frame = ChartFrame(ProjPoint(1, 0, 0), VAR_Y)
    D = discriminant_D(f, frame)
    ys = [Fraction(0), Fraction(1, 7), Fraction(-1, 5)]
    # the quadratic Taylor part of D, recovered from values of D minus its higher terms
    trunc = D[:3]
    vals = [upoly.evaluate(trunc, y) for y in ys]
    # Lagrange second derivative at 0 from three samples
    (y0, y1, y2), (v0, v1, v2) = ys, vals
    second = 2 * (v0 / ((y0 - y1) * (y0 - y2)) + v1 / ((y1 - y0) * (y1 - y2)) + v2 / ((y2 - y0) * (y2 - y1)))
    assert second == d2_at_zero(f, frame)
    assert d2_at_zero(f, frame) == MINOR_CONSTANT * minor_sum(qs, frame)
