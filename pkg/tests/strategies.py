from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from quartic_faces.forms import TernaryForm, Transform, det3, monomials

small = st.integers(-4, 4)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def forms(degree: int, coef=small):
    n = len(monomials(degree))
    return st.lists(coef, min_size=n, max_size=n).map(lambda v: TernaryForm.from_vector(degree, v))


@st.composite
def transforms(draw, bound: int = 3):
    rows = [tuple(draw(st.integers(-bound, bound)) for _ in range(3)) for _ in range(3)]
    assume(det3(rows) != 0)
    return Transform(rows)


@st.composite
def points(draw):
    v = [draw(st.integers(-5, 5)) for _ in range(3)]
    assume(any(v))
    from quartic_faces.forms import ProjPoint

    return ProjPoint(*v)
