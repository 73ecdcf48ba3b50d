"""One test per reproduction criterion; each asserts the criterion at its stated tolerance."""
import pytest

from quartic_faces import acceptance


def _assert(result):
    assert result.passed, "\n".join([result.title] + result.lines)


def test_criterion_01_type_a_dimensions():
    _assert(acceptance.check_type_a())


def test_criterion_02_type_b_dimensions():
    _assert(acceptance.check_type_b())


def test_criterion_03_type_c_dimensions():
    _assert(acceptance.check_type_c())


def test_criterion_04_j_bases_match_published_spans():
    _assert(acceptance.check_j_bases())


def test_criterion_05_fullness_and_blowup_data():
    _assert(acceptance.check_fullness())


def test_criterion_06_strict_containment_three_collinear_points():
    _assert(acceptance.check_strictness())


def test_criterion_07_falsifier_curves():
    _assert(acceptance.check_falsifiers(acceptance.seed_from_env()))


def test_criterion_08_exposedness_flags():
    _assert(acceptance.check_exposedness())


def test_criterion_09_lattice_edges_obstructions_and_golden_dot():
    _assert(acceptance.check_lattice())


@pytest.mark.slow
def test_criterion_10_property_suites():
    _assert(acceptance.property_suite(acceptance.seed_from_env()))
