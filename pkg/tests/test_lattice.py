import json
from pathlib import Path

import pytest

from quartic_faces.catalog import IDS, get_class
from quartic_faces.forms import Transform, form
from quartic_faces.lattice import (
    COVER_WITNESSES,
    OBSTRUCTIONS,
    all_relations,
    check_inclusion,
    cover_graph,
    emit_dot,
    emit_json,
    hasse,
    order_graph,
)
from quartic_faces.search import find_embedding

GOLDEN = Path(__file__).parent / "golden"


def test_every_pair_is_decided():
    rels = all_relations()
    assert len(rels) == 400
    assert [e for e in rels if e.holds is None] == []
    assert {e.obstruction for e in rels if e.holds is False} <= set(OBSTRUCTIONS)


def test_frozen_witnesses_verify():
    G = cover_graph()
    for lo, hi in COVER_WITNESSES:
        w = G.edges[lo, hi]["witness"]
        assert w.certificate.verify()


def test_positive_edges_raise_dimension():
    for lo, hi in order_graph().edges:
        assert get_class(lo).dim_F < get_class(hi).dim_F


def test_equal_dimension_classes_are_incomparable():
    for a in IDS:
        for b in IDS:
            if a != b and get_class(a).dim_F == get_class(b).dim_F:
                assert check_inclusion(a, b).holds is False


def test_starred_inclusions():
    e = check_inclusion("L4", "T1**")
    assert e.holds and e.witness.form == form("y^4")
    e = check_inclusion("L2", "T1*")
    assert e.holds and e.witness.certificate.verify()
    assert check_inclusion("L3", "T2*").holds
    for hi in ("T1*", "T1**", "T2*"):
        assert check_inclusion("Q", hi).holds


@pytest.mark.parametrize("lo, hi", [("L1", "T1*"), ("L3", "T1**"), ("L4", "T2*")])
def test_paired_non_inclusions_have_obstructions(lo, hi):
    e = check_inclusion(lo, hi)
    assert e.holds is False and e.obstruction == "explicit-argument"


def test_figure_edges_and_extra_covers():
    H = hasse()
    assert sorted(H.successors("Fempty")) == []
    assert list(H.predecessors("Fempty")) == ["S1"]
    assert set(H.successors("D")) == {"T1"}
    assert set(H.predecessors("D")) == {"L2"}
    # covers that the published figure leaves out
    assert H.has_edge("L2", "T2") and H.has_edge("L4", "T3")


def test_dimension_levels():
    assert sorted({get_class(c).dim_F for c in IDS}, reverse=True) == [15, 12, 9, 6, 5, 3, 1, 0]


def test_dot_matches_golden_and_is_stable():
    assert emit_dot() == (GOLDEN / "lattice.dot").read_text()
    assert emit_dot() == emit_dot()
    assert '"L4" [label="L4 (dim=1)"];' in emit_dot()


def test_json_output():
    data = json.loads(emit_json())
    assert {"lo": "L4", "hi": "T1**"} in data["edges"]
    assert len(data["nodes"]) == 20
    assert emit_json() == (GOLDEN / "lattice.json").read_text()


def test_embedding_search_recovers_a_witness():
    sigma = find_embedding(get_class("L4").j_basis, get_class("T1**").j_basis, bound=1)
    assert sigma is not None
    assert find_embedding(get_class("L4").j_basis, get_class("T2*").j_basis, bound=1) is None
