import pytest

from deccospan import cospan as cs
from deccospan.cospan import Cospan, CospanMap, GlobularIso
from deccospan.errors import BoundaryMismatch, FootMismatch, NotBijective
from deccospan.finset import FinFunction, FinSet, identity, is_bijection

F = FinFunction.of
FIRST = Cospan.of(3, [0], [1, 1])
SECOND = Cospan.of(3, [0, 2], [1, 2])


def test_cospan_validates_legs():
    with pytest.raises(FootMismatch):
        Cospan(FinSet(1), FinSet(1), FinSet(2), F([0], 2), F([0], 3))


def test_circuit_composite_shape():
    c = cs.hcompose(FIRST, SECOND)
    assert c.apex == FinSet(4)
    assert c.in_leg.table == (0,)
    assert c.out_leg.table == (3, 1)


def test_hcompose_rejects_foot_mismatch():
    with pytest.raises(FootMismatch):
        cs.hcompose(FIRST, FIRST)


def test_identity_cospan():
    u = cs.identity_cospan(FinSet(2))
    assert u.in_leg.table == u.out_leg.table == (0, 1)
    e = cs.empty_cospan()
    assert e.apex == e.left_foot == e.right_foot == FinSet(0)
    iso = cs.left_unitor(u)
    assert (iso.source, iso.target) == (cs.hcompose(u, u), u)


def test_unit_law_up_to_unitor():
    iso = cs.left_unitor(SECOND)
    assert iso.source == cs.hcompose(cs.identity_cospan(SECOND.left_foot), SECOND)
    assert iso.target == SECOND
    assert is_bijection(iso.apex_bijection)


def test_tensor_strict_unit():
    e = cs.empty_cospan()
    assert cs.tensor(FIRST, e) == FIRST
    assert cs.tensor(e, FIRST) == FIRST


def test_tensor_figure_shape():
    t = cs.tensor(Cospan.of(3, [0], [1]), SECOND)
    assert (t.left_foot, t.right_foot, t.apex) == (FinSet(3), FinSet(3), FinSet(6))
    assert t.in_leg.table == (0, 3, 5)
    assert t.out_leg.table == (1, 4, 5)


def test_associator_on_circuit_chain():
    third = Cospan.of(2, [0, 1], [1])
    iso = cs.associator(FIRST, SECOND, third)
    assert iso.source == cs.hcompose(cs.hcompose(FIRST, SECOND), third)
    assert iso.target == cs.hcompose(FIRST, cs.hcompose(SECOND, third))
    assert iso.as_map().is_globular


def test_unitors_on_units_agree():
    U = cs.identity_cospan(FinSet(3))
    assert cs.left_unitor(U).apex_bijection == cs.right_unitor(U).apex_bijection


def test_unitor_tables():
    # U_X . SECOND glues X={0,1} onto SECOND's inputs {0,2}; least-member numbering
    # yields classes {0,2},{1,4},{3} so the map to SECOND is 0->0, 1->2, 2->1
    assert cs.left_unitor(SECOND).apex_bijection.table == (0, 2, 1)
    assert cs.right_unitor(SECOND).apex_bijection == identity(FinSet(3))


def test_interchanger_trivial_cases():
    U = cs.identity_cospan(FinSet(2))
    assert cs.interchanger(U, U, U, U).apex_bijection == identity(FinSet(4))
    e = cs.empty_cospan()
    iso = cs.interchanger(FIRST, e, SECOND, e)
    assert iso.apex_bijection == identity(iso.source.apex)


def test_interchanger_table():
    # the block shuffle C1 D1 | C2 D2 -> C1 C2 | D1 D2 after gluing; frozen from a hand trace
    iso = cs.interchanger(FIRST, FIRST, SECOND, SECOND)
    assert iso.apex_bijection.table == (0, 1, 2, 4, 5, 6, 3, 7)


def test_unit_interchanger():
    assert cs.unit_interchanger(FinSet(0), FinSet(0)).apex_bijection.table == ()
    assert cs.unit_interchanger(FinSet(1), FinSet(2)).apex_bijection.table == (0, 1, 2)


def test_braiding_object():
    assert cs.braiding_object(FinSet(1), FinSet(2)).table == (2, 0, 1)
    assert cs.braiding_object(FinSet(2), FinSet(2)).table == (2, 3, 0, 1)


def test_braiding_cell_with_empty_is_identity():
    cell = cs.braiding_cell(FIRST, cs.empty_cospan())
    assert cell == cs.identity_map(FIRST)


def test_braiding_cell_on_equal_blocks():
    cell = cs.braiding_cell(FIRST, FIRST)
    assert cell.apex.table == (3, 4, 5, 0, 1, 2)


def test_companion_and_conjoint():
    f = F([0, 0], 1)
    assert cs.companion(f) == Cospan.of(1, [0, 0], [0])
    assert cs.conjoint(f) == Cospan.of(1, [0], [0, 0])
    i = identity(FinSet(2))
    assert cs.companion(i) == cs.conjoint(i) == cs.identity_cospan(FinSet(2))


def test_check_cospan_map():
    assert cs.check_cospan_map(cs.identity_map(FIRST))
    # relabel the apex by h = [2, 0, 1]; legs move along h
    h = F([2, 0, 1], 3)
    target = Cospan.of(3, [2], [0, 0])
    cell = CospanMap(FIRST, target, identity(FinSet(1)), h, identity(FinSet(2)))
    assert cs.check_cospan_map(cell)
    broken = CospanMap(FIRST, target, identity(FinSet(1)), F([2, 1, 1], 3), identity(FinSet(2)))
    assert cs.diagnose_cospan_map(broken) == ["right square does not commute"]


def test_globular_iso_is_certified():
    with pytest.raises(NotBijective):
        GlobularIso(FIRST, FIRST, F([0, 0, 1], 3))
    with pytest.raises(BoundaryMismatch):
        GlobularIso(FIRST, FIRST, F([1, 0, 2], 3))


def test_vertical_units_and_horizontal_identities():
    cell = cs.unit_map(F([1, 0], 2))
    assert cs.vcompose(cs.identity_map(cell.source), cell) == cell
    assert cs.hcompose_map(cs.identity_map(FIRST), cs.identity_map(SECOND)) == \
        cs.identity_map(cs.hcompose(FIRST, SECOND))


def test_hcompose_map_needs_shared_middle():
    with pytest.raises(BoundaryMismatch):
        cs.hcompose_map(cs.unit_map(F([1, 0], 2)), cs.unit_map(identity(FinSet(2))))
