from decimal import Decimal

import pytest
from figures import FIRST, SECOND

from deccospan import CIRCUIT, VECTFIELD
from deccospan import cospan as cs
from deccospan.circuits import LGraph
from deccospan.cospan import Cospan
from deccospan.decoration import (
    DecoratedCospan,
    DecoratedMap,
    check_decorated_map,
    dcompanion,
    dcompose,
    dconjoint,
    diagnose_decorated_map,
    didentity,
    dinterchanger,
    dtensor,
    relabel,
    trivial_decoration,
)
from deccospan.dynam import PolyVectorField, field
from deccospan.errors import BackendMismatch, DecorationMismatch, FootMismatch
from deccospan.finset import FinFunction, FinSet, identity

F = FinFunction.of


def test_decoration_must_live_on_apex():
    with pytest.raises(DecorationMismatch):
        DecoratedCospan(Cospan.of(2, [0], [1]), LGraph(FinSet(3)), CIRCUIT)


def test_trivial_decorations():
    assert trivial_decoration(CIRCUIT, FinSet(3)) == LGraph(FinSet(3))
    zero = trivial_decoration(VECTFIELD, FinSet(2))
    assert all(p.is_zero() for p in zero.components) and zero.space == FinSet(2)
    assert didentity(CIRCUIT, FinSet(0)).decoration == CIRCUIT.unit()


def test_companion_carries_no_edges():
    f = F([0, 0], 1)
    assert dcompanion(CIRCUIT, f).decoration.edge_list == ()
    i = identity(FinSet(2))
    assert dcompanion(CIRCUIT, i) == didentity(CIRCUIT, FinSet(2)) == dconjoint(CIRCUIT, i)


def test_compose_with_identity_is_unitor_related():
    out = dcompose(FIRST, didentity(CIRCUIT, FIRST.right_foot))
    iso = cs.right_unitor(FIRST.cospan)
    assert check_decorated_map(DecoratedMap(iso.apex_bijection), out, FIRST)


def test_tensor_with_empty():
    e = didentity(CIRCUIT, FinSet(0))
    assert dtensor(FIRST, e) == FIRST == dtensor(e, FIRST)


def test_circuit_composite_edges():
    c = dcompose(FIRST, SECOND)
    D = Decimal
    assert c.decoration.edge_list == (
        (0, 1, D("1.3")), (0, 2, D("0.8")), (1, 0, D("0.2")),
        (1, 3, D("0.3")), (1, 3, D("1.7")), (2, 1, D("2.0")),
    )


def test_vectfield_composite_sums_collapsed_components():
    # two one-node systems glued at their only node: components add
    left = DecoratedCospan(Cospan.of(1, [0], [0]), field("x0^2"), VECTFIELD)
    right = DecoratedCospan(Cospan.of(1, [0], [0]), field("3*x0"), VECTFIELD)
    assert dcompose(left, right).decoration == field("x0^2 + 3*x0")


def test_relabeling_two_morphism():
    h = F([2, 0, 1], 3)
    target = relabel(FIRST, h)
    assert target.cospan == Cospan.of(3, [2], [0, 0])
    assert check_decorated_map(DecoratedMap(h), FIRST, target)


def test_merging_two_morphism():
    # h folds C into B: the C->B edge becomes a loop at B
    h = F([0, 1, 1], 2)
    moved = CIRCUIT.transport(h, FIRST.decoration)
    target = DecoratedCospan(Cospan.of(2, [0], [1, 1]), moved, CIRCUIT)
    assert check_decorated_map(DecoratedMap(h), FIRST, target)
    assert (1, 1, Decimal("2.0")) in moved.edge_list


def test_altered_label_is_rejected():
    h = F([2, 0, 1], 3)
    good = relabel(FIRST, h)
    edges = list(good.decoration.edge_list)
    s, t, _ = edges[0]
    edges[0] = (s, t, Decimal("9.9"))
    bad = DecoratedCospan(good.cospan, LGraph(FinSet(3), tuple(edges)), CIRCUIT)
    assert diagnose_decorated_map(DecoratedMap(h), FIRST, bad) == ["decoration not preserved"]


def test_identity_map_is_valid():
    for d in (FIRST, SECOND):
        assert check_decorated_map(DecoratedMap(identity(d.apex)), d, d)


def test_dinterchanger_on_identities():
    U = didentity(CIRCUIT, FinSet(1))
    assert dinterchanger(U, U, U, U).apex_map == identity(FinSet(2))


def test_dinterchanger_on_circuits():
    m = dinterchanger(FIRST, FIRST, SECOND, SECOND)
    assert m.apex_map.table == (0, 1, 2, 4, 5, 6, 3, 7)


def test_backends_cannot_mix():
    v = DecoratedCospan(Cospan.of(1, [0], [0]), field("x0"), VECTFIELD)
    with pytest.raises(BackendMismatch):
        dtensor(FIRST, v)


def test_dcompose_checks_feet():
    with pytest.raises(FootMismatch):
        dcompose(FIRST, FIRST)


def test_decorated_equality_uses_backend():
    a = DecoratedCospan(Cospan.of(1, [0], [0]), PolyVectorField.parse(["2*x0"]), VECTFIELD)
    b = DecoratedCospan(Cospan.of(1, [0], [0]), PolyVectorField.parse(["x0 + x0"]), VECTFIELD)
    assert a == b and hash(a) == hash(b)
