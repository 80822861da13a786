from fractions import Fraction

import pytest

from deccospan.dynam import (
    VECTFIELD,
    Polynomial,
    PolyVectorField,
    euler_integrate,
    evaluate,
    field,
    parse_polynomial,
    pullback_point,
    pullback_subst,
    pushforward_point,
    vf_combine,
    vf_transport,
    vf_unit,
)
from deccospan.errors import DimensionMismatch, IndexMismatch, ParseError
from deccospan.finset import FinFunction, FinSet, identity

F = FinFunction.of
Q = Fraction


def test_canonical_terms():
    p = Polynomial.from_dict(2, {(0, 1): 1, (2, 0): 3, (0, 0): 5, (1, 0): 0})
    assert [e for e, _ in p.terms] == [(2, 0), (0, 1), (0, 0)]
    assert str(p) == "3*x0^2 + x1 + 5"


def test_parse_and_format_round_trip():
    for text in ["3*x0^2 - 1/2*x1 + 5", "-x0*x1^3", "0", "7/3", "x1^2 - x0"]:
        p = parse_polynomial(text, 2)
        assert parse_polynomial(str(p), 2) == p
    assert parse_polynomial("0.5*x0", 1) == Polynomial.from_dict(1, {(1,): Q(1, 2)})
    assert parse_polynomial("x0*x0 + x0^2", 1) == Polynomial.from_dict(1, {(2,): 2})


@pytest.mark.parametrize("bad", ["", "x2", "x0^", "x0 +", "3 x0", "x0^1/2", "y0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_polynomial(bad, 2)


def test_arithmetic():
    x0, x1 = Polynomial.var(2, 0), Polynomial.var(2, 1)
    p = (x0 + x1) * (x0 - x1)
    assert p == parse_polynomial("x0^2 - x1^2", 2)
    assert (p * 2).degree() == 2 and Polynomial.zero(2).degree() == -1
    assert p([3, 1]) == 8
    with pytest.raises(IndexMismatch):
        x0 + Polynomial.var(3, 0)


def test_substitution_examples():
    p = parse_polynomial("x0*x1", 2)
    assert pullback_subst(identity(FinSet(2)), p) == p
    assert pullback_subst(F([0, 0], 1), p) == parse_polynomial("x0^2", 1)
    q = parse_polynomial("x0^2*x1 + x1^3", 2)
    assert pullback_subst(F([1, 0], 3), q).degree() == q.degree()
    with pytest.raises(IndexMismatch):
        pullback_subst(F([0], 1), p)


def test_transport_examples():
    v = field("x1", "x0")
    assert vf_transport(identity(FinSet(2)), v) == v
    collapsed = vf_transport(F([0, 0], 1), v)
    assert collapsed == field("2*x0")
    # numeric oracle: pushforward of v evaluated at the pulled-back point
    for c in [Q(3), Q(-1, 2), Q(0)]:
        f = F([0, 0], 1)
        assert evaluate(collapsed, [c]) == pushforward_point(f, evaluate(v, pullback_point(f, [c])))


def test_transport_empty_preimage_is_zero():
    v = field("x0")
    moved = vf_transport(F([1], 2), v)
    assert moved.components[0].is_zero() and moved.components[1] == parse_polynomial("x1", 2)


def test_combine_examples():
    assert vf_combine(field("x0^2"), field("3*x0")) == field("x0^2", "3*x1")
    v = field("x1", "x0")
    assert vf_combine(v, vf_unit()) == v == vf_combine(vf_unit(), v)
    w = field("x0*x0 - 1")
    both = vf_combine(v, w)
    assert evaluate(both, [2, 5, 3]) == evaluate(v, [2, 5]) + evaluate(w, [3])


def test_unit():
    assert vf_unit().components == ()
    zero = vf_transport(F([], 3), vf_unit())
    assert all(p.is_zero() for p in zero.components)


def test_evaluate():
    assert evaluate(field("x1", "x0"), [2, 5]) == (5, 2)
    assert evaluate(vf_transport(F([], 2), vf_unit()), [Q(1, 3), 7]) == (0, 0)
    with pytest.raises(DimensionMismatch):
        evaluate(field("x0"), [1, 2])


def test_euler_constant_field():
    traj = euler_integrate(field("1"), [0], Q(1, 2), 4)
    assert [x[0] for x in traj] == [0, Q(1, 2), 1, Q(3, 2), 2]


def test_euler_zero_field():
    zero = vf_transport(F([], 2), vf_unit())
    assert euler_integrate(zero, [Q(1, 3), 2], Q(1, 10), 3) == [(Q(1, 3), Q(2))] * 4


def test_euler_linear_field_closed_form():
    h = Q(1, 7)
    traj = euler_integrate(field("x0"), [1], h, 12)
    assert [x[0] for x in traj] == [(1 + h) ** k for k in range(13)]


def test_euler_errors():
    with pytest.raises(ValueError):
        euler_integrate(field("x0"), [1], 0, 3)
    with pytest.raises(DimensionMismatch):
        euler_integrate(field("x0"), [1, 2], 1, 3)


def test_linearity_of_transport():
    f = F([1, 1, 0], 2)
    v = field("x0*x1", "x2", "1")
    w = field("x2^2", "-x0", "x1")
    assert vf_transport(f, v + w) == vf_transport(f, v) + vf_transport(f, w)


def test_field_validation():
    with pytest.raises(DimensionMismatch):
        PolyVectorField(FinSet(2), (Polynomial.zero(2),))
    with pytest.raises(IndexMismatch):
        PolyVectorField(FinSet(1), (Polynomial.zero(2),))


def test_json_round_trip():
    v = field("3*x0^2 - 1/2*x1 + 5", "x0")
    assert VECTFIELD.from_json(VECTFIELD.to_json(v), FinSet(2)) == v
    with pytest.raises(ParseError):
        VECTFIELD.from_json({"components": ["x0"]}, FinSet(2))
