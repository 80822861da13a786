import itertools

import pytest

from deccospan.errors import CodomainMismatch, DomainMismatch, NotACocone, NotBijective
from deccospan.finset import (
    FinFunction,
    FinSet,
    all_functions,
    compose,
    copair,
    coproduct,
    identity,
    initial_map,
    inverse,
    is_bijection,
    pushout,
    pushout_universal,
)
from deccospan.laws import oracle_quotient, pushout_oracle

F = FinFunction.of


def test_identity_tables():
    assert identity(FinSet(0)).table == ()
    assert identity(FinSet(3)).table == (0, 1, 2)


def test_identity_is_unit():
    f = F([2, 0, 0], 3)
    assert compose(identity(f.dom), f) == f
    assert compose(f, identity(f.cod)) == f


def test_compose_examples():
    assert compose(F([1, 0], 2), F([1, 0], 2)).table == (0, 1)
    # frozen from evaluating g.table[f.table[k]] by hand
    assert compose(F([0, 0], 1), F([2], 3)) == F([2, 2], 3)


def test_compose_rejects_mismatch():
    with pytest.raises(CodomainMismatch):
        compose(F([0], 2), F([0], 1))


def test_table_validation():
    with pytest.raises(CodomainMismatch):
        F([3], 3)
    with pytest.raises(DomainMismatch):
        FinFunction(FinSet(2), FinSet(3), (0,))


def test_coproduct_layout():
    S, i1, i2 = coproduct(FinSet(0), FinSet(2))
    assert S == FinSet(2) and i1.table == () and i2.table == (0, 1)
    S, i1, i2 = coproduct(FinSet(1), FinSet(2))
    assert S == FinSet(3) and i1.table == (0,) and i2.table == (1, 2)
    assert copair(i1, i2) == identity(S)


def test_copair_examples():
    assert copair(F([0], 3), F([1, 2], 3)).table == (0, 1, 2)
    assert copair(F([0, 0], 1), F([0], 1)).table == (0, 0, 0)
    with pytest.raises(CodomainMismatch):
        copair(F([0], 1), F([0], 2))


def test_copair_restricts_to_legs_exhaustively():
    for a, b, q in itertools.product(range(3), range(3), range(1, 3)):
        _, i1, i2 = coproduct(FinSet(a), FinSet(b))
        for u in all_functions(FinSet(a), FinSet(q)):
            for v in all_functions(FinSet(b), FinSet(q)):
                w = copair(u, v)
                assert compose(i1, w) == u and compose(i2, w) == v


def test_pushout_over_empty_is_coproduct():
    p = pushout(initial_map(FinSet(2)), initial_map(FinSet(3)))
    _, i1, i2 = coproduct(FinSet(2), FinSet(3))
    assert p.apex == FinSet(5)
    assert p.left_leg == i1 and p.right_leg == i2


def test_pushout_circuit_gluing():
    # both outputs sit on B=1; they meet A'=0 and C'=2 of the second circuit
    p = pushout(F([1, 1], 3), F([0, 2], 3))
    assert p.apex == FinSet(4)
    assert p.left_leg(1) == p.right_leg(0) == p.right_leg(2)
    assert len({p.left_leg(0), p.left_leg(1), p.left_leg(2), p.right_leg(1)}) == 4


def test_pushout_numbering_is_by_least_member():
    p = pushout(F([2], 3), F([0], 2))
    # classes in N+N' = {0,1,2,3,4}: {0},{1},{2,3},{4}
    assert p.from_coproduct.table == (0, 1, 2, 2, 3)


def test_pushout_rejects_different_feet():
    with pytest.raises(DomainMismatch):
        pushout(F([0], 1), F([0, 0], 1))


def test_pushout_is_deterministic():
    f, g = F([0, 1, 1], 3), F([2, 0, 2], 3)
    assert pushout(f, g) == pushout(f, g)


def test_oracle_agrees_exhaustively():
    report = pushout_oracle(3)
    assert report.cases_run == 1544
    assert report.passed, report.text()


def test_oracle_spot_checks():
    report = pushout_oracle(1, spot_checks=300, spot_max=5, seed=7)
    assert report.passed, report.text()


def test_oracle_trivial_case():
    report = pushout_oracle(0)
    assert report.cases_run == 1 and report.passed


def test_oracle_quotient_example():
    assert oracle_quotient(F([0, 1], 2), F([1, 0], 2)) == (2, (0, 1, 1, 0))


def test_universal_of_legs_is_identity():
    p = pushout(F([1, 1], 3), F([0, 2], 3))
    assert pushout_universal(p, p.left_leg, p.right_leg) == identity(p.apex)


def test_universal_over_empty_is_copair():
    u, v = F([0, 1], 2), F([1], 2)
    p = pushout(initial_map(FinSet(2)), initial_map(FinSet(1)))
    assert pushout_universal(p, u, v) == copair(u, v)


def test_universal_rejects_non_cocone():
    p = pushout(F([0], 1), F([0], 1))
    with pytest.raises(NotACocone):
        pushout_universal(p, F([0], 2), F([1], 2))


def test_universal_is_unique_by_enumeration():
    cases = 0
    for y, n, n2, q in itertools.product(range(3), range(1, 3), range(1, 3), range(1, 4)):
        Y, N, N2, Q = FinSet(y), FinSet(n), FinSet(n2), FinSet(q)
        for f in all_functions(Y, N):
            for g in all_functions(Y, N2):
                p = pushout(f, g)
                for u in all_functions(N, Q):
                    for v in all_functions(N2, Q):
                        if compose(f, u) != compose(g, v):
                            continue
                        w = pushout_universal(p, u, v)
                        fits = [c for c in all_functions(p.apex, Q)
                                if compose(p.left_leg, c) == u and compose(p.right_leg, c) == v]
                        assert fits == [w]
                        cases += 1
    assert cases == 788


def test_bijections():
    assert is_bijection(F([1, 0], 2)) and inverse(F([1, 0], 2)) == F([1, 0], 2)
    assert not is_bijection(F([0, 0], 2))
    with pytest.raises(NotBijective):
        inverse(F([0, 0], 2))
    f = F([2, 0, 1], 3)
    assert inverse(inverse(f)) == f
    assert compose(f, inverse(f)) == identity(f.dom)
