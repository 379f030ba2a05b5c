"""Quasisymmetric chromatic and Tutte functions on digraphs."""

import random
from fractions import Fraction
from itertools import product

import pytest

from tuttekit.combinatorics import DomainError, TPoly
from tuttekit.graphs import path
from tuttekit.invariants import tutte_sym
from tuttekit.quasi import (
    Digraph,
    QTPoly,
    TruncatedQFunc,
    arc_statistics,
    contract_arc_set,
    contract_digraph_partition,
    digraph_from_json_obj,
    digraph_to_json_obj,
    qt_onep_t_power,
    reverse,
    tq,
    tq_from_arc_subsets,
    tq_from_connected_partitions,
    truncate_symfunc,
    underlying,
    xq,
)
from tuttekit.symfun import SymFunc

Q = QTPoly.q()
ONE = QTPoly.one()
T = QTPoly.of(TPoly.t())


#### coefficients ##############################################################


def test_qtpoly_arithmetic():
    assert (Q + T) * (Q - T) == Q * Q - T * T
    assert (Q - Q).is_zero()
    assert QTPoly.q(3).terms == {(3, 0): Fraction(1)}
    assert qt_onep_t_power(2) == ONE + 2 * T + T * T
    assert (ONE + Q).at_q(2) == QTPoly.of(3)
    assert (ONE + T).at_t(-1).is_zero()
    assert (ONE + T).to_tpoly() == TPoly.one() + TPoly.t()
    with pytest.raises(DomainError):
        Q.to_tpoly()


def test_qtpoly_json_roundtrip():
    p = Q * Q + T * Fraction(1, 2) - ONE
    assert QTPoly.from_json_obj(p.to_json_obj()) == p


#### digraphs ##################################################################


def test_digraph_basics():
    D = Digraph(3, [(2, 1), (1, 3)], weights=[1, 2, 1])
    assert D.arcs == ((1, 3), (2, 1))
    assert D.total_weight() == 4
    assert not D.has_loop()
    assert Digraph(1, [(1, 1)]).has_loop()
    with pytest.raises(DomainError):
        Digraph(2, [(1, 3)])
    with pytest.raises(DomainError):
        Digraph(2, [], weights=[1])


def test_underlying_and_reverse():
    D = Digraph(3, [(2, 1), (1, 3)], weights=[1, 2, 1])
    U = underlying(D)
    assert U.edges == ((1, 2), (1, 3)) and U.weights == (1, 2, 1)
    assert reverse(reverse(D)) == D
    assert reverse(D).arcs == ((1, 2), (3, 1))


def test_arc_statistics():
    D = Digraph(3, [(1, 2), (2, 1), (1, 1)])
    asc, desc, mono = arc_statistics(D, [1, 2, 9])
    assert (asc, desc, mono) == (1, 1, 1)
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 4)
        arcs = [(rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, 6))]
        D = Digraph(n, arcs)
        R = reverse(D)
        for kappa in product(range(1, 4), repeat=n):
            a, d, m = arc_statistics(D, kappa)
            assert a + d + m == len(arcs)
            # reversal swaps ascents and descents
            assert arc_statistics(R, kappa) == (d, a, m)


def test_contract_arc_set():
    D = Digraph(3, [(1, 2), (2, 3)], weights=[1, 2, 1])
    C = contract_arc_set(D, [0])
    assert C == Digraph(2, [(1, 2)], weights=[3, 1])
    # contracting one copy of a doubled arc leaves a loop
    E = contract_arc_set(Digraph(2, [(1, 2), (2, 1)]), [0])
    assert E == Digraph(1, [(1, 1)], weights=[2])
    with pytest.raises(DomainError):
        contract_arc_set(D, [5])


def test_contract_digraph_partition():
    D = Digraph(3, [(1, 2), (2, 1), (1, 3)])
    C = contract_digraph_partition(D, [[1, 2], [3]])
    assert C == Digraph(2, [(1, 2)], weights=[2, 1])


def test_digraph_json_roundtrip():
    D = Digraph(2, [(2, 1)], weights=[1, 3])
    obj = digraph_to_json_obj(D)
    assert obj == {"n": 2, "arcs": [[2, 1]], "weights": [1, 3]}
    assert digraph_from_json_obj(obj) == D
    assert "weights" not in digraph_to_json_obj(Digraph(1))


#### XQ and TQ pins ############################################################


def test_xq_single_arc():
    f = xq(Digraph(2, [(1, 2)]), 2)
    assert f.terms == {(1, 1): ONE + Q}


def test_xq_loop_vanishes():
    assert xq(Digraph(1, [(1, 1)]), 1).is_zero()


def test_xq_arcless():
    f = xq(Digraph(2), 2)
    assert f.terms == {(2, 0): ONE, (1, 1): QTPoly.of(2), (0, 2): ONE}


def test_tq_single_arc():
    f = tq(Digraph(2, [(1, 2)]), 2)
    onept = ONE + T
    assert f.terms == {(1, 1): ONE + Q, (2, 0): onept, (0, 2): onept}


def test_weighted_exponents():
    f = xq(Digraph(1, [], weights=[2]), 2)
    assert f.terms == {(2, 0): ONE, (0, 2): ONE}
    with pytest.raises(DomainError):
        xq(Digraph(1, [], weights=[3]), 2)


def test_coloring_budget():
    with pytest.raises(DomainError):
        tq(Digraph(9), 9)


#### route agreement ###########################################################

ROUTE_CASES = [
    Digraph(2, [(1, 2)]),
    Digraph(2, [(1, 2), (2, 1)]),
    Digraph(3, [(1, 2), (2, 3)]),
    Digraph(3, [(1, 2), (2, 1), (1, 3)]),
    Digraph(2, [(1, 2)], weights=[2, 1]),
    Digraph(2, [(1, 1), (1, 2)]),
]


@pytest.mark.parametrize("D", ROUTE_CASES, ids=repr)
def test_tq_routes_agree(D):
    N = D.total_weight()
    f = tq(D, N)
    assert tq_from_connected_partitions(D, N) == f
    assert tq_from_arc_subsets(D, N) == f


@pytest.mark.parametrize("D", ROUTE_CASES, ids=repr)
def test_tq_specializations(D):
    N = D.total_weight()
    f = tq(D, N)
    assert f.at_t(-1) == xq(D, N)
    assert f.at_q(1) == truncate_symfunc(tutte_sym(underlying(D)), N)


def test_truncate_symfunc_pins():
    f = truncate_symfunc(SymFunc("mtilde", {(2,): 1}), 2)
    assert f.terms == {(2, 0): ONE, (0, 2): ONE}
    g = truncate_symfunc(SymFunc("mtilde", {(1, 1): 1}), 2)
    assert g.terms == {(1, 1): QTPoly.of(2)}
    # partitions longer than the variable count truncate away
    assert truncate_symfunc(SymFunc("mtilde", {(1, 1, 1): 1}), 2).is_zero()
    with pytest.raises(DomainError):
        truncate_symfunc(SymFunc("m", {(2,): 1}), 2)


def test_truncation_needs_enough_variables():
    D = Digraph(3, [(1, 2)])
    with pytest.raises(DomainError):
        tq(D, 2)


def test_truncated_qfunc_algebra_and_json():
    f = tq(Digraph(2, [(1, 2)]), 2)
    assert (f - f).is_zero()
    assert f.scale(2).terms[(1, 1)] == (ONE + Q) * 2
    obj = f.to_json_obj()
    assert obj["N"] == 2
    assert TruncatedQFunc.from_json_obj(obj) == f
    with pytest.raises(DomainError):
        f + tq(Digraph(2, [(1, 2)]), 3)
    with pytest.raises(DomainError):
        TruncatedQFunc(2, {(1, 1, 0): ONE})


def test_path_against_undirected_tutte():
    # both orientations of the path agree with XB at q = 1
    fwd = Digraph(3, [(1, 2), (2, 3)])
    mixed = Digraph(3, [(2, 1), (2, 3)])
    target = truncate_symfunc(tutte_sym(path(3)), 3)
    assert tq(fwd, 3).at_q(1) == target
    assert tq(mixed, 3).at_q(1) == target
    # but the q-refinements differ between orientations
    assert tq(fwd, 3) != tq(mixed, 3)
