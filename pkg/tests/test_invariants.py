"""Chromatic and Tutte symmetric functions: pins, recurrences, route agreement."""

from fractions import Fraction

import pytest

from tuttekit.combinatorics import DomainError, TPoly
from tuttekit.graphs import (
    Multigraph,
    complete,
    contract_edge,
    cycle,
    delete_edges,
    edgeless,
    path,
    star,
)
from tuttekit.invariants import (
    chromatic_sym,
    chromatic_sym_delcon,
    sigma_l_formula,
    sigma_l_direct,
    specialize_t,
    tutte_from_connected_partitions,
    tutte_from_contractions,
    tutte_sym,
    tutte_sym_delcon,
)
from tuttekit.symfun import SymFunc, m_to_e, mtilde_to_m

T = TPoly.t()
ONE = TPoly.one()


def test_tutte_sym_single_edge():
    f = tutte_sym(complete(2))
    assert f.basis == "mtilde"
    assert f.terms == {(1, 1): ONE, (2,): ONE + T}


def test_tutte_sym_weighted_edge():
    f = tutte_sym(Multigraph(2, [(1, 2)], weights=[1, 2]))
    assert f.terms == {(2, 1): ONE, (3,): ONE + T}


def test_tutte_sym_loop():
    f = tutte_sym(Multigraph(1, [(1, 1)]))
    assert f.terms == {(1,): ONE + T}
    assert chromatic_sym(Multigraph(1, [(1, 1)])).is_zero()


def test_tutte_sym_empty_graph():
    assert tutte_sym(edgeless(0)).terms == {(): ONE}
    assert chromatic_sym(edgeless(0)).terms == {(): ONE}


def test_chromatic_pins():
    assert chromatic_sym(complete(2)).terms == {(1, 1): ONE}
    assert chromatic_sym(path(3)).terms == {(1, 1, 1): ONE, (2, 1): ONE}
    assert chromatic_sym(complete(3)).terms == {(1, 1, 1): ONE}
    assert chromatic_sym(edgeless(1, [2])).terms == {(2,): ONE}
    # in the elementary basis the triangle is 6 e_3
    e = m_to_e(mtilde_to_m(chromatic_sym(complete(3))))
    assert e.terms == {(3,): TPoly.of(6)}


def test_deletion_contraction_recurrence():
    cases = [
        (complete(3), (1, 2)),
        (cycle(4), (1, 4)),
        (Multigraph(2, [(1, 2), (1, 2)]), (1, 2)),
        (Multigraph(3, [(1, 2), (2, 3), (3, 3)], weights=[2, 1, 1]), (2, 3)),
    ]
    for G, e in cases:
        left = tutte_sym(G)
        right = tutte_sym(delete_edges(G, [e])) + tutte_sym(contract_edge(G, e)).scale(T)
        assert left == right, (G, e)
        if not G.has_loop():
            xl = chromatic_sym(G)
            xr = chromatic_sym(delete_edges(G, [e])) - chromatic_sym(contract_edge(G, e))
            assert xl == xr, (G, e)


MINI_CORPUS = [
    edgeless(1),
    complete(2),
    path(3),
    complete(3),
    cycle(4),
    star(4),
    Multigraph(2, [(1, 2), (1, 2)]),
    Multigraph(2, [(1, 1), (1, 2)]),
    Multigraph(3, [(1, 2), (1, 2), (2, 3), (3, 3)]),
    Multigraph(3, [(1, 2), (2, 3)], weights=[1, 2, 1]),
    Multigraph(3, [(1, 2), (1, 3), (2, 3)], weights=[2, 1, 1]),
]


@pytest.mark.parametrize("G", MINI_CORPUS, ids=repr)
def test_four_routes_agree(G):
    f = tutte_sym(G)
    assert tutte_sym_delcon(G) == f
    assert tutte_from_contractions(G) == f
    assert tutte_from_connected_partitions(G) == f


@pytest.mark.parametrize("G", MINI_CORPUS, ids=repr)
def test_t_minus_one_recovers_chromatic(G):
    assert specialize_t(tutte_sym(G), -1) == chromatic_sym(G)
    assert chromatic_sym_delcon(G) == chromatic_sym(G)


def test_sigma_formula_pins():
    K2 = complete(2)
    assert sigma_l_formula(K2, 0, 1) == Fraction(2)
    assert sigma_l_formula(K2, 1, 1) == Fraction(-2)
    assert sigma_l_formula(K2, 1, 2) == Fraction(1)
    assert sigma_l_formula(edgeless(2), 0, 2) == Fraction(1)
    assert sigma_l_formula(edgeless(2), 0, 1) == Fraction(0)


def test_sigma_formula_matches_direct():
    cases = [
        complete(3),
        path(3),
        Multigraph(2, [(1, 2)], weights=[1, 2]),
        Multigraph(2, [(1, 2), (1, 2)]),
        Multigraph(2, [(1, 1), (1, 2)], weights=[2, 1]),
    ]
    for G in cases:
        w = G.total_weight()
        for k in range(len(G.edges) + 2):
            for l in range(1, w + 1):
                assert sigma_l_formula(G, k, l) == sigma_l_direct(G, k, l), (G, k, l)


def test_sigma_validation():
    with pytest.raises(DomainError):
        sigma_l_formula(complete(2), -1, 1)


def test_enumeration_bound():
    with pytest.raises(DomainError):
        chromatic_sym(edgeless(11))
    with pytest.raises(DomainError):
        tutte_from_contractions(Multigraph(2, [(1, 2)] * 17))


def test_bound_override_precedence(monkeypatch):
    monkeypatch.setenv("TUTTEKIT_MAX_N", "2")
    with pytest.raises(DomainError):
        tutte_sym(path(3))
    # explicit argument beats the environment
    assert tutte_sym(path(3), max_n=3) == tutte_sym_delcon(path(3), max_n=3)


def test_coefficients_live_in_onep_t_powers():
    # every mtilde coefficient of XB is a nonnegative integer combination of
    # (1+t)^k, one power per partition with fixed internal edge count
    f = tutte_sym(complete(3))
    for lam, c in f.terms.items():
        for a in c.onep_t_powers():
            assert a == int(a) and a >= 0
