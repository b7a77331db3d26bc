import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from cayleyfactor import (
    FactorTriple,
    adjacency,
    all_subgroups,
    automorphisms,
    direct_product,
    involution_count,
    is_near_factorization,
    make_cyclic,
    make_dihedral,
    matrix_cross_check,
    parity_check,
    product_if_unique,
    rep_counts,
    subgroup_generated,
    transform_triple,
    transversal_identity,
    triple_from_json,
    triple_to_json,
    verify_triple,
)


def symmetric_subsets(G):
    pool = [g for g in range(G.order) if g != G.identity]
    return [X for X in oracles.all_subsets(pool) if all(G.inv(x) in X for x in X)]


def test_rep_counts_examples():
    Z5 = make_cyclic(5)
    assert rep_counts(Z5, set(), {1, 2}) == (0,) * 5
    assert rep_counts(Z5, {1, 4}, {2, 3}) == (0, 1, 1, 1, 1)
    D10 = make_dihedral(5)
    counts = rep_counts(D10, {1, 4}, {2, 3})
    assert counts[1:5] == (1, 1, 1, 1) and sum(counts) == 4


@given(st.integers(2, 16), st.data())
def test_rep_counts_sum_is_size_product(n, data):
    G = make_cyclic(n)
    S = data.draw(st.sets(st.integers(0, n - 1)))
    T = data.draw(st.sets(st.integers(0, n - 1)))
    counts = rep_counts(G, S, T)
    assert sum(counts) == len(S) * len(T)
    assert counts == tuple(
        oracles.naive_counts(G, S, T).get(g, 0) for g in range(n)
    )


def test_verify_triple_paper_examples():
    D10 = make_dihedral(5)
    assert verify_triple(D10, {1, 4}, {2, 3}, {1, 2, 3, 4})
    D8 = make_dihedral(4)
    # ({r, r^3}, {s, sr}, {s, sr, sr^2, sr^3})
    assert verify_triple(D8, {1, 3}, {4, 5}, {4, 5, 6, 7})
    report = verify_triple(make_cyclic(4), {2}, {2}, {2})
    assert not report
    assert report.reason == "identity in ST" and report.element == 0


def test_verify_triple_violation_reports():
    Z5 = make_cyclic(5)
    assert verify_triple(Z5, {1}, {2, 3}, {3, 4}).reason == "S not symmetric"
    Z6 = make_cyclic(6)
    assert verify_triple(Z6, {0, 3}, {3}, {3}).reason == "identity in S"
    r = verify_triple(Z6, {3}, {1, 5}, {2, 4, 1})
    assert r.reason == "U not symmetric"
    r = verify_triple(Z6, {3}, {1, 5}, {1, 5})
    assert r.reason == "element of U not realized" and r.element == 1
    # D8: r^2 * s = sr^2, which is not the claimed U = {sr^3}
    r = verify_triple(make_dihedral(4), {2}, {4}, {7})
    assert r.reason == "product outside U" and r.element == 6
    r = verify_triple(Z6, {1, 5}, {2, 4}, {1, 3, 5})
    assert r.reason == "duplicate product in ST" and r.element == 3
    Z8 = make_cyclic(8)
    r = verify_triple(Z8, {1, 7}, {1, 7}, {2, 6})
    assert r.reason == "identity in ST"


def test_verify_matches_matrix_and_oracle_exhaustively():
    for G in (make_cyclic(6), make_cyclic(8), make_dihedral(3)):
        sym = symmetric_subsets(G)
        for S in sym:
            for T in sym:
                U = product_if_unique(G, S, T)
                for cand in ([U] if U is not None else []) + [frozenset({1, G.inv(1)})]:
                    ok = bool(verify_triple(G, S, T, cand))
                    assert ok == matrix_cross_check(G, S, T, cand)
                    assert ok == oracles.naive_is_factorable(G, set(S), set(T), set(cand))


def test_product_if_unique_examples():
    Z10 = make_cyclic(10)
    assert product_if_unique(Z10, {5}, {4, 6}) == frozenset({1, 9})
    Z5 = make_cyclic(5)
    assert product_if_unique(Z5, {1, 4}, {1, 4}) is None
    Z8 = make_cyclic(8)
    assert product_if_unique(Z8, {1, 7}, {2, 6}) == frozenset({1, 3, 5, 7})


def test_adjacency_examples():
    Z4 = make_cyclic(4)
    A = adjacency(Z4, {2})
    assert A.tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    assert adjacency(Z4, set()).tolist() == np.zeros((4, 4), dtype=int).tolist()
    D10 = make_dihedral(5)
    B = adjacency(D10, {1, 4})
    assert (B == B.T).all() and (np.diag(B) == 0).all()
    assert matrix_cross_check(D10, {1, 4}, {2, 3}, {1, 2, 3, 4})


def test_adjacency_is_cached_and_readonly():
    Z5 = make_cyclic(5)
    A = adjacency(Z5, {1, 4})
    assert adjacency(Z5, {1, 4}) is A
    with pytest.raises(ValueError):
        A[0, 0] = 7


def test_transform_triple():
    D10 = make_dihedral(5)
    t = FactorTriple.build(D10, {1, 4}, {2, 3}, {1, 2, 3, 4})
    assert t.verified
    same = transform_triple(t, 5)  # conjugation by s fixes rotation sets
    assert (same.S, same.T, same.U) == (t.S, t.T, t.U)
    Z8 = make_cyclic(8)
    base = FactorTriple.build(Z8, {1, 7}, {2, 6}, {1, 3, 5, 7})
    u3 = next(a for a in automorphisms(Z8) if a.perm[1] == 3)
    out = transform_triple(base, u3)
    assert out.S == frozenset({3, 5}) and out.T == frozenset({2, 6})
    assert out.U == frozenset({1, 3, 5, 7}) and out.verified
    broken = FactorTriple.build(Z8, {1, 7}, {1, 7}, {2, 6})
    with pytest.raises(ValueError):
        transform_triple(broken, u3)


def test_transform_stability_under_all_automorphisms_and_conjugations():
    D10 = make_dihedral(5)
    t = FactorTriple.build(D10, {1, 4}, {2, 3}, {1, 2, 3, 4})
    for a in automorphisms(D10):
        assert transform_triple(t, a).verified
    for g in range(D10.order):
        assert transform_triple(t, g).verified


def test_transversal_identity():
    Z10 = make_cyclic(10)
    H = subgroup_generated(Z10, {5})
    assert H.elements == frozenset({0, 5})
    assert transversal_identity(Z10, H, {5}, {4, 6}, {1, 9})
    # H = G reduces to the size law, H = {e} to the pointwise condition
    assert transversal_identity(Z10, subgroup_generated(Z10, {1}), {5}, {4, 6}, {1, 9})
    assert transversal_identity(Z10, subgroup_generated(Z10, ()), {5}, {4, 6}, {1, 9})
    D10 = make_dihedral(5)
    for H in all_subgroups(D10):
        assert transversal_identity(D10, H, {1, 4}, {2, 3}, {1, 2, 3, 4})


def test_involution_count_and_parity():
    Z10 = make_cyclic(10)
    assert involution_count(Z10, {1, 9}) == 0
    assert involution_count(Z10, {1, 5, 9}) == 1
    t = FactorTriple.build(Z10, {5}, {4, 6}, {1, 9})
    assert parity_check(t) is True
    Z12 = make_cyclic(12)
    t12 = FactorTriple.build(Z12, {1, 11}, {3, 9}, {2, 4, 8, 10})
    assert parity_check(t12) is None


def test_edge_parity_on_verified_triples():
    # |E| = n|U|/2 must be even for every verified triple
    for G in (make_cyclic(8), make_cyclic(10), make_dihedral(4), make_dihedral(5)):
        sym = symmetric_subsets(G)
        for S in sym:
            for T in sym:
                U = product_if_unique(G, S, T)
                if U and verify_triple(G, S, T, U):
                    assert (G.order * len(U)) % 4 == 0


def test_is_near_factorization():
    Z5 = make_cyclic(5)
    assert is_near_factorization(Z5, {1, 4}, {2, 3})
    Z7 = make_cyclic(7)
    sym = symmetric_subsets(Z7)
    assert not any(is_near_factorization(Z7, S, T) for S in sym for T in sym)
    assert not is_near_factorization(make_cyclic(1), set(), set())


def test_triple_json_roundtrip():
    D10 = make_dihedral(5)
    t = FactorTriple.build(D10, {1, 4}, {2, 3}, {1, 2, 3, 4})
    data = triple_to_json(t)
    assert data["S"] == ["r", "r^4"] and data["verified"] is True
    back = triple_from_json(data)
    assert back.S == t.S and back.T == t.T and back.U == t.U and back.verified


def test_product_group_triple():
    V = direct_product(make_cyclic(2), make_cyclic(2))
    # ({(0,1)}, {(1,1)}, {(1,0)}) from the intro example
    assert verify_triple(V, {1}, {3}, {2})
    assert matrix_cross_check(V, {1}, {3}, {2})
