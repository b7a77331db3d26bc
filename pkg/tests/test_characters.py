import cmath
import math

import numpy as np
import pytest

import oracles
from cayleyfactor import (
    adjacency,
    cayley_eigenvalue_rows,
    cayley_eigenvalues,
    char_sum,
    character_table,
    criterion_check,
    direct_product,
    make_cyclic,
    make_dihedral,
    product_if_unique,
    verify_triple,
)

SUPPORTED = [
    make_cyclic(5),
    make_cyclic(8),
    make_dihedral(2),
    make_dihedral(3),
    make_dihedral(4),
    make_dihedral(5),
    direct_product(make_cyclic(2), make_cyclic(4)),
]


def test_table_shapes():
    assert [c.degree for c in character_table(make_cyclic(5)).characters] == [1] * 5
    d10 = character_table(make_dihedral(5))
    assert sorted(c.degree for c in d10.characters) == [1, 1, 2, 2]
    d8 = character_table(make_dihedral(4))
    assert sorted(c.degree for c in d8.characters) == [1, 1, 1, 1, 2]
    with pytest.raises(ValueError):
        character_table(direct_product(make_cyclic(2), make_dihedral(3)))


def test_table_is_memoized():
    G = make_cyclic(7)
    assert character_table(G) is character_table(G)


@pytest.mark.parametrize("G", SUPPORTED, ids=lambda G: G.name)
def test_row_orthogonality(G):
    table = character_table(G)
    sizes = [len(c) for c in table.classes]
    for i, chi in enumerate(table.characters):
        for j, psi in enumerate(table.characters):
            inner = sum(
                size * v1 * v2.conjugate()
                for size, v1, v2 in zip(sizes, chi.values_by_class, psi.values_by_class)
            )
            expected = G.order if i == j else 0.0
            assert abs(inner - expected) <= 1e-9 * max(1, G.order)


def test_char_sum_examples():
    Z5 = make_cyclic(5)
    table = character_table(Z5)
    triv = table.characters[0]
    chi1 = table.characters[1]
    assert char_sum(table, triv, {1, 2, 3, 4}) == pytest.approx(4)
    assert char_sum(table, chi1, {1, 2, 3, 4}) == pytest.approx(-1)
    assert char_sum(table, chi1, {1, 4}) == pytest.approx(2 * math.cos(2 * math.pi / 5))


def test_criterion_examples():
    Z5 = make_cyclic(5)
    assert criterion_check(Z5, {1, 4}, {2, 3}, {1, 2, 3, 4})
    # golden-ratio product: chi_1(S) chi_1(T) = (0.618...)(-1.618...) = -1 = chi_1(U)
    table = character_table(Z5)
    chi1 = table.characters[1]
    prod = char_sum(table, chi1, {1, 4}) * char_sum(table, chi1, {2, 3})
    assert prod == pytest.approx(-1)
    D10 = make_dihedral(5)
    assert criterion_check(D10, {1, 4}, {2, 3}, {1, 2, 3, 4})
    assert not criterion_check(Z5, {1, 4}, {1, 4}, {2, 3})


def test_criterion_rejects_bad_inputs():
    D10 = make_dihedral(5)
    with pytest.raises(ValueError, match="class-closed"):
        criterion_check(D10, {5}, {1, 4}, {6, 9})  # {s} is not a full class
    Z6 = make_cyclic(6)
    with pytest.raises(ValueError, match="identity"):
        criterion_check(Z6, {0, 3}, {1, 5}, {2, 4})
    with pytest.raises(ValueError, match="symmetric"):
        criterion_check(Z6, {1}, {2, 4}, {3})


def class_closed_symmetric_sets(G):
    from cayleyfactor import conjugacy_classes, is_symmetric

    classes = [c for c in conjugacy_classes(G) if G.identity not in c]
    sets = []
    for mask in range(1 << len(classes)):
        X = frozenset(g for k, cls in enumerate(classes) if mask >> k & 1 for g in cls)
        if is_symmetric(G, X):
            sets.append(X)
    return sets


@pytest.mark.parametrize("G", [make_cyclic(7), make_cyclic(8), make_dihedral(3), make_dihedral(4)],
                         ids=lambda G: G.name)
def test_criterion_equals_verify_exhaustively(G):
    sets = class_closed_symmetric_sets(G)
    for S in sets:
        for T in sets:
            for U in sets:
                assert criterion_check(G, S, T, U) == bool(verify_triple(G, S, T, U))


def test_eigenvalues_circulant():
    n = 7
    Z = make_cyclic(n)
    got = cayley_eigenvalues(Z, {2, 5})
    want = sorted(
        (complex(2 * math.cos(2 * math.pi * k * 2 / n)) for k in range(n)),
        key=lambda z: (z.real, z.imag),
    )
    assert all(abs(a - b) <= 1e-9 for a, b in zip(got, want))


def test_eigenvalues_complete_graph():
    for G in (make_cyclic(6), make_dihedral(3)):
        X = set(range(G.order)) - {G.identity}
        vals = cayley_eigenvalues(G, X)
        assert vals[-1] == pytest.approx(G.order - 1)
        assert all(v == pytest.approx(-1) for v in vals[:-1])


@pytest.mark.parametrize("G,X", [
    (make_dihedral(5), {1, 4}),
    (make_dihedral(4), {4, 6}),
    (make_cyclic(8), {1, 7, 4}),
    (direct_product(make_cyclic(2), make_cyclic(4)), {1, 3, 4}),
], ids=("D10", "D8", "Z8", "Z2xZ4"))
def test_eigenvalues_match_diagonalization(G, X):
    formula = cayley_eigenvalues(G, X)
    numeric = oracles.spectrum_of_matrix(adjacency(G, X))
    assert len(formula) == len(numeric) == G.order
    for a, b in zip(formula, numeric):
        assert abs(a - b) <= 1e-6


def test_eigenvalues_nonsymmetric_class_closed():
    Z5 = make_cyclic(5)
    vals = cayley_eigenvalues(Z5, {1})
    roots = sorted((cmath.exp(2j * cmath.pi * k / 5) for k in range(5)),
                   key=lambda z: (z.real, z.imag))
    for a, b in zip(vals, roots):
        assert abs(a - b) <= 1e-9
    numeric = oracles.spectrum_of_matrix(adjacency(Z5, {1}))
    for a, b in zip(vals, numeric):
        assert abs(a - b) <= 1e-6


def test_eigenvalue_rows_multiplicities():
    rows = cayley_eigenvalue_rows(make_dihedral(5), {1, 4})
    mults = {label: mult for label, _, _, mult in rows}
    assert mults == {"triv": 1, "sgn": 1, "rho_1": 4, "rho_2": 4}
    lam = {label: val for label, _, val, _ in rows}
    assert lam["rho_1"] == pytest.approx(2 * math.cos(2 * math.pi / 5))


def test_linear_character_bound_on_verified_triples():
    # |chi(U)| <= |U| for every degree-1 character of a verified class-closed triple
    G = make_dihedral(5)
    S, T = frozenset({1, 4}), frozenset({2, 3})
    U = product_if_unique(G, S, T)
    table = character_table(G)
    for chi in table.characters:
        if chi.degree == 1:
            assert abs(char_sum(table, chi, U)) <= len(U) + 1e-9
