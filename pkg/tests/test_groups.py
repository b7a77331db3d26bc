import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from cayleyfactor import (
    TableGroup,
    UnsupportedAutomorphisms,
    all_subgroups,
    apply_automorphism,
    automorphisms,
    conjugacy_classes,
    conjugate_set,
    direct_product,
    element_order,
    find_isomorphism,
    group_from_descriptor,
    group_from_spec,
    involutions,
    is_class_closed,
    is_symmetric,
    make_cyclic,
    make_dihedral,
    parse_set,
    subgroup_generated,
    symmetric_atoms,
)

SMALL_GROUPS = [
    make_cyclic(1),
    make_cyclic(5),
    make_cyclic(10),
    make_cyclic(12),
    make_dihedral(3),
    make_dihedral(4),
    make_dihedral(5),
    make_dihedral(8),
    direct_product(make_cyclic(2), make_cyclic(2)),
    direct_product(make_cyclic(2), make_cyclic(4)),
    direct_product(make_cyclic(3), make_cyclic(5)),
]


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda G: G.name)
def test_group_laws_exhaustive(G):
    n = G.order
    e = G.identity
    for a in range(n):
        assert G.mul(e, a) == a and G.mul(a, e) == a
        assert G.mul(a, G.inv(a)) == e
        for b in range(n):
            for c in range(n):
                assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


def test_make_cyclic_examples():
    assert make_cyclic(1).order == 1 and make_cyclic(1).identity == 0
    Z5 = make_cyclic(5)
    assert Z5.mul(2, 4) == 1 and Z5.inv(2) == 3
    assert make_cyclic(10).inv(5) == 5
    with pytest.raises(ValueError):
        make_cyclic(0)


def test_make_dihedral_examples():
    D10 = make_dihedral(5)
    # r * s = s r^-1 = s r^4
    assert D10.mul(D10.index(0, 1), D10.index(1, 0)) == D10.index(1, 4)
    D8 = make_dihedral(4)
    # r * sr = s
    assert D8.mul(D8.index(0, 1), D8.index(1, 1)) == D8.index(1, 0)
    for j in range(5):
        g = D10.index(1, j)
        assert D10.inv(g) == g
    with pytest.raises(ValueError):
        make_dihedral(0)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_dihedral_rotation_reflection_closure(n):
    D = make_dihedral(n)
    R = set(range(n))
    M = set(range(n, 2 * n))
    for a in range(D.order):
        for b in range(D.order):
            p = D.mul(a, b)
            if (a in R) == (b in R):
                assert p in R
            else:
                assert p in M


def test_direct_product_examples():
    V = direct_product(make_cyclic(2), make_cyclic(2))
    assert V.order == 4
    assert len(involutions(V)) == 3
    assert find_isomorphism(direct_product(make_cyclic(2), make_cyclic(5)), make_cyclic(10)) is not None
    assert find_isomorphism(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(4)) is None
    G = direct_product(make_cyclic(3), make_cyclic(5))
    assert G.mul(G.encode((1, 2)), G.encode((2, 4))) == G.encode((0, 1))


def test_conjugacy_classes():
    assert conjugacy_classes(make_cyclic(6)) == [[0], [1], [2], [3], [4], [5]]
    D10 = make_dihedral(5)
    assert conjugacy_classes(D10) == [[0], [1, 4], [2, 3], [5, 6, 7, 8, 9]]
    D8 = make_dihedral(4)
    assert conjugacy_classes(D8) == [[0], [1, 3], [2], [4, 6], [5, 7]]


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda G: G.name)
def test_classes_partition_and_lagrange(G):
    classes = conjugacy_classes(G)
    seen = [g for cls in classes for g in cls]
    assert sorted(seen) == list(range(G.order))
    for cls in classes:
        assert G.order % len(cls) == 0


def test_symmetry_predicates():
    Z5 = make_cyclic(5)
    assert is_symmetric(Z5, {1, 4})
    D10 = make_dihedral(5)
    assert not is_symmetric(D10, {1})
    assert is_class_closed(D10, {1, 4})
    assert not is_class_closed(D10, {5})
    assert is_class_closed(D10, {5, 6, 7, 8, 9})


def test_subgroup_generated():
    Z10 = make_cyclic(10)
    H = subgroup_generated(Z10, {2})
    assert H.elements == frozenset({0, 2, 4, 6, 8})
    assert H.right_coset_reps == (0, 1)
    D8 = make_dihedral(4)
    assert subgroup_generated(D8, {4, 5}).order == 8
    assert subgroup_generated(Z10, ()).elements == frozenset({0})


@pytest.mark.parametrize("G", SMALL_GROUPS, ids=lambda G: G.name)
def test_cosets_partition(G):
    for H in all_subgroups(G):
        assert G.order % H.order == 0
        covered = sorted(G.mul(h, x) for x in H.right_coset_reps for h in H.elements)
        assert covered == list(range(G.order))


def test_all_subgroups_counts():
    # cyclic groups have one subgroup per divisor
    assert len(all_subgroups(make_cyclic(12))) == 6
    # D6: trivial, <r>, three reflection subgroups, D6
    assert len(all_subgroups(make_dihedral(3))) == 6


def test_automorphism_counts():
    assert len(automorphisms(make_cyclic(5))) == 4
    assert len(automorphisms(make_dihedral(5))) == 20
    assert len(automorphisms(direct_product(make_cyclic(2), make_cyclic(2)))) == 6


@pytest.mark.parametrize("G", [make_cyclic(6), make_dihedral(3), make_dihedral(4),
                               direct_product(make_cyclic(2), make_cyclic(4))],
                         ids=lambda G: G.name)
def test_automorphisms_match_brute_force(G):
    expected = oracles.brute_automorphisms(G)
    got = sorted(a.perm for a in automorphisms(G))
    assert got == expected


def test_automorphisms_are_homomorphisms():
    for G in (make_cyclic(8), make_dihedral(5), make_dihedral(4)):
        for a in automorphisms(G):
            assert a.perm[G.identity] == G.identity
            for x in range(G.order):
                for y in range(G.order):
                    assert a.perm[G.mul(x, y)] == G.mul(a.perm[x], a.perm[y])


def test_automorphisms_unsupported():
    with pytest.raises(UnsupportedAutomorphisms):
        automorphisms(make_dihedral(8))  # even n, order 16


def test_apply_and_conjugate():
    Z5 = make_cyclic(5)
    u2 = next(a for a in automorphisms(Z5) if a.perm[1] == 2)
    assert apply_automorphism(u2, {1, 4}) == frozenset({2, 3})
    u1 = next(a for a in automorphisms(Z5) if a.perm[1] == 1)
    assert apply_automorphism(u1, {1, 4}) == frozenset({1, 4})
    D10 = make_dihedral(5)
    assert conjugate_set(D10, 5, {1, 4}) == frozenset({1, 4})  # s r^k s = r^-k
    assert conjugate_set(D10, D10.identity, {1, 7}) == frozenset({1, 7})


def test_element_order_and_atoms():
    D8 = make_dihedral(4)
    assert element_order(D8, 1) == 4
    assert element_order(D8, 4) == 2
    for G in SMALL_GROUPS:
        atoms = symmetric_atoms(G)
        flattened = sorted(g for atom in atoms for g in atom)
        assert flattened == [g for g in range(G.order) if g != G.identity]
        for atom in atoms:
            assert frozenset(G.inv(g) for g in atom) == frozenset(atom)


def test_dihedral_literals_roundtrip():
    D10 = make_dihedral(5)
    for g in range(D10.order):
        assert D10.element_from_str(D10.element_str(g)) == g
    assert D10.element_from_str("s") == 5
    assert D10.element_from_str("r^-1") == 4
    assert parse_set(D10, "r,r^4") == frozenset({1, 4})
    with pytest.raises(ValueError):
        D10.element_from_str("q^2")


def test_product_literals_roundtrip():
    G = direct_product(make_cyclic(2), make_cyclic(5))
    for g in range(G.order):
        assert G.element_from_str(G.element_str(g)) == g
    assert parse_set(G, "[1,0],[0,1]") == frozenset({G.encode((1, 0)), G.encode((0, 1))})


def test_group_descriptors():
    for spec in ("cyclic:10", "dihedral:5", '{"kind":"product","parts":[{"kind":"cyclic","n":2},{"kind":"cyclic","n":3}]}'):
        G = group_from_spec(spec)
        assert group_from_descriptor(G.descriptor()).order == G.order
    with pytest.raises(ValueError):
        group_from_spec("frobnicate:9")
    with pytest.raises(ValueError):
        group_from_descriptor({"kind": "simple"})


def test_table_group_validation():
    Z3 = make_cyclic(3)
    T = TableGroup(Z3.mul_table)
    assert T.order == 3 and T.identity == 0
    with pytest.raises(ValueError):
        TableGroup([[0, 1], [1, 1]])  # not a Latin square
    with pytest.raises(ValueError):
        TableGroup([[1, 0], [1, 0]])


@given(st.integers(2, 12), st.data())
def test_relabeling_preserves_structure(n, data):
    """An isomorphic relabeling of Z_n leaves all structure intact."""
    import random as _random

    G = make_cyclic(n)
    seed = data.draw(st.integers(0, 10**6))
    rng = _random.Random(seed)
    perm = list(range(n))
    rng.shuffle(perm)
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            table[perm[a]][perm[b]] = perm[G.mul(a, b)]
    H = TableGroup(table)
    assert H.identity == perm[0]
    X = data.draw(st.sets(st.integers(0, n - 1), max_size=n))
    image = {perm[x] for x in X}
    assert is_symmetric(G, X) == is_symmetric(H, image)
    assert sorted(len(c) for c in conjugacy_classes(G)) == sorted(
        len(c) for c in conjugacy_classes(H)
    )


def test_find_isomorphism_is_isomorphism():
    G = direct_product(make_cyclic(2), make_cyclic(5))
    H = make_cyclic(10)
    phi = find_isomorphism(G, H)
    assert phi is not None
    assert sorted(phi) == list(range(10))
    for a in range(10):
        for b in range(10):
            assert phi[G.mul(a, b)] == H.mul(phi[a], phi[b])
