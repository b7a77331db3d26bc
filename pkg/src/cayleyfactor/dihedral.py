"""Dihedral-specific structure and the cyclic-to-dihedral transfer.

Covers the rotation/reflection decomposition of factorizations, strong
symmetry, the Pecher set bijection Z_2n -> D_2n (odd n) with its transfer
of factorizations in both directions, the dihedral construction families,
involution-equivalence, and automorphism-orbit classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .factor import (
    FactorTriple,
    TheoremViolation,
    require_verified,
    verify_triple,
)
from .groups import (
    Automorphism,
    CyclicGroup,
    DihedralGroup,
    ElementSet,
    FiniteGroup,
    as_element_set,
    automorphisms,
    conjugate_set,
    make_cyclic,
    make_dihedral,
    multiply_sets,
)


class PreimageNotSymmetric(ValueError):
    """The inverse Pecher image of a dihedral set is not symmetric in Z_2n."""


def _require_dihedral(G: FiniteGroup) -> DihedralGroup:
    if not isinstance(G, DihedralGroup):
        raise ValueError(f"operation needs a dihedral group, got {G.name}")
    return G


@dataclass(frozen=True)
class DihedralSplit:
    rotations: ElementSet
    reflections: ElementSet


def split_RM(G: FiniteGroup, X: Iterable[int]) -> DihedralSplit:
    """Partition X into its rotation part and reflection part."""
    D = _require_dihedral(G)
    X = as_element_set(D, X)
    return DihedralSplit(
        frozenset(g for g in X if D.is_rotation(g)),
        frozenset(g for g in X if not D.is_rotation(g)),
    )


def ur_um_decomposition(
    t: FactorTriple,
) -> tuple[tuple[ElementSet, ElementSet], tuple[ElementSet, ElementSet]]:
    """((S_R T_R, S_M T_M), (S_R T_M, S_M T_R)) with the disjoint-union laws checked.

    For a verified dihedral triple, U's rotations are S_R T_R disjoint-union
    S_M T_M and U's reflections are S_R T_M disjoint-union S_M T_R.
    """
    require_verified(t)
    D = _require_dihedral(t.group)
    s = split_RM(D, t.S)
    tt = split_RM(D, t.T)
    u = split_RM(D, t.U)
    rr = multiply_sets(D, s.rotations, tt.rotations)
    mm = multiply_sets(D, s.reflections, tt.reflections)
    rm = multiply_sets(D, s.rotations, tt.reflections)
    mr = multiply_sets(D, s.reflections, tt.rotations)
    if rr & mm or (rr | mm) != u.rotations:
        raise TheoremViolation("rotation part of U is not the disjoint union S_R T_R + S_M T_M")
    if rm & mr or (rm | mr) != u.reflections:
        raise TheoremViolation("reflection part of U is not the disjoint union S_R T_M + S_M T_R")
    return (rr, mm), (rm, mr)


def is_strongly_symmetric(G: FiniteGroup, X: Iterable[int]) -> bool:
    """Rotation part and reflection part are each closed under r^j -> r^-j."""
    D = _require_dihedral(G)
    X = as_element_set(D, X)
    n = D.n
    for g in X:
        i, j = D.pair(g)
        if D.index(i, -j % n) not in X:
            return False
    return True


# --- Pecher correspondence -------------------------------------------------


@dataclass(frozen=True)
class PecherCorrespondence:
    """Set bijection Z_2n -> D_2n (odd n) through x -> (x mod 2, x mod n) -> s^i r^j."""

    n: int
    cyclic: CyclicGroup
    dihedral: DihedralGroup
    forward_perm: tuple[int, ...]
    inverse_perm: tuple[int, ...]


def pecher_correspondence(n: int) -> PecherCorrespondence:
    if n < 3 or n % 2 == 0:
        raise ValueError("Pecher correspondence needs odd n >= 3")
    cyc = make_cyclic(2 * n)
    dih = make_dihedral(n)
    forward = [0] * (2 * n)
    for x in range(2 * n):
        forward[x] = dih.index(x % 2, x % n)
    inverse = [0] * (2 * n)
    for x, y in enumerate(forward):
        inverse[y] = x
    return PecherCorrespondence(n, cyc, dih, tuple(forward), tuple(inverse))


def pecher_forward(pc: PecherCorrespondence, X: Iterable[int]) -> ElementSet:
    X = as_element_set(pc.cyclic, X)
    return frozenset(pc.forward_perm[x] for x in X)


def pecher_inverse(pc: PecherCorrespondence, X: Iterable[int]) -> ElementSet:
    X = as_element_set(pc.dihedral, X)
    return frozenset(pc.inverse_perm[x] for x in X)


def _check_cyclic_triple(pc: PecherCorrespondence, t: FactorTriple) -> None:
    if not isinstance(t.group, CyclicGroup) or t.group.order != 2 * pc.n:
        raise ValueError(f"triple must live in Z_{2 * pc.n}")


def _check_dihedral_triple(pc: PecherCorrespondence, t: FactorTriple) -> None:
    if not isinstance(t.group, DihedralGroup) or t.group.n != pc.n:
        raise ValueError(f"triple must live in D_{2 * pc.n}")


def transfer_forward(pc: PecherCorrespondence, t: FactorTriple) -> FactorTriple:
    """Push a verified Z_2n triple to a verified, strongly symmetric D_2n triple."""
    _check_cyclic_triple(pc, t)
    require_verified(t)
    images = [pecher_forward(pc, X) for X in (t.S, t.T, t.U)]
    out = FactorTriple.build(pc.dihedral, *images)
    if not out.verified:
        raise TheoremViolation("forward Pecher transfer produced an unverified triple")
    for X in images:
        if not is_strongly_symmetric(pc.dihedral, X):
            raise TheoremViolation("forward Pecher image of a symmetric set is not strongly symmetric")
    return out


def transfer_backward(pc: PecherCorrespondence, t: FactorTriple) -> FactorTriple:
    """Pull a verified D_2n triple back to Z_2n.

    The unique-product property always transfers; symmetry of the preimage
    is checked and PreimageNotSymmetric raised when it fails (the theorem
    needs strong symmetry of the dihedral sets for that part).
    """
    _check_dihedral_triple(pc, t)
    require_verified(t)
    pre = [pecher_inverse(pc, X) for X in (t.S, t.T, t.U)]
    cyc = pc.cyclic
    for label, X in zip(("S", "T", "U"), pre):
        if any(cyc.inv(x) not in X for x in X):
            raise PreimageNotSymmetric(f"inverse Pecher image of {label} is not symmetric in Z_{2 * pc.n}")
    out = FactorTriple.build(cyc, *pre)
    if not out.verified:
        raise TheoremViolation("backward Pecher transfer produced an unverified triple")
    return out


def pullback_equivalence_condition(t: FactorTriple) -> bool:
    """gcd(n, (|S|+1)/2) = gcd(n, (|T|+1)/2) = 1, the hypothesis under which
    dihedral equivalence pulls back to a cyclic multiplier equivalence."""
    D = _require_dihedral(t.group)
    k, ell = len(t.S), len(t.T)
    if k % 2 == 0 or ell % 2 == 0:
        return False
    return math.gcd(D.n, (k + 1) // 2) == 1 and math.gcd(D.n, (ell + 1) // 2) == 1


# --- dihedral construction families ----------------------------------------


def table2_family(row: int, n: int, **params) -> FactorTriple:
    """Construct one of the eight dihedral family rows and verify it.

    Parameters by row: 4 -> m, u; 7 -> u, a (a defaults to 0);
    8 -> m, a, us (list of rotation offsets, a defaults to 0).
    """
    if n < 3:
        raise ValueError(f"row {row}: needs n >= 3")
    D = make_dihedral(n)
    rot = lambda j: D.index(0, j)
    refl = lambda j: D.index(1, j)

    def pm(make, xs):
        return frozenset(make(v) for x in xs for v in (x, -x))

    if row == 1:
        if n % 2 == 0:
            raise ValueError("row 1: needs odd n")
        S, T, U = frozenset({refl(0)}), pm(rot, [1]), pm(refl, [1])
    elif row == 2:
        S = frozenset({refl(0)})
        T = pm(refl, [1]) | pm(rot, [1])
        U = pm(rot, [1]) | pm(refl, [1])
    elif row == 3:
        S = frozenset({refl(0)})
        T = frozenset(rot(-k) for k in range(1, n))
        U = frozenset(refl(k) for k in range(1, n))
    elif row == 4:
        m, u = params["m"], params["u"]
        if math.gcd(m, n) != 1:
            raise ValueError(f"row 4: gcd(m, n) must be 1, got m={m}, n={n}")
        if u % n == 0:
            raise ValueError("row 4: u must be nonzero mod n")
        S = frozenset({refl(0)})
        T = pm(refl, [m]) | pm(rot, [u])
        U = pm(rot, [m]) | pm(refl, [u])
    elif row == 5:
        if n % 2 != 0:
            raise ValueError("row 5: needs even n")
        S = frozenset({refl(0)})
        T = frozenset(rot(k) for k in range(1, n, 2)) | pm(refl, [1])
        U = frozenset(refl(k) for k in range(1, n, 2)) | pm(rot, [1])
    elif row == 6:
        S = frozenset({refl(0)})
        T = pm(refl, [1]) | pm(rot, [2])
        U = pm(rot, [1]) | pm(refl, [2])
    elif row == 7:
        u = params["u"]
        a = params.get("a", 0)
        if n % 2 == 0:
            raise ValueError("row 7: needs odd n")
        if math.gcd(u, n) != 1:
            raise ValueError(f"row 7: gcd(u, n) must be 1, got u={u}, n={n}")
        S = frozenset({refl(a)})
        T = pm(rot, [u])
        U = frozenset({refl(a + u), refl(a - u)})
    elif row == 8:
        m = params["m"]
        a = params.get("a", 0)
        us = list(params.get("us", ()))
        if math.gcd(m, n) != 1:
            raise ValueError(f"row 8: gcd(m, n) must be 1, got m={m}, n={n}")
        for ui in us:
            if ui % n == 0:
                raise ValueError("row 8: offsets u_i must be nonzero mod n")
        S = frozenset({refl(a)})
        T = frozenset({refl(a - m), refl(a + m)}) | pm(rot, us)
        U = pm(rot, [m]) | frozenset(refl(a + ui) for ui in us) | frozenset(refl(a - ui) for ui in us)
    else:
        raise ValueError(f"unknown dihedral family row {row}; rows are 1..8")

    report = verify_triple(D, S, T, U)
    if not report:
        raise ValueError(
            f"row {row} with n={n} failed verification: {report.reason}"
            f" at {D.element_str(report.element)}"
        )
    return FactorTriple(D, S, T, U, True)


# --- involution equivalence -------------------------------------------------


def involution_equivalent(t: FactorTriple, x: int) -> FactorTriple:
    """The involution-equivalent triple (Sx, xT, U) for a suitable involution x.

    Preconditions (each reported separately): x is an involution outside
    S and T, and conjugation by x fixes S and T setwise.
    """
    require_verified(t)
    G = t.group
    if x == G.identity or G.mul(x, x) != G.identity:
        raise ValueError(f"{G.element_str(x)} is not an involution")
    if x in t.S:
        raise ValueError(f"involution {G.element_str(x)} lies in S")
    if x in t.T:
        raise ValueError(f"involution {G.element_str(x)} lies in T")
    if conjugate_set(G, x, t.S) != t.S:
        raise ValueError(f"conjugation by {G.element_str(x)} does not fix S")
    if conjugate_set(G, x, t.T) != t.T:
        raise ValueError(f"conjugation by {G.element_str(x)} does not fix T")
    Sx = frozenset(G.mul(s, x) for s in t.S)
    xT = frozenset(G.mul(x, w) for w in t.T)
    out = FactorTriple.build(G, Sx, xT, t.U)
    if not out.verified:
        raise TheoremViolation("involution-equivalent triple failed verification")
    return out


# --- equivalence under Aut(G) ------------------------------------------------


def _image_key(t: FactorTriple, a: Automorphism) -> tuple:
    return (
        tuple(sorted(a.apply(t.S))),
        tuple(sorted(a.apply(t.T))),
        tuple(sorted(a.apply(t.U))),
    )


def are_equivalent(t1: FactorTriple, t2: FactorTriple, G: FiniteGroup | None = None) -> bool:
    """True when some automorphism maps (S1,T1,U1) onto (S2,T2,U2) componentwise."""
    G = G if G is not None else t1.group
    if t1.group is not G or t2.group is not G:
        raise ValueError("both triples must live in the given group")
    target = t2.sets_key()
    return any(_image_key(t1, a) == target for a in automorphisms(G))


def canonical_triple(t: FactorTriple, auts: Sequence[Automorphism] | None = None) -> FactorTriple:
    """Lexicographically least automorphism image; canonical orbit representative."""
    auts = automorphisms(t.group) if auts is None else auts
    best = min(auts, key=lambda a: _image_key(t, a))
    return FactorTriple.build(t.group, best.apply(t.S), best.apply(t.T), best.apply(t.U))


def equivalence_classes(
    triples: Iterable[FactorTriple], G: FiniteGroup
) -> list[list[FactorTriple]]:
    """Partition triples into Aut(G)-orbits, each sorted, ordered by canonical key."""
    auts = automorphisms(G)
    orbits: dict[tuple, list[FactorTriple]] = {}
    for t in triples:
        if t.group is not G:
            raise ValueError("all triples must live in the given group")
        key = min(_image_key(t, a) for a in auts)
        orbits.setdefault(key, []).append(t)
    out = []
    for key in sorted(orbits):
        members = sorted(orbits[key], key=FactorTriple.sets_key)
        out.append(members)
    return out
