"""Exact verification engine for Cayley-graph matrix factorizations.

Everything here is integer arithmetic: a triple (S, T, U) is accepted
exactly when the representation counts N(g) = #{(s,t) in SxT : st = g}
form the 0/1 indicator of U, with S, T, U symmetric and identity-free.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from .groups import (
    Automorphism,
    ElementSet,
    FiniteGroup,
    Subgroup,
    as_element_set,
    conjugate_set,
)

RepCounts = tuple[int, ...]


class TheoremViolation(RuntimeError):
    """A proved identity failed on concrete data; signals an implementation bug."""


def rep_counts(G: FiniteGroup, S, T) -> RepCounts:
    """N(g) = number of pairs (s, t) in S x T with s*t = g, for every g."""
    S = as_element_set(G, S)
    T = as_element_set(G, T)
    counts = [0] * G.order
    if G.mul_table is not None:
        for s in S:
            row = G.mul_table[s]
            for t in T:
                counts[row[t]] += 1
    else:
        for s in S:
            for t in T:
                counts[G.mul(s, t)] += 1
    return tuple(counts)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verify_triple; `reason`/`element` describe the first violation."""

    ok: bool
    reason: str | None = None
    element: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _first_asymmetric(G: FiniteGroup, X: ElementSet) -> int | None:
    for g in sorted(X):
        if G.inv(g) not in X:
            return g
    return None


def verify_triple(G: FiniteGroup, S, T, U) -> VerificationReport:
    """Check that (S, T, U) is a factorable triple in G.

    Reports the first violation: a non-symmetric set, the identity inside a
    set, the identity realized as a product, a duplicated product, a product
    landing outside U, or an element of U never realized.
    """
    S = as_element_set(G, S)
    T = as_element_set(G, T)
    U = as_element_set(G, U)
    e = G.identity
    for label, X in (("S", S), ("T", T), ("U", U)):
        bad = _first_asymmetric(G, X)
        if bad is not None:
            return VerificationReport(False, f"{label} not symmetric", bad)
        if e in X:
            return VerificationReport(False, f"identity in {label}", e)
    counts = rep_counts(G, S, T)
    if counts[e] > 0:
        return VerificationReport(False, "identity in ST", e)
    for g in range(G.order):
        if g == e:
            continue
        c = counts[g]
        if c > 1:
            return VerificationReport(False, "duplicate product in ST", g)
        if c == 1 and g not in U:
            return VerificationReport(False, "product outside U", g)
        if c == 0 and g in U:
            return VerificationReport(False, "element of U not realized", g)
    if len(U) != len(S) * len(T) or (S & T):
        raise TheoremViolation("size law |U| = |S||T| with disjoint S, T failed on a verified triple")
    return VerificationReport(True)


def product_if_unique(G: FiniteGroup, S, T) -> ElementSet | None:
    """ST when every product is unique and avoids the identity, else None."""
    counts = rep_counts(G, S, T)
    if counts[G.identity] > 0 or any(c > 1 for c in counts):
        return None
    return frozenset(g for g, c in enumerate(counts) if c == 1)


@dataclass(frozen=True)
class FactorTriple:
    group: FiniteGroup
    S: ElementSet
    T: ElementSet
    U: ElementSet
    verified: bool

    @classmethod
    def build(cls, G: FiniteGroup, S, T, U) -> "FactorTriple":
        S = as_element_set(G, S)
        T = as_element_set(G, T)
        U = as_element_set(G, U)
        return cls(G, S, T, U, bool(verify_triple(G, S, T, U)))

    def key(self) -> tuple:
        return (len(self.S),) + self.sets_key()

    def sets_key(self) -> tuple:
        return (tuple(sorted(self.S)), tuple(sorted(self.T)), tuple(sorted(self.U)))


def require_verified(t: FactorTriple) -> None:
    if not t.verified:
        raise ValueError("operation requires a verified factor triple")


# --- adjacency matrices -------------------------------------------------

_adjacency_cache: "weakref.WeakKeyDictionary[FiniteGroup, dict[ElementSet, np.ndarray]]" = (
    weakref.WeakKeyDictionary()
)


def adjacency(G: FiniteGroup, X) -> np.ndarray:
    """Cayley adjacency matrix: entry (i, j) = 1 iff inv(i)*j in X.

    Cached per group; the returned array is read-only.
    """
    X = as_element_set(G, X)
    per_group = _adjacency_cache.setdefault(G, {})
    A = per_group.get(X)
    if A is None:
        n = G.order
        A = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for x in X:
                A[i, G.mul(i, x)] = 1
        A.setflags(write=False)
        per_group[X] = A
    return A


def matrix_cross_check(G: FiniteGroup, S, T, U) -> bool:
    """A(G;U) == A(G;S) A(G;T) by exact integer matrix multiplication.

    Each matrix must also be a simple undirected adjacency (symmetric with
    zero diagonal), the matrix-level face of "symmetric identity-free set";
    with that, this agrees with verify_triple on every input.
    """
    mats = [adjacency(G, X) for X in (S, T, U)]
    for A in mats:
        if (np.diag(A) != 0).any() or (A != A.T).any():
            return False
    return bool((mats[0] @ mats[1] == mats[2]).all())


# --- stability transforms ----------------------------------------------


def transform_triple(t: FactorTriple, a: Automorphism | int) -> FactorTriple:
    """Image of a verified triple under an automorphism or a conjugation."""
    require_verified(t)
    G = t.group
    if isinstance(a, Automorphism):
        if a.group is not G:
            raise ValueError("automorphism belongs to a different group")
        image = [a.apply(X) for X in (t.S, t.T, t.U)]
    else:
        image = [conjugate_set(G, a, X) for X in (t.S, t.T, t.U)]
    out = FactorTriple.build(G, *image)
    if not out.verified:
        raise TheoremViolation("stability transform produced an unverified triple")
    return out


# --- coset-counting identity --------------------------------------------


def find_transversal_violation(G: FiniteGroup, H: Subgroup, S, T, U) -> int | None:
    """First left-coset representative y violating the coset-counting identity."""
    S = as_element_set(G, S)
    T = as_element_set(G, T)
    U = as_element_set(G, U)
    helems = H.elements
    right = {x: frozenset(G.mul(h, x) for h in helems) for x in H.right_coset_reps}
    s_in_right = {x: len(S & hx) for x, hx in right.items()}

    def left_coset(z: int) -> frozenset:
        return frozenset(G.mul(z, h) for h in helems)

    covered = [False] * G.order
    for y in range(G.order):
        if covered[y]:
            continue
        yH = left_coset(y)
        for g in yH:
            covered[g] = True
        lhs = len(U & yH)
        rhs = 0
        for x in H.right_coset_reps:
            cnt = s_in_right[x]
            if cnt:
                rhs += cnt * len(T & left_coset(G.mul(G.inv(x), y)))
        if lhs != rhs:
            return y
    return None


def transversal_identity(G: FiniteGroup, H: Subgroup, S, T, U) -> bool:
    """|U * yH| = sum over right cosets Hx of |S * Hx| |T * x^-1 yH|, all y."""
    return find_transversal_violation(G, H, S, T, U) is None


# --- parity and near-factorizations --------------------------------------


def involution_count(G: FiniteGroup, X) -> int:
    X = as_element_set(G, X)
    e = G.identity
    return sum(1 for g in X if g != e and G.mul(g, g) == e)


def parity_check(t: FactorTriple) -> bool | None:
    """For |G| = 2 (mod 4): U must hold an even number of involutions.

    Returns None ("not applicable") for other group orders.
    """
    if t.group.order % 4 != 2:
        return None
    return involution_count(t.group, t.U) % 2 == 0


def is_near_factorization(G: FiniteGroup, S, T) -> bool:
    """True when ST covers G minus the identity with unique products."""
    U = product_if_unique(G, S, T)
    if U is None or not U:
        return False
    return U == frozenset(range(G.order)) - {G.identity}


# --- JSON -----------------------------------------------------------------


def triple_to_json(t: FactorTriple) -> dict:
    from .groups import set_to_json

    G = t.group
    return {
        "group": G.descriptor(),
        "S": set_to_json(G, t.S),
        "T": set_to_json(G, t.T),
        "U": set_to_json(G, t.U),
        "verified": t.verified,
    }


def triple_from_json(data: dict, group: FiniteGroup | None = None) -> FactorTriple:
    from .groups import group_from_descriptor, set_from_json

    G = group if group is not None else group_from_descriptor(data["group"])
    return FactorTriple.build(
        G,
        set_from_json(G, data["S"]),
        set_from_json(G, data["T"]),
        set_from_json(G, data["U"]),
    )
