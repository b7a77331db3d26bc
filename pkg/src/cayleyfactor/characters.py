"""Character tables for cyclic, product-of-cyclic, and dihedral groups.

Supports the character-theoretic factorization criterion for class-closed
sets and the closed-form Cayley spectrum lambda_X(chi) = chi(X)/chi(1).
Character values are complex doubles; the exact combinatorial verifier
remains the source of truth.
"""

from __future__ import annotations

import cmath
import weakref
from dataclasses import dataclass
from typing import Iterable

from .groups import (
    CyclicGroup,
    DihedralGroup,
    ElementSet,
    FiniteGroup,
    ProductGroup,
    as_element_set,
    conjugacy_classes,
    is_symmetric,
)

CRITERION_TOL = 1e-6


@dataclass(frozen=True)
class Character:
    label: str
    degree: int
    values_by_class: tuple[complex, ...]


@dataclass(frozen=True)
class CharacterTable:
    group: FiniteGroup
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    characters: tuple[Character, ...]

    def value(self, chi: Character, g: int) -> complex:
        return chi.values_by_class[self.class_of[g]]


_table_cache: "weakref.WeakKeyDictionary[FiniteGroup, CharacterTable]" = weakref.WeakKeyDictionary()


def _cyclic_leaf_moduli(G: FiniteGroup) -> list[int]:
    if isinstance(G, CyclicGroup):
        return [G.n]
    if isinstance(G, ProductGroup):
        out: list[int] = []
        for p in G.parts:
            out.extend(_cyclic_leaf_moduli(p))
        return out
    raise ValueError(f"character table unsupported for {G.name} (need cyclic, product of cyclic, or dihedral)")


def _flat_coords(G: FiniteGroup, g: int) -> list[int]:
    if isinstance(G, CyclicGroup):
        return [g]
    assert isinstance(G, ProductGroup)
    out: list[int] = []
    for p, a in zip(G.parts, G.decode(g)):
        out.extend(_flat_coords(p, a))
    return out


def _abelian_table(G: FiniteGroup) -> CharacterTable:
    moduli = _cyclic_leaf_moduli(G)
    n = G.order
    classes = tuple((g,) for g in range(n))
    class_of = tuple(range(n))
    coords = [_flat_coords(G, g) for g in range(n)]
    chars = []
    for k in range(n):
        kc = coords[k]
        values = tuple(
            cmath.exp(2j * cmath.pi * sum(ki * xi / m for ki, xi, m in zip(kc, coords[g], moduli)))
            for g in range(n)
        )
        chars.append(Character(f"chi_{k}", 1, values))
    return CharacterTable(G, classes, class_of, tuple(chars))


def _dihedral_table(G: DihedralGroup) -> CharacterTable:
    n = G.n
    classes = tuple(tuple(c) for c in conjugacy_classes(G))
    class_of = [0] * G.order
    for ci, cls in enumerate(classes):
        for g in cls:
            class_of[g] = ci

    def by_class(f) -> tuple[complex, ...]:
        return tuple(complex(f(cls[0])) for cls in classes)

    chars = [Character("triv", 1, by_class(lambda g: 1))]
    chars.append(Character("sgn", 1, by_class(lambda g: -1 if g >= n else 1)))
    if n % 2 == 0:
        chars.append(Character("alt", 1, by_class(lambda g: (-1) ** (g % n))))
        chars.append(Character("alt_sgn", 1, by_class(lambda g: (-1) ** (g % n + g // n))))
    for h in range(1, (n + 1) // 2):
        chars.append(
            Character(
                f"rho_{h}",
                2,
                by_class(lambda g, h=h: 2 * cmath.cos(2 * cmath.pi * h * (g % n) / n) if g < n else 0),
            )
        )
    return CharacterTable(G, classes, tuple(class_of), tuple(chars))


def character_table(G: FiniteGroup) -> CharacterTable:
    """Irreducible characters, memoized per group."""
    table = _table_cache.get(G)
    if table is None:
        if isinstance(G, DihedralGroup):
            table = _dihedral_table(G)
        else:
            table = _abelian_table(G)
        assert sum(c.degree**2 for c in table.characters) == G.order
        _table_cache[G] = table
    return table


def char_sum(table: CharacterTable, chi: Character, X: Iterable[int]) -> complex:
    """chi(X) = sum of chi over the elements of X."""
    X = as_element_set(table.group, X)
    return sum((table.value(chi, g) for g in X), complex(0))


def _require_class_closed(G: FiniteGroup, label: str, X: ElementSet) -> None:
    for cls in conjugacy_classes(G):
        inside = [g for g in cls if g in X]
        if inside and len(inside) != len(cls):
            missing = next(g for g in cls if g not in X)
            raise ValueError(f"{label} is not class-closed (misses {G.element_str(missing)})")


def character_products(G: FiniteGroup, S, T, U) -> list[tuple[str, complex, complex, complex, float]]:
    """Per-character rows (label, chi(S), chi(T), chi(U), residual) for the criterion."""
    S = as_element_set(G, S)
    T = as_element_set(G, T)
    U = as_element_set(G, U)
    for label, X in (("S", S), ("T", T), ("U", U)):
        if G.identity in X:
            raise ValueError(f"{label} contains the identity")
        if not is_symmetric(G, X):
            raise ValueError(f"{label} is not symmetric")
        _require_class_closed(G, label, X)
    table = character_table(G)
    rows = []
    for chi in table.characters:
        cs = char_sum(table, chi, S)
        ct = char_sum(table, chi, T)
        cu = char_sum(table, chi, U)
        residual = abs(cu * chi.degree - cs * ct)
        rows.append((chi.label, cs, ct, cu, residual))
    return rows


def criterion_check(G: FiniteGroup, S, T, U, tol: float = CRITERION_TOL) -> bool:
    """chi(U) chi(1) = chi(S) chi(T) for every irreducible chi, within tol.

    Requires S, T, U symmetric, identity-free and class-closed; on those
    inputs this agrees with the exact combinatorial verifier.
    """
    return all(residual <= tol for *_, residual in character_products(G, S, T, U))


def cayley_eigenvalue_rows(G: FiniteGroup, X) -> list[tuple[str, int, complex, int]]:
    """(label, degree, eigenvalue chi(X)/chi(1), multiplicity chi(1)^2) per character."""
    X = as_element_set(G, X)
    _require_class_closed(G, "X", X)
    table = character_table(G)
    rows = []
    for chi in table.characters:
        lam = char_sum(table, chi, X) / chi.degree
        rows.append((chi.label, chi.degree, lam, chi.degree**2))
    return rows


def cayley_eigenvalues(G: FiniteGroup, X) -> list[complex]:
    """Spectrum of A(G;X) for class-closed X, with multiplicities, sorted."""
    out: list[complex] = []
    for _, _, lam, mult in cayley_eigenvalue_rows(G, X):
        out.extend([lam] * mult)
    return sorted(out, key=lambda z: (z.real, z.imag))
