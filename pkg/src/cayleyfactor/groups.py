"""Finite-group arithmetic with dense 0-based element indices.

Groups expose ``mul``/``inv`` on indices ``0..order-1``.  The full product
table is materialized up to ``TABLE_LIMIT``; above that, structured groups
(cyclic, dihedral, product) compute products on the fly.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

TABLE_LIMIT = 1024
EXHAUSTIVE_CHECK_LIMIT = 256
GENERIC_AUT_LIMIT = 12

ElementSet = frozenset[int]


class UnsupportedAutomorphisms(ValueError):
    """Automorphism enumeration is not implemented for this group."""


class FiniteGroup:
    """Base class for finite groups on elements ``0..order-1``."""

    def __init__(self, order: int, name: str) -> None:
        if order <= 0:
            raise ValueError(f"group order must be positive, got {order}")
        self.order = order
        self.name = name
        self.identity = 0
        self.mul_table: list[list[int]] | None = None
        self.inv_table: list[int] | None = None

    def _structured_mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def _structured_inv(self, a: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        return self._structured_mul(a, b)

    def inv(self, a: int) -> int:
        if self.inv_table is not None:
            return self.inv_table[a]
        return self._structured_inv(a)

    def elements(self) -> range:
        return range(self.order)

    def _finish(self) -> None:
        n = self.order
        if n <= TABLE_LIMIT:
            if self.mul_table is None:
                self.mul_table = [
                    [self._structured_mul(a, b) for b in range(n)] for a in range(n)
                ]
            if self.inv_table is None:
                self.inv_table = [self._structured_inv(a) for a in range(n)]
        _validate(self)

    # --- element I/O -------------------------------------------------

    def element_str(self, g: int) -> str:
        return str(g)

    def element_from_str(self, token: str) -> int:
        try:
            value = int(token)
        except ValueError:
            raise ValueError(f"malformed element literal {token!r} for {self.name}") from None
        return self.element_from_json(value)

    def element_to_json(self, g: int) -> object:
        return g

    def element_from_json(self, value: object) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"malformed element literal {value!r} for {self.name}")
        if not 0 <= value < self.order:
            raise ValueError(f"element index {value} out of range for {self.name}")
        return value

    def descriptor(self) -> dict:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} order={self.order}>"


class CyclicGroup(FiniteGroup):
    """Z_n under addition; element ``i`` is the residue ``i``."""

    def __init__(self, n: int) -> None:
        super().__init__(n, f"Z{n}")
        self.n = n
        self._finish()

    def _structured_mul(self, a: int, b: int) -> int:
        return (a + b) % self.n

    def _structured_inv(self, a: int) -> int:
        return (-a) % self.n

    def element_from_json(self, value: object) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"malformed element literal {value!r} for {self.name}")
        return value % self.n

    def descriptor(self) -> dict:
        return {"kind": "cyclic", "n": self.n}


class DihedralGroup(FiniteGroup):
    """D_{2n} = <r, s | r^n = s^2 = e, srs = r^-1>.

    Element (i, j) meaning s^i r^j has index ``i*n + j``; products follow
    s^i r^j . s^i' r^j' = s^(i+i') r^((-1)^i' j + j').
    """

    def __init__(self, n: int) -> None:
        super().__init__(2 * n, f"D{2 * n}")
        self.n = n
        self._finish()

    def pair(self, g: int) -> tuple[int, int]:
        return divmod(g, self.n)

    def index(self, i: int, j: int) -> int:
        return (i % 2) * self.n + (j % self.n)

    def _structured_mul(self, a: int, b: int) -> int:
        i, j = divmod(a, self.n)
        i2, j2 = divmod(b, self.n)
        j3 = (j2 - j) % self.n if i2 else (j + j2) % self.n
        return ((i + i2) % 2) * self.n + j3

    def _structured_inv(self, a: int) -> int:
        i, j = divmod(a, self.n)
        return a if i else (-j) % self.n

    def is_rotation(self, g: int) -> bool:
        return g < self.n

    def element_str(self, g: int) -> str:
        i, j = divmod(g, self.n)
        if i == 0:
            return "e" if j == 0 else ("r" if j == 1 else f"r^{j}")
        return "s" if j == 0 else ("sr" if j == 1 else f"sr^{j}")

    def element_from_str(self, token: str) -> int:
        t = token.strip()
        if t == "e":
            return 0
        if t == "s":
            return self.n
        body, i = (t[1:], 1) if t.startswith("s") else (t, 0)
        if body == "r":
            return self.index(i, 1)
        if body.startswith("r^"):
            try:
                j = int(body[2:])
            except ValueError:
                raise ValueError(f"malformed element literal {token!r} for {self.name}") from None
            return self.index(i, j)
        raise ValueError(f"malformed element literal {token!r} for {self.name}")

    def element_to_json(self, g: int) -> object:
        return self.element_str(g)

    def element_from_json(self, value: object) -> int:
        if isinstance(value, str):
            return self.element_from_str(value)
        raise ValueError(f"malformed element literal {value!r} for {self.name}")

    def descriptor(self) -> dict:
        return {"kind": "dihedral", "n": self.n}


class ProductGroup(FiniteGroup):
    """Direct product with componentwise multiplication, mixed-radix indices."""

    def __init__(self, parts: Sequence[FiniteGroup]) -> None:
        if len(parts) < 2:
            raise ValueError("product group needs at least two factors")
        order = math.prod(p.order for p in parts)
        super().__init__(order, "x".join(p.name for p in parts))
        self.parts = tuple(parts)
        self._finish()

    def decode(self, g: int) -> tuple[int, ...]:
        out = []
        for p in reversed(self.parts):
            g, a = divmod(g, p.order)
            out.append(a)
        return tuple(reversed(out))

    def encode(self, coords: Sequence[int]) -> int:
        g = 0
        for p, a in zip(self.parts, coords):
            g = g * p.order + a
        return g

    def _structured_mul(self, a: int, b: int) -> int:
        xs, ys = self.decode(a), self.decode(b)
        return self.encode([p.mul(x, y) for p, x, y in zip(self.parts, xs, ys)])

    def _structured_inv(self, a: int) -> int:
        return self.encode([p.inv(x) for p, x in zip(self.parts, self.decode(a))])

    def element_str(self, g: int) -> str:
        return json.dumps(self.element_to_json(g), separators=(",", ":"))

    def element_from_str(self, token: str) -> int:
        try:
            value = json.loads(token)
        except json.JSONDecodeError:
            raise ValueError(f"malformed element literal {token!r} for {self.name}") from None
        return self.element_from_json(value)

    def element_to_json(self, g: int) -> object:
        return [p.element_to_json(a) for p, a in zip(self.parts, self.decode(g))]

    def element_from_json(self, value: object) -> int:
        if not isinstance(value, list) or len(value) != len(self.parts):
            raise ValueError(f"malformed element literal {value!r} for {self.name}")
        return self.encode([p.element_from_json(v) for p, v in zip(self.parts, value)])

    def descriptor(self) -> dict:
        return {"kind": "product", "parts": [p.descriptor() for p in self.parts]}


class TableGroup(FiniteGroup):
    """Group given by an explicit multiplication table (validated)."""

    def __init__(self, mul_table: Sequence[Sequence[int]], name: str = "") -> None:
        n = len(mul_table)
        super().__init__(n, name or f"table{n}")
        table = [[int(x) for x in row] for row in mul_table]
        for row in table:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise ValueError("multiplication table is not n x n over 0..n-1")
        self.mul_table = table
        ident = [e for e in range(n) if all(table[e][g] == g and table[g][e] == g for g in range(n))]
        if len(ident) != 1:
            raise ValueError("multiplication table has no (unique) identity")
        self.identity = ident[0]
        inv = [-1] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == self.identity and table[b][a] == self.identity:
                    inv[a] = b
                    break
            if inv[a] < 0:
                raise ValueError(f"element {a} has no inverse")
        self.inv_table = inv
        _validate(self)

    def descriptor(self) -> dict:
        assert self.mul_table is not None
        return {"kind": "table", "mul": [list(row) for row in self.mul_table]}


def _validate(G: FiniteGroup) -> None:
    n = G.order
    e = G.identity
    for g in range(n):
        if G.mul(e, g) != g or G.mul(g, e) != g:
            raise ValueError(f"identity law fails at element {g}")
        if G.mul(g, G.inv(g)) != e or G.mul(G.inv(g), g) != e:
            raise ValueError(f"inverse law fails at element {g}")
    if G.mul_table is not None:
        M = np.asarray(G.mul_table, dtype=np.int64)
        expect = np.arange(n, dtype=np.int64)
        if not (np.sort(M, axis=1) == expect).all():
            raise ValueError("multiplication table rows are not permutations")
        if not (np.sort(M, axis=0) == expect[:, None]).all():
            raise ValueError("multiplication table columns are not permutations")
        if n <= EXHAUSTIVE_CHECK_LIMIT:
            for a in range(n):
                if not (M[M[a]] == M[a][M]).all():
                    raise ValueError(f"associativity fails in row {a}")
            return
    rng = random.Random(0xCA71E)
    for _ in range(4096):
        a, b, c = (rng.randrange(n) for _ in range(3))
        if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
            raise ValueError(f"associativity fails at ({a},{b},{c})")


def make_cyclic(n: int) -> CyclicGroup:
    return CyclicGroup(n)


def make_dihedral(n: int) -> DihedralGroup:
    return DihedralGroup(n)


def direct_product(G: FiniteGroup, H: FiniteGroup) -> ProductGroup:
    return ProductGroup((G, H))


# --- descriptors and set literals -------------------------------------


def group_from_descriptor(data: object) -> FiniteGroup:
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError(f"malformed group descriptor {data!r}")
    kind = data["kind"]
    if kind == "cyclic":
        return CyclicGroup(int(data["n"]))
    if kind == "dihedral":
        return DihedralGroup(int(data["n"]))
    if kind == "product":
        parts = [group_from_descriptor(p) for p in data["parts"]]
        return ProductGroup(parts)
    if kind == "table":
        return TableGroup(data["mul"])
    raise ValueError(f"unsupported group kind {kind!r}")


def group_from_spec(text: str) -> FiniteGroup:
    """Parse ``cyclic:N``, ``dihedral:N``, or a JSON group descriptor."""
    t = text.strip()
    if t.startswith("{"):
        return group_from_descriptor(json.loads(t))
    if ":" in t:
        kind, _, arg = t.partition(":")
        if kind in ("cyclic", "dihedral"):
            try:
                n = int(arg)
            except ValueError:
                raise ValueError(f"malformed group spec {text!r}") from None
            return CyclicGroup(n) if kind == "cyclic" else DihedralGroup(n)
    raise ValueError(f"unsupported group spec {text!r}")


def _split_top_level(text: str) -> list[str]:
    parts: list[str] = []
    depth = 0
    cur: list[str] = []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        if ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def parse_set(G: FiniteGroup, text: str) -> ElementSet:
    """Parse a comma-separated set literal using the group's element syntax."""
    return frozenset(G.element_from_str(tok) for tok in _split_top_level(text))


def format_set(G: FiniteGroup, xs: Iterable[int]) -> str:
    return "{" + ",".join(G.element_str(g) for g in sorted(xs)) + "}"


def set_to_json(G: FiniteGroup, xs: Iterable[int]) -> list:
    return [G.element_to_json(g) for g in sorted(xs)]


def set_from_json(G: FiniteGroup, values: Iterable[object]) -> ElementSet:
    return frozenset(G.element_from_json(v) for v in values)


def as_element_set(G: FiniteGroup, xs: Iterable[int]) -> ElementSet:
    out = frozenset(xs)
    for g in out:
        if not 0 <= g < G.order:
            raise ValueError(f"element index {g} out of range for {G.name}")
    return out


# --- subsets, classes, subgroups ---------------------------------------


def is_symmetric(G: FiniteGroup, xs: Iterable[int]) -> bool:
    s = set(xs)
    return all(G.inv(g) in s for g in s)


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes as sorted lists, ordered by minimal element."""
    seen = [False] * G.order
    classes: list[list[int]] = []
    for g in range(G.order):
        if seen[g]:
            continue
        orbit = {G.mul(G.mul(h, g), G.inv(h)) for h in range(G.order)}
        for x in orbit:
            seen[x] = True
        classes.append(sorted(orbit))
    return classes


def is_class_closed(G: FiniteGroup, xs: Iterable[int]) -> bool:
    s = set(xs)
    for cls in conjugacy_classes(G):
        hit = sum(1 for g in cls if g in s)
        if hit not in (0, len(cls)):
            return False
    return True


def multiply_sets(G: FiniteGroup, xs: Iterable[int], ys: Iterable[int]) -> ElementSet:
    ys = list(ys)
    return frozenset(G.mul(x, y) for x in xs for y in ys)


def conjugate_set(G: FiniteGroup, g: int, xs: Iterable[int]) -> ElementSet:
    gi = G.inv(g)
    return frozenset(G.mul(G.mul(g, x), gi) for x in xs)


def element_order(G: FiniteGroup, g: int) -> int:
    k, x = 1, g
    while x != G.identity:
        x = G.mul(x, g)
        k += 1
    return k


def involutions(G: FiniteGroup) -> list[int]:
    return [g for g in range(G.order) if g != G.identity and G.mul(g, g) == G.identity]


def symmetric_atoms(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Building blocks of symmetric identity-free sets: involutions and inverse pairs."""
    atoms: list[tuple[int, ...]] = []
    for g in range(G.order):
        if g == G.identity:
            continue
        gi = G.inv(g)
        if gi == g:
            atoms.append((g,))
        elif g < gi:
            atoms.append((g, gi))
    return atoms


def _closure(G: FiniteGroup, seed: Iterable[int]) -> set[int]:
    known = set(seed)
    known.add(G.identity)
    queue = list(known)
    while queue:
        x = queue.pop()
        for y in list(known):
            for z in (G.mul(x, y), G.mul(y, x), G.inv(x)):
                if z not in known:
                    known.add(z)
                    queue.append(z)
    return known


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    elements: ElementSet
    right_coset_reps: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def subgroup_generated(G: FiniteGroup, xs: Iterable[int]) -> Subgroup:
    """Subgroup <xs> with right-coset representatives chosen minimal by index."""
    elems = frozenset(_closure(G, as_element_set(G, xs)))
    covered = [False] * G.order
    reps = []
    for x in range(G.order):
        if covered[x]:
            continue
        reps.append(x)
        for h in elems:
            covered[G.mul(h, x)] = True
    return Subgroup(G, elems, tuple(reps))


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, found by closing one extra generator at a time (desk scale)."""
    found: dict[ElementSet, Subgroup] = {}
    trivial = subgroup_generated(G, ())
    found[trivial.elements] = trivial
    queue = [trivial]
    while queue:
        H = queue.pop()
        for g in range(G.order):
            if g in H.elements:
                continue
            K = subgroup_generated(G, set(H.elements) | {g})
            if K.elements not in found:
                found[K.elements] = K
                queue.append(K)
    return sorted(found.values(), key=lambda H: (H.order, sorted(H.elements)))


# --- automorphisms ------------------------------------------------------


@dataclass(frozen=True)
class Automorphism:
    group: FiniteGroup
    perm: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.perm[g]

    def apply(self, xs: Iterable[int]) -> ElementSet:
        return frozenset(self.perm[x] for x in xs)


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(G, tuple(range(G.order)))


def apply_automorphism(a: Automorphism, xs: Iterable[int]) -> ElementSet:
    return a.apply(xs)


def _units(n: int) -> list[int]:
    return [u for u in range(n) if math.gcd(u, n) == 1]


def dihedral_automorphism(G: DihedralGroup, u: int, v: int) -> Automorphism:
    """f_{u,v}: r -> r^u, s -> s r^v, i.e. (i, j) -> (i, u*j + i*v)."""
    n = G.n
    perm = [0] * G.order
    for i in (0, 1):
        for j in range(n):
            perm[i * n + j] = i * n + (u * j + i * v) % n
    return Automorphism(G, tuple(perm))


def automorphisms(G: FiniteGroup) -> list[Automorphism]:
    """All automorphisms, for cyclic groups, odd dihedral groups, or order <= 12."""
    if isinstance(G, CyclicGroup):
        n = G.n
        return [Automorphism(G, tuple((u * x) % n for x in range(n))) for u in _units(n)]
    if isinstance(G, DihedralGroup) and G.n % 2 == 1:
        return [dihedral_automorphism(G, u, v) for u in _units(G.n) for v in range(G.n)]
    if G.order <= GENERIC_AUT_LIMIT:
        perms = _isomorphism_search(G, G, find_all=True)
        return [Automorphism(G, p) for p in sorted(perms)]
    raise UnsupportedAutomorphisms(
        f"automorphism enumeration unsupported for {G.name} "
        f"(needs cyclic, odd dihedral, or order <= {GENERIC_AUT_LIMIT})"
    )


def _generating_sequence(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    sub: set[int] = {G.identity}
    for g in range(G.order):
        if g not in sub:
            gens.append(g)
            sub = _closure(G, sub | {g})
            if len(sub) == G.order:
                break
    return gens


def _extend_partial_hom(
    G: FiniteGroup, H: FiniteGroup, mapping: dict[int, int], g: int, h: int
) -> dict[int, int] | None:
    new = dict(mapping)
    new[g] = h
    frontier = [g]
    while frontier:
        x = frontier.pop()
        fx = new[x]
        for y in list(new):
            fy = new[y]
            for p, q in ((G.mul(x, y), H.mul(fx, fy)), (G.mul(y, x), H.mul(fy, fx))):
                cur = new.get(p)
                if cur is None:
                    new[p] = q
                    frontier.append(p)
                elif cur != q:
                    return None
    return new


def _isomorphism_search(
    G: FiniteGroup, H: FiniteGroup, find_all: bool
) -> list[tuple[int, ...]]:
    if G.order != H.order:
        return []
    gens = _generating_sequence(G)
    orders_h = [element_order(H, h) for h in range(H.order)]
    results: list[tuple[int, ...]] = []

    def backtrack(k: int, mapping: dict[int, int]) -> bool:
        if k == len(gens):
            if len(mapping) != G.order or len(set(mapping.values())) != G.order:
                return False
            for a in range(G.order):
                for b in range(G.order):
                    if mapping[G.mul(a, b)] != H.mul(mapping[a], mapping[b]):
                        return False
            results.append(tuple(mapping[g] for g in range(G.order)))
            return not find_all
        g = gens[k]
        og = element_order(G, g)
        for h in range(H.order):
            if orders_h[h] != og:
                continue
            ext = _extend_partial_hom(G, H, mapping, g, h)
            if ext is not None and backtrack(k + 1, ext):
                return True
        return False

    backtrack(0, {G.identity: H.identity})
    return results


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> tuple[int, ...] | None:
    """Small-order isomorphism search; returns an index map G -> H or None."""
    found = _isomorphism_search(G, H, find_all=False)
    return found[0] if found else None
