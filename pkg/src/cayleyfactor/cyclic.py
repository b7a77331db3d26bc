"""Cyclic-group specializations of the factorization machinery.

Convolution form of the product counts, the Sidon-pair test, mask
polynomials mod X^n - 1, CRT composition over prime-power components,
the circulant construction families, antipode augmentation, and d*(Z_n).
All arithmetic is on residues 0..n-1 as plain integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterable, Sequence

from .factor import FactorTriple, TheoremViolation, verify_triple
from .groups import CyclicGroup, ElementSet, make_cyclic


def _as_residues(n: int, X: Iterable[int], name: str = "set") -> ElementSet:
    out = frozenset(X)
    for x in out:
        if not 0 <= x < n:
            raise ValueError(f"{name} element {x} out of range for Z_{n}")
    return out


def _is_symmetric_mod(n: int, X: ElementSet) -> bool:
    return all((-x) % n in X for x in X)


def convolution(n: int, S: Iterable[int], T: Iterable[int]) -> tuple[int, ...]:
    """(1_S * 1_T)(u) for u in Z_n, via the naive exact loop."""
    S = _as_residues(n, S, "S")
    T = _as_residues(n, T, "T")
    counts = [0] * n
    for s in S:
        for t in T:
            counts[(s + t) % n] += 1
    return tuple(counts)


def sidon_pair(n: int, S: Iterable[int], T: Iterable[int]) -> bool:
    """(S - S) and (T - T) meet only in 0; S and T must be nonempty."""
    S = _as_residues(n, S, "S")
    T = _as_residues(n, T, "T")
    if not S or not T:
        raise ValueError("sidon_pair requires nonempty S and T")
    ds = {(a - b) % n for a in S for b in S}
    dt = {(a - b) % n for a in T for b in T}
    return ds & dt == {0}


# --- mask polynomials ----------------------------------------------------


@dataclass(frozen=True)
class MaskPolynomial:
    """Integer polynomial modulo X^n - 1, coefficients indexed by exponent."""

    n: int
    coeffs: tuple[int, ...]

    def __mul__(self, other: "MaskPolynomial") -> "MaskPolynomial":
        if self.n != other.n:
            raise ValueError("mask polynomials over different moduli")
        out = [0] * self.n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[(i + j) % self.n] += a * b
        return MaskPolynomial(self.n, tuple(out))

    def __str__(self) -> str:
        terms = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            base = "1" if e == 0 else f"X^{e}"
            terms.append(base if c == 1 and e != 0 else (str(c) if e == 0 else f"{c}{base}"))
        return " + ".join(terms) if terms else "0"


def mask_poly(n: int, X: Iterable[int]) -> MaskPolynomial:
    X = _as_residues(n, X, "X")
    return MaskPolynomial(n, tuple(1 if i in X else 0 for i in range(n)))


def verify_via_mask(n: int, S: Iterable[int], T: Iterable[int], U: Iterable[int]) -> bool:
    """Factorability via F_S F_T = F_U mod X^n - 1.

    Applies the same symmetry and zero-exclusion requirements as
    verify_triple so the two tests agree on every input.
    """
    S = _as_residues(n, S, "S")
    T = _as_residues(n, T, "T")
    U = _as_residues(n, U, "U")
    for X in (S, T, U):
        if 0 in X or not _is_symmetric_mod(n, X):
            return False
    return mask_poly(n, S) * mask_poly(n, T) == mask_poly(n, U)


# --- Chinese Remainder Theorem -------------------------------------------


@dataclass(frozen=True)
class CrtIso:
    """Bijection Z_n -> prod Z_{m_i} for pairwise coprime moduli m_i."""

    n: int
    moduli: tuple[int, ...]
    _basis: tuple[int, ...]

    def forward(self, x: int) -> tuple[int, ...]:
        return tuple(x % m for m in self.moduli)

    def inverse(self, residues: Sequence[int]) -> int:
        if len(residues) != len(self.moduli):
            raise ValueError("component count mismatch")
        return sum(r * b for r, b in zip(residues, self._basis)) % self.n


def _iso_for_moduli(moduli: Sequence[int]) -> CrtIso:
    n = math.prod(moduli)
    for i, m in enumerate(moduli):
        if m < 2:
            raise ValueError(f"modulus {m} too small for CRT")
        for m2 in moduli[i + 1 :]:
            if math.gcd(m, m2) != 1:
                raise ValueError(f"moduli {m} and {m2} are not coprime")
    basis = []
    for m in moduli:
        rest = n // m
        basis.append(rest * pow(rest, -1, m) % n)
    return CrtIso(n, tuple(moduli), tuple(basis))


def prime_power_factorization(n: int) -> list[int]:
    """Prime-power parts of n in ascending prime order."""
    out = []
    rest = n
    p = 2
    while p * p <= rest:
        if rest % p == 0:
            q = 1
            while rest % p == 0:
                rest //= p
                q *= p
            out.append(q)
        p += 1
    if rest > 1:
        out.append(rest)
    return out


def crt_split(n: int) -> CrtIso:
    if n < 2:
        raise ValueError("crt_split needs n >= 2")
    return _iso_for_moduli(prime_power_factorization(n))


def crt_compose(components: Sequence[FactorTriple]) -> FactorTriple:
    """Compose component triples over pairwise coprime cyclic groups into Z_n.

    The result is verified from scratch; by the product-form theorem it is
    verified exactly when every component is.
    """
    if not components:
        raise ValueError("crt_compose needs at least one component")
    moduli = []
    for c in components:
        if not isinstance(c.group, CyclicGroup):
            raise ValueError("crt_compose components must live in cyclic groups")
        moduli.append(c.group.n)
    iso = _iso_for_moduli(moduli)
    G = make_cyclic(iso.n)

    def lift(sets: list[ElementSet]) -> ElementSet:
        return frozenset(iso.inverse(combo) for combo in iter_product(*[sorted(s) for s in sets]))

    return FactorTriple.build(
        G,
        lift([c.S for c in components]),
        lift([c.T for c in components]),
        lift([c.U for c in components]),
    )


def product_form_components(n: int, X: Iterable[int]) -> list[ElementSet] | None:
    """Components X_i with X = phi^-1(prod X_i), or None if X is not of product form."""
    iso = crt_split(n)
    X = _as_residues(n, X, "X")
    parts = [frozenset(iso.forward(x)[i] for x in X) for i in range(len(iso.moduli))]
    rebuilt = frozenset(iso.inverse(combo) for combo in iter_product(*[sorted(p) for p in parts]))
    return parts if rebuilt == X else None


# --- antipode augmentation -------------------------------------------------


def antipode_augment(
    n: int, S0: Iterable[int], T: Iterable[int], U0: Iterable[int]
) -> FactorTriple | None:
    """Extend a verified triple by the antipode a = n/2 when a + T misses U0."""
    if n % 2 != 0:
        raise ValueError("antipode augmentation needs even n")
    S0 = _as_residues(n, S0, "S0")
    T = _as_residues(n, T, "T")
    U0 = _as_residues(n, U0, "U0")
    G = make_cyclic(n)
    report = verify_triple(G, S0, T, U0)
    if not report:
        raise ValueError(f"(S0, T, U0) is not verified: {report.reason}")
    a = n // 2
    if a in S0:
        raise ValueError("antipode n/2 already lies in S0")
    if a in T:
        raise ValueError("antipode n/2 lies in T")
    shifted = frozenset((a + t) % n for t in T)
    if shifted & U0:
        return None
    out = FactorTriple.build(G, S0 | {a}, T, U0 | shifted)
    if not out.verified:
        raise TheoremViolation("antipode augmentation produced an unverified triple")
    return out


# --- circulant construction families ---------------------------------------


def table1_multiplier(g: int, base: FactorTriple) -> FactorTriple:
    """Unit multiple (gS, gT, gU) of a verified triple in Z_n."""
    if not isinstance(base.group, CyclicGroup):
        raise ValueError("multiplier row needs a cyclic base triple")
    n = base.group.n
    if math.gcd(g % n, n) != 1:
        raise ValueError(f"multiplier {g} is not a unit mod {n}")
    if not base.verified:
        raise ValueError("multiplier row needs a verified base triple")
    scale = lambda X: frozenset((g * x) % n for x in X)
    out = FactorTriple.build(base.group, scale(base.S), scale(base.T), scale(base.U))
    if not out.verified:
        raise TheoremViolation("unit multiple of a verified triple failed to verify")
    return out


def table1_half_shift(n: int, U: Iterable[int]) -> FactorTriple:
    """({n/2}, U - n/2, U) for even n and symmetric U avoiding 0 and n/2."""
    if n % 2 != 0:
        raise ValueError("half-shift row needs even n")
    U = _as_residues(n, U, "U")
    a = n // 2
    for bad in (0, a):
        if bad in U:
            raise ValueError(f"half-shift row: U must avoid {bad}")
    if not _is_symmetric_mod(n, U):
        raise ValueError("half-shift row: U must be symmetric")
    T = frozenset((u - a) % n for u in U)
    out = FactorTriple.build(make_cyclic(n), frozenset({a}), T, U)
    if not out.verified:
        raise TheoremViolation("half-shift construction failed to verify")
    return out


def table1_pm_d(n: int, d: int) -> FactorTriple:
    """({+-d}, {+-2d}, {+-d, +-3d}) with additive order of d at least 5."""
    d %= n
    order = n // math.gcd(n, d) if d else 1
    if order < 5:
        raise ValueError(f"additive order of {d} mod {n} is {order}, need >= 5")
    pm = lambda xs: frozenset(v % n for x in xs for v in (x, -x))
    out = FactorTriple.build(make_cyclic(n), pm([d]), pm([2 * d]), pm([d, 3 * d]))
    if not out.verified:
        # ord(d) = 6 makes 3d its own inverse and the products collide
        raise ValueError(f"pm_d parameters n={n}, d={d} produce colliding products")
    return out


def table1_index_sets(n: int, I: Iterable[int], J: Iterable[int]) -> FactorTriple:
    """({+-i}, {+-j}, {+-(i+-j)}) when the sum multiset is collision-free."""
    I = frozenset(I)
    J = frozenset(J)
    half = (n - 1) // 2
    for name, X in (("I", I), ("J", J)):
        if not X:
            raise ValueError(f"index-sets row: {name} must be nonempty")
        for x in X:
            if not 1 <= x <= half:
                raise ValueError(f"index-sets row: {name} element {x} outside 1..{half}")
    sums = []
    for i in I:
        for j in J:
            for v in (i + j, i - j):
                sums.extend(((v) % n, (-v) % n))
    for v in sums:
        if v == 0:
            raise ValueError("index-sets row: multiset hits 0")
        if n % 2 == 0 and v == n // 2:
            raise ValueError(f"index-sets row: multiset hits n/2 = {n // 2}")
    if len(set(sums)) != len(sums):
        dup = sorted(v for v in set(sums) if sums.count(v) > 1)[0]
        raise ValueError(f"index-sets row: repeated value {dup} in the sum multiset")
    pm = lambda xs: frozenset(v % n for x in xs for v in (x, -x))
    out = FactorTriple.build(make_cyclic(n), pm(I), pm(J), frozenset(sums))
    if not out.verified:
        raise TheoremViolation("index-sets construction failed to verify")
    return out


TABLE1_ROWS = ("multiplier", "half-shift", "pm-d", "index-sets")


def table1_family(row: str, **params) -> FactorTriple:
    """Dispatch one of the circulant family rows by name."""
    if row == "multiplier":
        return table1_multiplier(params["g"], params["base"])
    if row == "half-shift":
        return table1_half_shift(params["n"], params["U"])
    if row == "pm-d":
        return table1_pm_d(params["n"], params["d"])
    if row == "index-sets":
        return table1_index_sets(params["n"], params["I"], params["J"])
    raise ValueError(f"unknown circulant family row {row!r}; rows: {', '.join(TABLE1_ROWS)}")


# --- d*(Z_n) ---------------------------------------------------------------


def _symmetric_atoms_mod(n: int) -> list[tuple[int, ...]]:
    atoms: list[tuple[int, ...]] = [(i, n - i) for i in range(1, (n + 1) // 2)]
    if n % 2 == 0:
        atoms.append((n // 2,))
    atoms.sort()
    return atoms


def _symmetric_sets_of_size(n: int, d: int) -> Iterable[frozenset[int]]:
    atoms = _symmetric_atoms_mod(n)

    def rec(idx: int, remaining: int, cur: list[int]):
        if remaining == 0:
            yield frozenset(cur)
            return
        for k in range(idx, len(atoms)):
            atom = atoms[k]
            if len(atom) <= remaining:
                yield from rec(k + 1, remaining - len(atom), cur + list(atom))

    yield from rec(0, d, [])


def dstar_witness(n: int, budget: int = 64) -> tuple[int, tuple[ElementSet, ElementSet] | None]:
    """Exact d*(Z_n) with a witness pair, by exhaustive search with Sidon pruning."""
    if n < 3:
        raise ValueError("dstar needs n >= 3")
    if n > budget:
        raise ValueError(f"n={n} exceeds the search budget {budget}")
    bound = math.isqrt(n)
    atoms = _symmetric_atoms_mod(n)
    for d in range(bound, 0, -1):
        for S in _symmetric_sets_of_size(n, d):
            ds = {(a - b) % n for a in S for b in S}

            def extend(idx: int, remaining: int, cur: list[int]):
                if remaining == 0:
                    return frozenset(cur)
                for k in range(idx, len(atoms)):
                    atom = atoms[k]
                    if len(atom) > remaining:
                        continue
                    new = [(a - c) % n for a in atom for c in cur]
                    new += [(c - a) % n for a in atom for c in cur]
                    new += [(a - b) % n for a in atom for b in atom]
                    if any(v in ds and v != 0 for v in new):
                        continue  # Sidon prune: nonzero difference shared with S - S
                    found = extend(k + 1, remaining - len(atom), cur + list(atom))
                    if found is not None:
                        return found
                return None

            T = extend(0, d, [])
            if T is not None:
                assert d <= bound
                return d, (frozenset(S), T)
    return 0, None


def dstar(n: int, budget: int = 64) -> int:
    """Largest d with symmetric size-d sets S, T in Z_n \\ {0} and all sums unique."""
    return dstar_witness(n, budget)[0]
