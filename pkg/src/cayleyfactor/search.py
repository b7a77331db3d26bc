"""Exhaustive search for Cayley factorizations.

Symmetric identity-free sets are enumerated over atoms (involutions and
inverse pairs), which enforces symmetry by construction.  Candidate (S, T)
pairs are pruned by the size law |S||T| = |U|, by product collisions
(the N <= 1 anti-chain condition), and by involution parity for groups of
order 2 mod 4.  Work is partitioned on the first atom of S; every
partition owns an independent node budget, so reports are byte-identical
regardless of thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .factor import FactorTriple, TheoremViolation, involution_count, verify_triple
from .groups import (
    ElementSet,
    FiniteGroup,
    as_element_set,
    is_symmetric,
    subgroup_generated,
    symmetric_atoms,
)

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for the searches; immutable during a run.

    max_size caps |S| and |T| (None = no cap).  node_budget is the
    exploration cap per first-atom partition; exceeding it yields a
    partial report flagged non-exhaustive.
    """

    max_size: int | None = None
    require_connected: bool = False
    dedup: bool = False
    threads: int = 1
    node_budget: int = DEFAULT_NODE_BUDGET

    def __post_init__(self) -> None:
        if self.node_budget <= 0:
            raise ValueError("node budget must be positive")
        if self.threads <= 0:
            raise ValueError("thread count must be positive")
        if self.max_size is not None and self.max_size <= 0:
            raise ValueError("max size must be positive")


@dataclass(frozen=True)
class SearchStats:
    nodes: int = 0
    prunes_size_law: int = 0
    prunes_sidon: int = 0
    prunes_parity: int = 0

    def __add__(self, other: "SearchStats") -> "SearchStats":
        return SearchStats(
            self.nodes + other.nodes,
            self.prunes_size_law + other.prunes_size_law,
            self.prunes_sidon + other.prunes_sidon,
            self.prunes_parity + other.prunes_parity,
        )

    def to_json(self) -> dict:
        return {
            "nodes": self.nodes,
            "prunes_size_law": self.prunes_size_law,
            "prunes_sidon": self.prunes_sidon,
            "prunes_parity": self.prunes_parity,
        }


@dataclass(frozen=True)
class SearchReport:
    group: FiniteGroup
    triples: tuple[FactorTriple, ...]
    stats: SearchStats
    exhaustive: bool

    def to_json(self) -> dict:
        from .factor import triple_to_json

        return {
            "group": self.group.descriptor(),
            "triples": [triple_to_json(t) for t in self.triples],
            "stats": self.stats.to_json(),
            "exhaustive": self.exhaustive,
        }

    def to_text(self) -> str:
        from .groups import format_set

        G = self.group
        lines = []
        for k, t in enumerate(self.triples):
            lines.append(
                f"{k:4d}  S={format_set(G, t.S)}  T={format_set(G, t.T)}  U={format_set(G, t.U)}"
            )
        lines.append(
            f"triples={len(self.triples)} exhaustive={str(self.exhaustive).lower()} "
            f"nodes={self.stats.nodes} prunes: size_law={self.stats.prunes_size_law} "
            f"sidon={self.stats.prunes_sidon} parity={self.stats.prunes_parity}"
        )
        return "\n".join(lines)


class _Partition:
    """Mutable state for one first-atom partition of the S enumeration."""

    def __init__(self, G: FiniteGroup, opts: SearchOptions):
        self.G = G
        self.opts = opts
        self.budget = opts.node_budget
        self.nodes = 0
        self.size_prunes = 0
        self.sidon_prunes = 0
        self.parity_prunes = 0
        self.exhausted = True
        self.found: list[FactorTriple] = []

    def tick(self) -> bool:
        if self.budget <= 0:
            self.exhausted = False
            return False
        self.budget -= 1
        self.nodes += 1
        return True

    def stats(self) -> SearchStats:
        return SearchStats(self.nodes, self.size_prunes, self.sidon_prunes, self.parity_prunes)


def _mul_fn(G: FiniteGroup):
    table = G.mul_table
    if table is not None:
        return lambda a, b: table[a][b]
    return G.mul


def _pairs_partition(
    G: FiniteGroup, atoms: list[tuple[int, ...]], first: int, U: ElementSet, opts: SearchOptions
) -> _Partition:
    part = _Partition(G, opts)
    n, e = G.order, G.identity
    mul = _mul_fn(G)
    target = len(U)
    in_u = [False] * n
    for u in U:
        in_u[u] = True
    cap = opts.max_size if opts.max_size is not None else target
    sizes = set()
    for a in range(1, target + 1):
        if target % a:
            continue
        b = target // a
        if a <= cap and b <= cap:
            sizes.add(a)
        else:
            part.size_prunes += 1
    if not sizes:
        return part
    max_s = max(sizes)
    used = [False] * len(atoms)
    s_elems: list[int] = []
    counts = [0] * n
    t_elems: list[int] = []

    def extend_t(idx: int, want: int) -> None:
        if want == 0:
            triple = FactorTriple.build(G, frozenset(s_elems), frozenset(t_elems), U)
            if not triple.verified:
                raise TheoremViolation("search emitted a candidate that failed verification")
            part.found.append(triple)
            return
        for k in range(idx, len(atoms)):
            if used[k]:
                continue
            atom = atoms[k]
            if len(atom) > want:
                continue
            if not part.tick():
                return
            undo: list[int] = []
            ok = True
            for t in atom:
                for s in s_elems:
                    g = mul(s, t)
                    if g == e or not in_u[g] or counts[g]:
                        ok = False
                        break
                    counts[g] += 1
                    undo.append(g)
                if not ok:
                    break
            if ok:
                t_elems.extend(atom)
                extend_t(k + 1, want - len(atom))
                del t_elems[-len(atom):]
            else:
                part.sidon_prunes += 1
            for g in undo:
                counts[g] -= 1

    def extend_s(idx: int, size: int) -> None:
        if size in sizes:
            extend_t(0, target // size)
        if size >= max_s:
            return
        for k in range(idx, len(atoms)):
            atom = atoms[k]
            if size + len(atom) > max_s:
                part.size_prunes += 1
                continue
            if not part.tick():
                return
            used[k] = True
            s_elems.extend(atom)
            extend_s(k + 1, size + len(atom))
            del s_elems[-len(atom):]
            used[k] = False

    first_atom = atoms[first]
    if len(first_atom) <= max_s:
        used[first] = True
        s_elems.extend(first_atom)
        extend_s(first + 1, len(first_atom))
        s_elems.clear()
        used[first] = False
    return part


def _enumerate_partition(
    G: FiniteGroup, atoms: list[tuple[int, ...]], first: int, opts: SearchOptions
) -> _Partition:
    part = _Partition(G, opts)
    n, e = G.order, G.identity
    mul = _mul_fn(G)
    cap = opts.max_size if opts.max_size is not None else n - 1
    parity_sensitive = G.order % 4 == 2
    used = [False] * len(atoms)
    s_elems: list[int] = []
    counts = [0] * n
    t_elems: list[int] = []
    products: list[int] = []

    def record() -> None:
        if parity_sensitive and (len(s_elems) * len(t_elems)) % 2 == 1:
            part.parity_prunes += 1
            return
        U = frozenset(products)
        if not is_symmetric(G, U):
            return
        triple = FactorTriple.build(G, frozenset(s_elems), frozenset(t_elems), U)
        if not triple.verified:
            raise TheoremViolation("enumeration emitted a candidate that failed verification")
        part.found.append(triple)

    def extend_t(idx: int, size: int) -> None:
        if size > 0:
            record()
        if size >= cap:
            return
        for k in range(idx, len(atoms)):
            if used[k]:
                continue
            atom = atoms[k]
            if size + len(atom) > cap:
                continue
            if not part.tick():
                return
            undo: list[int] = []
            ok = True
            for t in atom:
                for s in s_elems:
                    g = mul(s, t)
                    if g == e or counts[g]:
                        ok = False
                        break
                    counts[g] += 1
                    undo.append(g)
                if not ok:
                    break
            if ok:
                t_elems.extend(atom)
                products.extend(undo)
                extend_t(k + 1, size + len(atom))
                del t_elems[-len(atom):]
                del products[len(products) - len(undo):]
            else:
                part.sidon_prunes += 1
            for g in undo:
                counts[g] -= 1

    def extend_s(idx: int, size: int) -> None:
        if size > 0:
            extend_t(0, 0)
        if size >= cap:
            return
        for k in range(idx, len(atoms)):
            atom = atoms[k]
            if size + len(atom) > cap:
                part.size_prunes += 1
                continue
            if not part.tick():
                return
            used[k] = True
            s_elems.extend(atom)
            extend_s(k + 1, size + len(atom))
            del s_elems[-len(atom):]
            used[k] = False

    first_atom = atoms[first]
    if len(first_atom) <= cap:
        used[first] = True
        s_elems.extend(first_atom)
        extend_s(first + 1, len(first_atom))
        s_elems.clear()
        used[first] = False
    return part


def _run_partitions(G: FiniteGroup, opts: SearchOptions, worker) -> SearchReport:
    atoms = symmetric_atoms(G)
    indices = range(len(atoms))
    if opts.threads > 1 and len(atoms) > 1:
        with ThreadPoolExecutor(max_workers=opts.threads) as pool:
            parts = list(pool.map(lambda i: worker(G, atoms, i, opts), indices))
    else:
        parts = [worker(G, atoms, i, opts) for i in indices]
    stats = SearchStats()
    triples: list[FactorTriple] = []
    exhaustive = True
    for part in parts:
        stats = stats + part.stats()
        triples.extend(part.found)
        exhaustive = exhaustive and part.exhausted
    triples.sort(key=FactorTriple.key)
    return SearchReport(G, tuple(triples), stats, exhaustive)


def _postprocess(report: SearchReport, opts: SearchOptions) -> SearchReport:
    triples = report.triples
    if opts.require_connected:
        triples = tuple(t for t in triples if is_connected(report.group, t.U))
    if opts.dedup:
        from .dihedral import canonical_triple, equivalence_classes

        orbits = equivalence_classes(triples, report.group)
        canonical = [canonical_triple(orbit[0]) for orbit in orbits]
        canonical.sort(key=FactorTriple.key)
        triples = tuple(canonical)
    return replace(report, triples=triples)


def find_factor_pairs(G: FiniteGroup, U, opts: SearchOptions | None = None) -> SearchReport:
    """All symmetric identity-free (S, T) with A(G;U) = A(G;S) A(G;T)."""
    opts = opts or SearchOptions()
    U = as_element_set(G, U)
    if G.identity in U:
        raise ValueError("U must not contain the identity")
    if not is_symmetric(G, U):
        raise ValueError("U must be symmetric")
    if not U:
        return SearchReport(G, (), SearchStats(), True)
    if G.order % 4 == 2 and involution_count(G, U) % 2 == 1:
        # no factorization exists: U would need an even number of involutions
        return SearchReport(G, (), SearchStats(prunes_parity=1), True)
    report = _run_partitions(G, opts, lambda g, a, i, o: _pairs_partition(g, a, i, U, o))
    return _postprocess(report, opts)


def enumerate_triples(G: FiniteGroup, opts: SearchOptions | None = None) -> SearchReport:
    """All verified triples with nonempty S, T within the size bounds."""
    opts = opts or SearchOptions()
    if G.order < 2:
        return SearchReport(G, (), SearchStats(), True)
    report = _run_partitions(G, opts, _enumerate_partition)
    return _postprocess(report, opts)


def near_factorization_census(G: FiniteGroup, opts: SearchOptions | None = None) -> SearchReport:
    """All symmetric near-factorizations: pairs with ST = G minus the identity."""
    U = frozenset(range(G.order)) - {G.identity}
    return find_factor_pairs(G, U, opts)


def is_connected(G: FiniteGroup, U) -> bool:
    """Cay(G;U) is connected iff U generates G."""
    return subgroup_generated(G, as_element_set(G, U)).order == G.order
