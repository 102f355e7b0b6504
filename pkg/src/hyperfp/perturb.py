"""Single-edit molecular perturbations and edit-distance ladder datasets.

All chemically valid single edits of a molecule are enumerated (element
substitution, bond addition, bond deletion), deduplicated by a relabeling-
invariant signature. Breadth-first perturbation ladders label descendants
with their path edit count, an upper bound on the true graph edit distance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from hyperfp.molgraph import (
    AROMATIC_ELEMENTS,
    AtomRecord,
    Bond,
    DEFAULT_VALENCE,
    MolGraph,
)

__all__ = [
    "DEFAULT_EDIT_ELEMENTS",
    "GedPair",
    "build_ged_dataset",
    "generate_corpus",
    "graph_signature",
    "perturb_all",
    "perturbation_levels",
]

DEFAULT_EDIT_ELEMENTS = ("C", "N", "O")

_BOND_CODE = {1.0: 1, 2.0: 2, 3.0: 3, 1.5: 4}


@dataclass(frozen=True)
class GedPair:
    mol_a: MolGraph
    mol_b: MolGraph
    edit_distance: int

    def __post_init__(self):
        if self.edit_distance < 1:
            raise ValueError("edit_distance must be >= 1")


_U64 = np.uint64


def _mix64(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer on uint64 arrays (wrapping arithmetic)."""
    x = (x + _U64(0x9E3779B97F4A7C15)) & _U64(0xFFFFFFFFFFFFFFFF)
    x ^= x >> _U64(30)
    x = (x * _U64(0xBF58476D1CE4E5B9)) & _U64(0xFFFFFFFFFFFFFFFF)
    x ^= x >> _U64(27)
    x = (x * _U64(0x94D049BB133111EB)) & _U64(0xFFFFFFFFFFFFFFFF)
    x ^= x >> _U64(31)
    return x


_ELEMENT_CODE = {el: k + 1 for k, el in enumerate(sorted(DEFAULT_VALENCE))}


def graph_signature(g: MolGraph) -> int:
    """Relabeling-invariant graph hash for deduplication.

    Weisfeiler-Lehman-style refinement over atom labels and bond orders,
    vectorized with 64-bit mixing and stopped once the label partition
    stabilizes (at most 16 rounds); not a certified isomorphism test, but
    collisions between distinct molecules are vanishingly unlikely at desk
    scale.
    """
    n = g.atom_count
    with np.errstate(over="ignore"):
        raw = np.empty((5, n), dtype=np.uint64)
        for i, a in enumerate(g.atoms):
            raw[0, i] = _ELEMENT_CODE[a.element]
            raw[1, i] = a.h_count
            raw[2, i] = a.formal_charge + 64
            raw[3, i] = a.aromatic
            raw[4, i] = len(g.adjacency[i])
        weights = np.array([1_000_003, 257, 17, 5, 1], dtype=np.uint64)
        labels = _mix64(weights @ raw)
        max_deg = int(raw[4].max()) if n else 0
        if max_deg > 0:
            nbr_index = np.zeros((n, max_deg), dtype=np.int64)
            nbr_salt = np.zeros((n, max_deg), dtype=np.uint64)
            present = np.zeros((n, max_deg), dtype=np.uint64)
            code_of = {}
            for b in g.bonds:
                code_of[(b.i, b.j)] = _BOND_CODE[b.order]
                code_of[(b.j, b.i)] = _BOND_CODE[b.order]
            for i, adj in enumerate(g.adjacency):
                for slot, j in enumerate(adj):
                    nbr_index[i, slot] = j
                    nbr_salt[i, slot] = code_of[(i, j)]
                    present[i, slot] = 1
            nbr_salt = _mix64(nbr_salt)
            distinct = len(np.unique(labels))
            for _ in range(min(n, 16)):
                slots = present * _mix64(labels[nbr_index] ^ nbr_salt)
                slots.sort(axis=1)
                acc = _mix64(labels)
                for col in range(max_deg):
                    acc = _mix64(acc ^ slots[:, col])
                labels = acc
                refined = len(np.unique(labels))
                if refined == distinct:
                    break
                distinct = refined
        labels.sort()
        final = _mix64(labels ^ _mix64(np.arange(1, n + 1, dtype=np.uint64)))
        return int(_mix64(final ^ _U64(n)).sum() & 0xFFFFFFFFFFFFFFFF)


def _spare_valence(g: MolGraph, i: int) -> int:
    atom = g.atoms[i]
    capacity = DEFAULT_VALENCE[atom.element] + atom.formal_charge
    return capacity - math.ceil(g.order_sum(i))


def _recomputed_h(atom: AtomRecord, capacity: int, order_sum: float) -> int:
    return max(0, capacity - math.ceil(order_sum))


def _connected_without(g: MolGraph, skip: Bond) -> bool:
    n = g.atom_count
    if n == 1:
        return True
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        u = stack.pop()
        for v in g.adjacency[u]:
            if {u, v} == {skip.i, skip.j}:
                continue
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == n


def perturb_all(g: MolGraph, elements=DEFAULT_EDIT_ELEMENTS) -> list[MolGraph]:
    """All distinct valid molecules exactly one edit away from ``g``.

    Edits: substitute one atom's element (implicit hydrogens recomputed,
    valence violations rejected), add a single bond between two unbonded
    atoms with spare valence, or delete a bond that leaves the graph
    connected. Results are deduplicated by graph signature; the order is
    deterministic.
    """
    elements = tuple(dict.fromkeys(elements))
    results: list[MolGraph] = []
    seen: set[int] = set()

    def emit(candidate: MolGraph) -> None:
        sig = graph_signature(candidate)
        if sig not in seen:
            seen.add(sig)
            results.append(candidate)

    # element substitutions
    for i, atom in enumerate(g.atoms):
        order_sum = g.order_sum(i)
        heavy = math.ceil(order_sum)
        for el in elements:
            if el == atom.element:
                continue
            if atom.aromatic and el not in AROMATIC_ELEMENTS:
                continue
            capacity = DEFAULT_VALENCE[el] + atom.formal_charge
            if heavy > capacity:
                continue
            new_atom = AtomRecord(
                element=el,
                h_count=capacity - heavy,
                formal_charge=atom.formal_charge,
                aromatic=atom.aromatic,
            )
            atoms = list(g.atoms)
            atoms[i] = new_atom
            emit(MolGraph.build(atoms, g.bonds))

    # bond additions
    for i in range(g.atom_count):
        if _spare_valence(g, i) < 1:
            continue
        for j in range(i + 1, g.atom_count):
            if g.bonded(i, j) or _spare_valence(g, j) < 1:
                continue
            atoms = list(g.atoms)
            for k in (i, j):
                atom = atoms[k]
                capacity = DEFAULT_VALENCE[atom.element] + atom.formal_charge
                atoms[k] = AtomRecord(
                    element=atom.element,
                    h_count=_recomputed_h(atom, capacity, g.order_sum(k) + 1.0),
                    formal_charge=atom.formal_charge,
                    aromatic=atom.aromatic,
                )
            emit(MolGraph.build(atoms, list(g.bonds) + [Bond(i, j, 1.0)]))

    # bond deletions
    for bond in g.bonds:
        if not _connected_without(g, bond):
            continue
        atoms = list(g.atoms)
        for k in (bond.i, bond.j):
            atom = atoms[k]
            capacity = DEFAULT_VALENCE[atom.element] + atom.formal_charge
            atoms[k] = AtomRecord(
                element=atom.element,
                h_count=_recomputed_h(atom, capacity, g.order_sum(k) - bond.order),
                formal_charge=atom.formal_charge,
                aromatic=atom.aromatic,
            )
        bonds = [b for b in g.bonds if b is not bond]
        emit(MolGraph.build(atoms, bonds))

    return results


def perturbation_levels(
    seed: MolGraph,
    max_depth: int,
    elements=DEFAULT_EDIT_ELEMENTS,
    rng: np.random.Generator | None = None,
    frontier_cap: int = 32,
) -> list[list[MolGraph]]:
    """Breadth-first ladder: level k holds molecules first reached at k+1 edits.

    To keep the combinatorial growth tractable, at most ``frontier_cap``
    molecules per level (sampled with ``rng``) are expanded further; depth
    labels therefore remain upper bounds on the true edit distance.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    seen = {graph_signature(seed)}
    levels: list[list[MolGraph]] = []
    frontier = [seed]
    for _ in range(max_depth):
        level: list[MolGraph] = []
        for mol in frontier:
            for cand in perturb_all(mol, elements):
                sig = graph_signature(cand)
                if sig not in seen:
                    seen.add(sig)
                    level.append(cand)
        levels.append(level)
        if not level:
            break
        if len(level) > frontier_cap:
            picked = rng.choice(len(level), size=frontier_cap, replace=False)
            frontier = [level[int(k)] for k in np.sort(picked)]
        else:
            frontier = level
    return levels


def build_ged_dataset(
    seeds,
    max_depth: int,
    pairs_per_seed: int,
    rng_seed: int,
    elements=DEFAULT_EDIT_ELEMENTS,
    frontier_cap: int = 32,
) -> list[GedPair]:
    """Sample (seed, descendant-at-depth-k) pairs labeled edit_distance = k.

    Pairs are spread as evenly as possible across depths 1..max_depth; if a
    seed's ladder cannot supply the requested count, whatever exists is
    returned with a warning. Deterministic for fixed (seeds, rng_seed).
    """
    if not (1 <= max_depth <= 8):
        raise ValueError(f"max_depth must be in 1..8, got {max_depth}")
    if pairs_per_seed < 1:
        raise ValueError("pairs_per_seed must be >= 1")
    rng = np.random.default_rng(rng_seed & 0xFFFFFFFFFFFFFFFF)
    pairs: list[GedPair] = []
    for seed in seeds:
        levels = perturbation_levels(
            seed, max_depth, elements=elements, rng=rng, frontier_cap=frontier_cap
        )
        if not levels or not levels[0]:
            warnings.warn(
                "seed molecule admits no valid perturbations; skipped",
                stacklevel=2,
            )
            continue
        counts = [0] * len(levels)
        remaining = [len(lv) for lv in levels]
        want = pairs_per_seed
        while want > 0 and any(remaining):
            for k in range(len(levels)):
                if want == 0:
                    break
                if remaining[k] > 0:
                    counts[k] += 1
                    remaining[k] -= 1
                    want -= 1
        if want > 0:
            warnings.warn(
                f"ladder exhausted: {pairs_per_seed - want} of "
                f"{pairs_per_seed} requested pairs available",
                stacklevel=2,
            )
        for k, level in enumerate(levels):
            if counts[k] == 0:
                continue
            picked = rng.choice(len(level), size=counts[k], replace=False)
            for idx in np.sort(picked):
                pairs.append(
                    GedPair(mol_a=seed, mol_b=level[int(idx)], edit_distance=k + 1)
                )
    return pairs


def generate_corpus(
    seeds,
    size: int,
    rng_seed: int,
    elements=DEFAULT_EDIT_ELEMENTS,
    frontier_cap: int = 64,
) -> list[MolGraph]:
    """Accumulate ``size`` distinct molecules by expanding seed ladders.

    Atom counts never change under single edits, so size diversity comes
    from the seed set. Deterministic for fixed inputs.
    """
    rng = np.random.default_rng(rng_seed & 0xFFFFFFFFFFFFFFFF)
    out: list[MolGraph] = []
    seen: set[int] = set()
    for seed in seeds:
        sig = graph_signature(seed)
        if sig not in seen:
            seen.add(sig)
            out.append(seed)
    frontier = list(out)
    while len(out) < size and frontier:
        fresh: list[MolGraph] = []
        for mol in frontier:
            for cand in perturb_all(mol, elements):
                sig = graph_signature(cand)
                if sig not in seen:
                    seen.add(sig)
                    fresh.append(cand)
                    out.append(cand)
            if len(out) >= size:
                break
        if len(out) >= size:
            break
        if len(fresh) > frontier_cap:
            picked = rng.choice(len(fresh), size=frontier_cap, replace=False)
            frontier = [fresh[int(k)] for k in np.sort(picked)]
        else:
            frontier = fresh
    if len(out) < size:
        warnings.warn(
            f"corpus exhausted at {len(out)} of {size} requested molecules",
            stacklevel=2,
        )
    return out[:size]
