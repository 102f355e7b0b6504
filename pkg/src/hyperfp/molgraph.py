"""SMILES-subset parser and heavy-atom molecular graph queries.

The parser covers the organic subset (B, C, N, O, P, S, F, Cl, Br, I),
lowercase aromatic atoms, bond symbols ``- = # :``, branches, ring closures
(1-9 and %nn), and bracket atoms with explicit hydrogen count and charge.
Stereo markers, isotopes, wildcards, and multi-fragment input are rejected
with positioned errors. Implicit hydrogens follow a fixed valence table;
aromaticity is taken verbatim from the lowercase notation (no perception).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

__all__ = [
    "AtomRecord",
    "Bond",
    "MolGraph",
    "SmilesError",
    "SmilesSyntaxError",
    "UnsupportedFeatureError",
    "ValenceError",
    "DEFAULT_VALENCE",
    "SUPPORTED_ELEMENTS",
    "diameter",
    "heavy_degree",
    "parse_smiles",
    "permute",
    "wiener_index",
]

SUPPORTED_ELEMENTS = ("B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I")

DEFAULT_VALENCE = {
    "B": 3,
    "C": 4,
    "N": 3,
    "O": 2,
    "P": 3,
    "S": 2,
    "F": 1,
    "Cl": 1,
    "Br": 1,
    "I": 1,
}

AROMATIC_ELEMENTS = frozenset({"B", "C", "N", "O", "P", "S"})

ATOMIC_NUMBER = {
    "B": 5,
    "C": 6,
    "N": 7,
    "O": 8,
    "F": 9,
    "P": 15,
    "S": 16,
    "Cl": 17,
    "Br": 35,
    "I": 53,
}

_BOND_SYMBOLS = {"-": 1.0, "=": 2.0, "#": 3.0, ":": 1.5}


class SmilesError(ValueError):
    """Base for positioned SMILES failures."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (offset {offset})"
        super().__init__(message)


class SmilesSyntaxError(SmilesError):
    """Malformed SMILES: unmatched ring digit, parenthesis, dangling bond."""


class UnsupportedFeatureError(SmilesError):
    """Token outside the supported subset (stereo, isotope, wildcard, ...)."""

    def __init__(self, message: str, token: str, offset: int):
        self.token = token
        super().__init__(f"{message}: {token!r}", offset)


class ValenceError(SmilesError):
    """An atom's bond orders exceed its valence."""

    def __init__(self, message: str, atom_index: int):
        self.atom_index = atom_index
        super().__init__(f"{message} (atom {atom_index})")


@dataclass(frozen=True)
class AtomRecord:
    element: str
    h_count: int
    formal_charge: int = 0
    aromatic: bool = False


@dataclass(frozen=True)
class Bond:
    i: int
    j: int
    order: float

    def endpoints(self) -> tuple[int, int]:
        return (self.i, self.j)


@dataclass(frozen=True)
class MolGraph:
    """Immutable connected heavy-atom graph."""

    atoms: tuple[AtomRecord, ...]
    bonds: tuple[Bond, ...]
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, atoms, bonds) -> "MolGraph":
        atoms = tuple(atoms)
        if not atoms:
            raise ValueError("a molecule needs at least one atom")
        n = len(atoms)
        seen_pairs = set()
        norm_bonds = []
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for b in bonds:
            i, j = (b.i, b.j) if b.i < b.j else (b.j, b.i)
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bond endpoint out of range: ({b.i}, {b.j})")
            if i == j:
                raise ValueError(f"self-bond on atom {i}")
            if (i, j) in seen_pairs:
                raise ValueError(f"duplicate bond between atoms {i} and {j}")
            seen_pairs.add((i, j))
            norm_bonds.append(Bond(i, j, float(b.order)))
            nbrs[i].append(j)
            nbrs[j].append(i)
        graph = cls(
            atoms=atoms,
            bonds=tuple(norm_bonds),
            adjacency=tuple(tuple(sorted(a)) for a in nbrs),
        )
        if n > 1:
            reached = _bfs_depths(graph, 0)
            if any(d < 0 for d in reached):
                raise ValueError(
                    "molecule is not connected; multi-fragment graphs are rejected"
                )
        return graph

    @property
    def atom_count(self) -> int:
        return len(self.atoms)

    def order_sum(self, i: int) -> float:
        """Sum of bond orders incident to atom i (aromatic counts 1.5)."""
        return sum(b.order for b in self.bonds if i in (b.i, b.j))

    def bonded(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]


# ------------------------------------------------------------------ parsing


class _ParsedAtom:
    __slots__ = ("element", "aromatic", "bracket", "h_override", "charge", "offset")

    def __init__(self, element, aromatic, bracket, h_override, charge, offset):
        self.element = element
        self.aromatic = aromatic
        self.bracket = bracket
        self.h_override = h_override
        self.charge = charge
        self.offset = offset


def _parse_bracket(s: str, start: int) -> tuple[_ParsedAtom, int]:
    """Parse a bracket atom starting at s[start] == '['; returns (atom, end)."""
    pos = start + 1
    n = len(s)
    if pos < n and s[pos].isdigit():
        d = pos
        while d < n and s[d].isdigit():
            d += 1
        raise UnsupportedFeatureError("isotope specification", s[pos:d], pos)

    element = None
    aromatic = False
    if s[pos : pos + 2] in ("Cl", "Br"):
        element = s[pos : pos + 2]
        pos += 2
    elif pos < n and s[pos] in "BCNOPSFI":
        # a trailing lowercase letter can only be a two-letter element symbol
        if pos + 1 < n and s[pos + 1].isalpha() and s[pos + 1].islower():
            raise UnsupportedFeatureError(
                "unsupported element", s[pos : pos + 2], pos
            )
        element = s[pos]
        pos += 1
    elif pos < n and s[pos] in "bcnops":
        element = s[pos].upper()
        aromatic = True
        pos += 1
    elif pos < n and s[pos] == "H":
        raise UnsupportedFeatureError("explicit hydrogen atom", "[H]", start)
    elif pos < n and s[pos] == "*":
        raise UnsupportedFeatureError("wildcard atom", "*", pos)
    else:
        bad = s[pos] if pos < n else "<end>"
        if bad.isalpha():
            end = pos + 1
            if end < n and s[end].isalpha() and s[end].islower():
                end += 1
            bad = s[pos:end]
        raise UnsupportedFeatureError("unsupported element", bad, pos)

    if pos < n and s[pos] == "@":
        raise UnsupportedFeatureError("stereo marker", "@", pos)

    h_count = 0
    if pos < n and s[pos] == "H":
        pos += 1
        h_count = 1
        d = pos
        while d < n and s[d].isdigit():
            d += 1
        if d > pos:
            h_count = int(s[pos:d])
            pos = d

    charge = 0
    if pos < n and s[pos] in "+-":
        sign = 1 if s[pos] == "+" else -1
        symbol = s[pos]
        pos += 1
        d = pos
        while d < n and s[d].isdigit():
            d += 1
        if d > pos:
            charge = sign * int(s[pos:d])
            pos = d
        else:
            charge = sign
            while pos < n and s[pos] == symbol:
                charge += sign
                pos += 1

    if pos >= n or s[pos] != "]":
        bad = s[pos] if pos < n else "<end>"
        raise SmilesSyntaxError(f"expected ']' in bracket atom, got {bad!r}", pos)
    return _ParsedAtom(element, aromatic, True, h_count, charge, start), pos + 1


def parse_smiles(text: str) -> MolGraph:
    """Parse a SMILES string (supported subset) into a heavy-atom graph."""
    s = text
    if not s:
        raise SmilesSyntaxError("empty SMILES string", 0)

    atoms: list[_ParsedAtom] = []
    bonds: list[Bond] = []
    bond_pairs: set[tuple[int, int]] = set()
    anchor: int | None = None
    pending_order: float | None = None
    pending_offset = 0
    branch_stack: list[int] = []
    ring_open: dict[int, tuple[int, float | None, int]] = {}

    def add_bond(i: int, j: int, order: float | None, offset: int) -> None:
        nonlocal pending_order
        if order is None:
            order = (
                1.5 if atoms[i].aromatic and atoms[j].aromatic else 1.0
            )
        if i == j:
            raise SmilesSyntaxError("ring bond closes on the same atom", offset)
        pair = (min(i, j), max(i, j))
        if pair in bond_pairs:
            raise SmilesSyntaxError(
                f"duplicate bond between atoms {pair[0]} and {pair[1]}", offset
            )
        bond_pairs.add(pair)
        bonds.append(Bond(pair[0], pair[1], order))
        pending_order = None

    def add_atom(atom: _ParsedAtom) -> None:
        nonlocal anchor, pending_order
        atoms.append(atom)
        idx = len(atoms) - 1
        if anchor is None and pending_order is not None:
            raise SmilesSyntaxError("bond symbol before any atom", pending_offset)
        if anchor is not None:
            add_bond(anchor, idx, pending_order, atom.offset)
        anchor = idx

    def close_or_open_ring(num: int, offset: int) -> None:
        nonlocal pending_order
        if anchor is None:
            raise SmilesSyntaxError("ring closure before any atom", offset)
        if num in ring_open:
            other_idx, other_order, other_off = ring_open.pop(num)
            if pending_order is not None and other_order is not None:
                if pending_order != other_order:
                    raise SmilesSyntaxError(
                        f"conflicting bond orders on ring closure {num}", offset
                    )
            order = pending_order if pending_order is not None else other_order
            add_bond(other_idx, anchor, order, offset)
        else:
            ring_open[num] = (anchor, pending_order, offset)
            pending_order = None

    pos = 0
    n = len(s)
    while pos < n:
        c = s[pos]
        two = s[pos : pos + 2]
        if two in ("Cl", "Br"):
            add_atom(_ParsedAtom(two, False, False, None, 0, pos))
            pos += 2
        elif c in "BCNOPSFI":
            add_atom(_ParsedAtom(c, False, False, None, 0, pos))
            pos += 1
        elif c in "bcnops":
            add_atom(_ParsedAtom(c.upper(), True, False, None, 0, pos))
            pos += 1
        elif c == "[":
            atom, pos = _parse_bracket(s, pos)
            add_atom(atom)
        elif c in _BOND_SYMBOLS:
            if pending_order is not None:
                raise SmilesSyntaxError("two consecutive bond symbols", pos)
            pending_order = _BOND_SYMBOLS[c]
            pending_offset = pos
            pos += 1
        elif c == "(":
            if pending_order is not None:
                raise SmilesSyntaxError("bond symbol before '('", pos)
            if anchor is None:
                raise SmilesSyntaxError("branch before any atom", pos)
            branch_stack.append(anchor)
            pos += 1
        elif c == ")":
            if pending_order is not None:
                raise SmilesSyntaxError("dangling bond before ')'", pending_offset)
            if not branch_stack:
                raise SmilesSyntaxError("unmatched ')'", pos)
            anchor = branch_stack.pop()
            pos += 1
        elif c.isdigit():
            close_or_open_ring(int(c), pos)
            pos += 1
        elif c == "%":
            digits = s[pos + 1 : pos + 3]
            if len(digits) != 2 or not digits.isdigit():
                raise SmilesSyntaxError("'%' must be followed by two digits", pos)
            close_or_open_ring(int(digits), pos)
            pos += 3
        elif c in "/\\":
            raise UnsupportedFeatureError("stereo bond marker", c, pos)
        elif c == "@":
            raise UnsupportedFeatureError("stereo marker", c, pos)
        elif c == "*":
            raise UnsupportedFeatureError("wildcard atom", c, pos)
        elif c == ".":
            raise UnsupportedFeatureError("multi-fragment separator", c, pos)
        else:
            raise UnsupportedFeatureError("unsupported character", c, pos)

    if pending_order is not None:
        raise SmilesSyntaxError("dangling bond at end of input", pending_offset)
    if ring_open:
        num, (_, _, offset) = next(iter(sorted(ring_open.items())))
        raise SmilesSyntaxError(f"unclosed ring closure {num}", offset)
    if branch_stack:
        raise SmilesSyntaxError("unclosed '('", n - 1)
    if not atoms:
        raise SmilesSyntaxError("no atoms in SMILES string", 0)

    order_sums = [0.0] * len(atoms)
    for b in bonds:
        order_sums[b.i] += b.order
        order_sums[b.j] += b.order

    records = []
    for idx, atom in enumerate(atoms):
        heavy = math.ceil(order_sums[idx])
        if atom.bracket:
            h = atom.h_override
        else:
            valence = DEFAULT_VALENCE[atom.element]
            if atom.aromatic:
                # fused aromatic junctions can exceed the table; clamp to 0
                h = max(0, valence - heavy)
            else:
                if heavy > valence:
                    raise ValenceError(
                        f"{atom.element} with bond order sum {order_sums[idx]} "
                        f"exceeds valence {valence}",
                        idx,
                    )
                h = valence - heavy
        records.append(
            AtomRecord(
                element=atom.element,
                h_count=h,
                formal_charge=atom.charge,
                aromatic=atom.aromatic,
            )
        )

    return MolGraph.build(records, bonds)


# ------------------------------------------------------------ graph queries


def heavy_degree(g: MolGraph, i: int) -> int:
    """Number of heavy-atom neighbors of atom i."""
    if not (0 <= i < g.atom_count):
        raise IndexError(f"atom index {i} out of range for {g.atom_count} atoms")
    return len(g.adjacency[i])


def _bfs_depths(g: MolGraph, src: int) -> list[int]:
    dist = [-1] * g.atom_count
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def diameter(g: MolGraph) -> int:
    """Longest shortest path over all atom pairs (0 for a single atom)."""
    best = 0
    for src in range(g.atom_count):
        best = max(best, max(_bfs_depths(g, src)))
    return best


def wiener_index(g: MolGraph) -> int:
    """Sum of shortest-path lengths over unordered atom pairs."""
    total = 0
    for src in range(g.atom_count):
        dist = _bfs_depths(g, src)
        total += sum(dist[src + 1 :])
    # each unordered pair is counted once because only j > src are summed
    return total


def permute(g: MolGraph, perm) -> MolGraph:
    """Relabel atoms: atom i of g becomes atom perm[i] of the result."""
    perm = list(perm)
    n = g.atom_count
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    new_atoms: list[AtomRecord | None] = [None] * n
    for i, atom in enumerate(g.atoms):
        new_atoms[perm[i]] = atom
    new_bonds = [Bond(perm[b.i], perm[b.j], b.order) for b in g.bonds]
    return MolGraph.build(new_atoms, new_bonds)
