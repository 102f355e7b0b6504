"""Hashed circular bit fingerprint baseline.

Atoms start from an invariant hash of (atomic number, heavy degree, hydrogen
count, formal charge); identifiers are iteratively rehashed over expanding
neighborhoods and every identifier from every radius folds into a fixed-length
bit vector by modulo. Hashing is 64-bit FNV-1a over a little-endian byte
encoding, so fingerprints are stable across runs and platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from hyperfp.molgraph import ATOMIC_NUMBER, AtomRecord, MolGraph

__all__ = [
    "BitFingerprint",
    "MorganConfig",
    "atom_invariant",
    "morgan_encode",
    "tanimoto",
]

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

# aromatic bonds get their own integer code in neighbor encodings
_BOND_CODE = {1.0: 1, 2.0: 2, 3.0: 3, 1.5: 4}


def _fnv1a(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _i64(value: int) -> bytes:
    return int(value).to_bytes(8, "little", signed=True)


def _u64(value: int) -> bytes:
    return int(value).to_bytes(8, "little", signed=False)


@dataclass(frozen=True)
class MorganConfig:
    radius: int = 2
    nbits: int = 1024

    def __post_init__(self):
        if not (0 <= self.radius <= 8):
            raise ValueError(f"radius must be in 0..8, got {self.radius}")
        if self.nbits < 8:
            raise ValueError(f"nbits must be >= 8, got {self.nbits}")


@dataclass(frozen=True, eq=False)
class BitFingerprint:
    bits: np.ndarray
    nbits: int

    def popcount(self) -> int:
        return int(self.bits.sum())

    def on_bits(self) -> list[int]:
        """Indices of set bits, ascending."""
        return [int(i) for i in np.flatnonzero(self.bits)]

    def as_real_vector(self) -> np.ndarray:
        """Bits as a {0,1} float vector, e.g. for kernel methods."""
        return self.bits.astype(np.float64)

    @classmethod
    def from_on_bits(cls, indices, nbits: int) -> "BitFingerprint":
        bits = np.zeros(nbits, dtype=bool)
        for i in indices:
            if not (0 <= i < nbits):
                raise ValueError(f"bit index {i} out of range for nbits={nbits}")
            bits[i] = True
        return cls(bits=bits, nbits=nbits)


def atom_invariant(atom: AtomRecord, degree: int) -> int:
    """Stable 64-bit identifier of an atom's local invariants.

    Covers atomic number, heavy degree, hydrogen count, and formal charge;
    the isotope slot is fixed to 0 (isotopes are outside the parser subset).
    """
    payload = (
        _i64(ATOMIC_NUMBER[atom.element])
        + _i64(degree)
        + _i64(atom.h_count)
        + _i64(atom.formal_charge)
        + _i64(0)
    )
    return _fnv1a(payload)


def morgan_encode(config: MorganConfig, g: MolGraph) -> BitFingerprint:
    """Fold iterated circular-neighborhood identifiers into a bit vector.

    Every (atom, radius) identifier sets bit (id mod nbits); neighbor lists
    are sorted by (bond code, identifier) so the result is invariant under
    atom relabeling.
    """
    order_code = {}
    for b in g.bonds:
        code = _BOND_CODE[b.order]
        order_code[(b.i, b.j)] = code
        order_code[(b.j, b.i)] = code

    ids = [
        atom_invariant(atom, len(g.adjacency[i]))
        for i, atom in enumerate(g.atoms)
    ]
    bits = np.zeros(config.nbits, dtype=bool)
    for ident in ids:
        bits[ident % config.nbits] = True

    for _ in range(config.radius):
        new_ids = []
        for i in range(g.atom_count):
            pairs = sorted(
                (order_code[(i, j)], ids[j]) for j in g.adjacency[i]
            )
            payload = _u64(ids[i]) + b"".join(
                _i64(code) + _u64(ident) for code, ident in pairs
            )
            new_ids.append(_fnv1a(payload))
        ids = new_ids
        for ident in ids:
            bits[ident % config.nbits] = True

    return BitFingerprint(bits=bits, nbits=config.nbits)


def tanimoto(a: BitFingerprint, b: BitFingerprint) -> float:
    """|a AND b| / |a OR b|; two empty fingerprints count as identical (1.0)."""
    if a.nbits != b.nbits:
        raise ValueError(f"nbits mismatch: {a.nbits} vs {b.nbits}")
    union = int(np.logical_or(a.bits, b.bits).sum())
    if union == 0:
        return 1.0
    inter = int(np.logical_and(a.bits, b.bits).sum())
    return inter / union
