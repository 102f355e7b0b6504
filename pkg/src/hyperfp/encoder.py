"""Hyperdimensional fingerprint pipeline for molecular graphs.

Each atom is initialized by binding three dictionary hypervectors (element,
hydrogen count, heavy-bond count). Message passing propagates structural
information for a configurable number of rounds; per-node states from all
rounds are aggregated, summed into a structural readout, and merged with
fractional-power-encoded global attributes (graph size and diameter) into a
unit-norm fingerprint.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from hyperfp.hdc import (
    FpeBase,
    NORM_EPS,
    SeededGenerator,
    ShapeMismatchError,
    fpe_encode,
    normalize,
    random_hv,
)
from hyperfp.molgraph import (
    AtomRecord,
    MolGraph,
    SUPPORTED_ELEMENTS,
    diameter,
)

__all__ = [
    "DICTIONARY_RANGE",
    "DictionaryDomainError",
    "DictionarySet",
    "EncoderConfig",
    "EncodingError",
    "Fingerprint",
    "HdfEncoder",
    "UnsupportedElementError",
    "build_dictionaries",
    "encode",
    "global_attrs",
    "init_node",
    "message_pass",
    "node_aggregate",
    "readout",
]

# hydrogen counts and heavy-bond counts outside this range are chemically
# implausible and have no dictionary entry
DICTIONARY_RANGE = range(0, 9)

UNIT_NORM_TOL = 1e-9


class DictionaryDomainError(ValueError):
    """Atom property falls outside the dictionary domains."""


class UnsupportedElementError(DictionaryDomainError):
    """Element has no dictionary entry."""


class EncodingError(RuntimeError):
    """Encoding produced a degenerate (non unit-norm) fingerprint."""


@dataclass(frozen=True)
class EncoderConfig:
    dim: int = 1024
    depth: int = 2
    master_seed: int = 42
    sigma_size: float = 1.0
    sigma_diam: float = 1.0
    include_global_attrs: bool = True

    def __post_init__(self):
        if self.dim < 8:
            raise ValueError(f"dim must be >= 8, got {self.dim}")
        if not (0 <= self.depth <= 16):
            raise ValueError(f"depth must be in 0..16, got {self.depth}")
        if not (self.sigma_size > 0.0 and self.sigma_diam > 0.0):
            raise ValueError("FPE bandwidths must be positive")


@dataclass(frozen=True, eq=False)
class DictionarySet:
    """Fixed random codebooks plus the two FPE bases for global attributes.

    Every entry is reproducible from (master_seed, label); the cached rfft
    spectra are derived data used to speed up node initialization.
    """

    atom_vectors: Mapping[str, np.ndarray]
    hs_vectors: Mapping[int, np.ndarray]
    bond_count_vectors: Mapping[int, np.ndarray]
    fpe_size: FpeBase
    fpe_diam: FpeBase
    _atom_spectra: Mapping[str, np.ndarray] = field(repr=False, compare=False)
    _hs_spectra: Mapping[int, np.ndarray] = field(repr=False, compare=False)
    _bond_spectra: Mapping[int, np.ndarray] = field(repr=False, compare=False)


def build_dictionaries(config: EncoderConfig) -> DictionarySet:
    gen = SeededGenerator(config.master_seed)
    dim = config.dim
    atom_vectors = {
        el: random_hv(gen, f"atom:{el}", dim) for el in SUPPORTED_ELEMENTS
    }
    hs_vectors = {k: random_hv(gen, f"hs:{k}", dim) for k in DICTIONARY_RANGE}
    bond_count_vectors = {
        k: random_hv(gen, f"bonds:{k}", dim) for k in DICTIONARY_RANGE
    }
    return DictionarySet(
        atom_vectors=MappingProxyType(atom_vectors),
        hs_vectors=MappingProxyType(hs_vectors),
        bond_count_vectors=MappingProxyType(bond_count_vectors),
        fpe_size=FpeBase.from_generator(gen, "fpe:size", dim, config.sigma_size),
        fpe_diam=FpeBase.from_generator(gen, "fpe:diam", dim, config.sigma_diam),
        _atom_spectra=MappingProxyType(
            {el: np.fft.rfft(v) for el, v in atom_vectors.items()}
        ),
        _hs_spectra=MappingProxyType(
            {k: np.fft.rfft(v) for k, v in hs_vectors.items()}
        ),
        _bond_spectra=MappingProxyType(
            {k: np.fft.rfft(v) for k, v in bond_count_vectors.items()}
        ),
    )


def _check_domains(dicts: DictionarySet, atom: AtomRecord, degree: int) -> None:
    if atom.element not in dicts.atom_vectors:
        raise UnsupportedElementError(
            f"element {atom.element!r} has no dictionary entry"
        )
    if atom.h_count not in dicts.hs_vectors:
        raise DictionaryDomainError(
            f"h_count {atom.h_count} outside dictionary domain "
            f"{DICTIONARY_RANGE.start}..{DICTIONARY_RANGE.stop - 1}"
        )
    if degree not in dicts.bond_count_vectors:
        raise DictionaryDomainError(
            f"heavy degree {degree} outside dictionary domain "
            f"{DICTIONARY_RANGE.start}..{DICTIONARY_RANGE.stop - 1}"
        )


def init_node(dicts: DictionarySet, atom: AtomRecord, degree: int) -> np.ndarray:
    """Bind the element, hydrogen-count, and bond-count dictionary vectors."""
    _check_domains(dicts, atom, degree)
    spectrum = (
        dicts._atom_spectra[atom.element]
        * dicts._hs_spectra[atom.h_count]
        * dicts._bond_spectra[degree]
    )
    dim = dicts.atom_vectors[atom.element].shape[0]
    return np.fft.irfft(spectrum, n=dim)


def message_pass(g: MolGraph, states) -> np.ndarray:
    """One synchronous message-passing round.

    new_state[i] = normalize(sum over neighbors j of bind(state[i], state[j])),
    computed from the previous round's states only. Atoms with no neighbors
    keep their previous state so their identity is not destroyed.
    """
    states = np.asarray(states, dtype=np.float64)
    if states.ndim != 2 or states.shape[0] != g.atom_count:
        raise ShapeMismatchError(
            f"states of shape {states.shape} do not align with "
            f"{g.atom_count} atoms"
        )
    dim = states.shape[1]
    spectra = np.fft.rfft(states, axis=1)
    neighbor_sums = np.zeros_like(spectra)
    for i, nbrs in enumerate(g.adjacency):
        if nbrs:
            neighbor_sums[i] = spectra[list(nbrs)].sum(axis=0)
    new = np.fft.irfft(spectra * neighbor_sums, n=dim, axis=1)
    norms = np.linalg.norm(new, axis=1)
    mask = norms > NORM_EPS
    new[mask] /= norms[mask, None]
    for i, nbrs in enumerate(g.adjacency):
        if not nbrs:
            new[i] = states[i]
    return new


def node_aggregate(histories) -> np.ndarray:
    """Per node, normalize the sum of its states over all rounds 0..L.

    ``histories`` holds, for each node, the list of its L+1 round states.
    """
    try:
        arr = np.asarray(histories, dtype=np.float64)
    except (ValueError, TypeError) as err:
        raise ShapeMismatchError(f"ragged per-node histories: {err}") from None
    if arr.ndim != 3:
        raise ShapeMismatchError(
            f"expected histories of shape (nodes, rounds, dim), got {arr.shape}"
        )
    summed = arr.sum(axis=1)
    norms = np.linalg.norm(summed, axis=1)
    mask = norms > NORM_EPS
    summed[mask] /= norms[mask, None]
    return summed


def readout(node_embeddings) -> np.ndarray:
    """Order-free structural readout: plain sum of the node embeddings."""
    arr = np.asarray(node_embeddings, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("readout requires a non-empty (nodes, dim) array")
    return arr.sum(axis=0)


def global_attrs(dicts: DictionarySet, g: MolGraph) -> np.ndarray:
    """Bundle of the encoded graph size and graph diameter."""
    return fpe_encode(dicts.fpe_size, g.atom_count) + fpe_encode(
        dicts.fpe_diam, diameter(g)
    )


@dataclass(frozen=True, eq=False)
class Fingerprint:
    vector: np.ndarray
    config: EncoderConfig

    @property
    def dim(self) -> int:
        return self.vector.shape[0]


class HdfEncoder:
    """Reusable encoder: builds the dictionaries once, then encodes graphs.

    Immutable after construction; safe to share across threads.
    """

    def __init__(self, config: EncoderConfig | None = None):
        self.config = config if config is not None else EncoderConfig()
        self.dicts = build_dictionaries(self.config)

    def _init_states(self, g: MolGraph) -> np.ndarray:
        spectra = np.empty(
            (g.atom_count, self.config.dim // 2 + 1), dtype=np.complex128
        )
        for i, atom in enumerate(g.atoms):
            degree = len(g.adjacency[i])
            _check_domains(self.dicts, atom, degree)
            spectra[i] = (
                self.dicts._atom_spectra[atom.element]
                * self.dicts._hs_spectra[atom.h_count]
                * self.dicts._bond_spectra[degree]
            )
        return np.fft.irfft(spectra, n=self.config.dim, axis=1)

    def encode(self, g: MolGraph) -> Fingerprint:
        cfg = self.config
        rounds = [self._init_states(g)]
        for _ in range(cfg.depth):
            rounds.append(message_pass(g, rounds[-1]))
        node_embeddings = node_aggregate(np.stack(rounds, axis=1))
        structural = readout(node_embeddings)
        if cfg.include_global_attrs:
            vec = normalize(
                normalize(structural) + normalize(global_attrs(self.dicts, g))
            )
        else:
            vec = normalize(structural)
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise EncodingError(
                f"fingerprint norm {norm} deviates from 1; degenerate readout"
            )
        return Fingerprint(vector=vec, config=cfg)


def encode(config: EncoderConfig, g: MolGraph) -> Fingerprint:
    """One-shot convenience wrapper; prefer HdfEncoder for many molecules."""
    return HdfEncoder(config).encode(g)
