"""Thin scripting wrapper around the hyperfp fingerprint engine.

Exposes the stable high-level surface only: molecule encoding, the hashed
circular baseline, the two similarity measures, and SMILES diagnostics.
Vectors come back as plain numpy arrays; encoders are immutable and safe to
share across threads. Outputs are bit-identical to the hyperfp command line
for the same configuration.
"""

from __future__ import annotations

import numpy as np

from hyperfp.encoder import EncoderConfig, HdfEncoder
from hyperfp.hdc import cosine_sim
from hyperfp.molgraph import (
    SmilesError,
    SmilesSyntaxError,
    UnsupportedFeatureError,
    ValenceError,
    parse_smiles,
)
from hyperfp.morgan import BitFingerprint, MorganConfig
from hyperfp.morgan import morgan_encode as _morgan_encode_graph
from hyperfp.morgan import tanimoto as _tanimoto_bits

__version__ = "0.1.0"

__all__ = [
    "BoundEncoder",
    "SmilesError",
    "SmilesSyntaxError",
    "UnsupportedFeatureError",
    "ValenceError",
    "check_smiles",
    "cosine_similarity",
    "morgan_bits",
    "tanimoto_similarity",
]


class BoundEncoder:
    """Immutable handle to one encoder configuration and its dictionaries.

    A failed encode (for example a SMILES syntax error) raises but leaves
    the encoder fully usable.
    """

    def __init__(
        self,
        dim: int = 1024,
        depth: int = 2,
        seed: int = 42,
        sigma_size: float = 1.0,
        sigma_diam: float = 1.0,
        include_global_attrs: bool = True,
    ):
        self._encoder = HdfEncoder(
            EncoderConfig(
                dim=dim,
                depth=depth,
                master_seed=seed,
                sigma_size=sigma_size,
                sigma_diam=sigma_diam,
                include_global_attrs=include_global_attrs,
            )
        )

    @property
    def dim(self) -> int:
        return self._encoder.config.dim

    @property
    def depth(self) -> int:
        return self._encoder.config.depth

    @property
    def seed(self) -> int:
        return self._encoder.config.master_seed

    def encode(self, smiles: str) -> np.ndarray:
        """Unit-norm fingerprint of one molecule."""
        return self._encoder.encode(parse_smiles(smiles)).vector

    def encode_batch(self, smiles_list) -> list[np.ndarray]:
        """Fingerprints in input order; fails on the first invalid entry."""
        out = []
        for index, smiles in enumerate(smiles_list):
            try:
                out.append(self.encode(smiles))
            except SmilesError as err:
                raise SmilesError(f"entry {index}: {err}") from err
        return out

    def batch_similarity(self, smiles_list) -> np.ndarray:
        """Symmetric cosine-similarity matrix with a unit diagonal."""
        vectors = self.encode_batch(smiles_list)
        n = len(vectors)
        matrix = np.eye(n)
        for i in range(n):
            for j in range(i + 1, n):
                matrix[i, j] = matrix[j, i] = cosine_sim(vectors[i], vectors[j])
        return matrix


def morgan_bits(smiles: str, radius: int = 2, nbits: int = 1024) -> np.ndarray:
    """Hashed circular fingerprint as a boolean vector."""
    fp = _morgan_encode_graph(MorganConfig(radius=radius, nbits=nbits), parse_smiles(smiles))
    return fp.bits.copy()


def cosine_similarity(a, b) -> float:
    return cosine_sim(np.asarray(a, dtype=np.float64), np.asarray(b, dtype=np.float64))


def tanimoto_similarity(a, b) -> float:
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    return _tanimoto_bits(
        BitFingerprint(bits=a, nbits=a.shape[0]),
        BitFingerprint(bits=b, nbits=b.shape[0]),
    )


def check_smiles(smiles: str) -> dict:
    """Parse diagnostics without raising: ok flag, atom count, or the error."""
    try:
        graph = parse_smiles(smiles)
    except SmilesError as err:
        return {
            "ok": False,
            "error": str(err),
            "error_type": type(err).__name__,
            "offset": err.offset,
            "token": getattr(err, "token", None),
        }
    return {"ok": True, "atoms": graph.atom_count, "bonds": len(graph.bonds)}
