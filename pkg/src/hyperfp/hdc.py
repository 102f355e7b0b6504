"""Holographic reduced representation algebra on dense real hypervectors.

Hypervectors are plain float64 numpy arrays of shape (D,). Symbols are drawn
from seeded Gaussian streams so that every vector is reproducible from a
(master_seed, label) pair; composition uses circular convolution (binding),
component-wise addition (bundling), and circular correlation (unbinding).
Scalars are encoded through fractional power encoding on a unit-magnitude
Fourier base.
"""

from __future__ import annotations

import hashlib
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DimensionError",
    "FpeBase",
    "InvalidValueError",
    "SeededGenerator",
    "ShapeMismatchError",
    "bind",
    "bundle",
    "cosine_sim",
    "fpe_encode",
    "normalize",
    "random_hv",
    "unbind",
]

NORM_EPS = 1e-12
FPE_IMAG_TOL = 1e-9
_SEED_MASK = 0xFFFFFFFFFFFFFFFF


class DimensionError(ValueError):
    """Requested hypervector dimension is not usable."""


class ShapeMismatchError(ValueError):
    """Operands do not share the same dimension."""


class InvalidValueError(ValueError):
    """A scalar input is NaN or infinite."""


@dataclass(frozen=True)
class SeededGenerator:
    """Derives independent, reproducible random streams from one master seed.

    Each label gets its own sub-seed via a stable 64-bit hash of
    (master_seed, label), so dictionary vectors never depend on dataset
    content or insertion order.
    """

    master_seed: int

    def sub_seed(self, label: str) -> int:
        h = hashlib.blake2b(digest_size=8)
        h.update((self.master_seed & _SEED_MASK).to_bytes(8, "little"))
        h.update(label.encode("utf-8"))
        return int.from_bytes(h.digest(), "little")

    def rng_for(self, label: str) -> np.random.Generator:
        return np.random.default_rng(self.sub_seed(label))


def _as_vector(v, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1:
        raise ShapeMismatchError(f"{name} must be 1-D, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidValueError(f"{name} has non-finite components")
    return arr


def _check_pair(u, v) -> tuple[np.ndarray, np.ndarray]:
    u = _as_vector(u, "first operand")
    v = _as_vector(v, "second operand")
    if u.shape[0] != v.shape[0]:
        raise ShapeMismatchError(
            f"dimension mismatch: {u.shape[0]} vs {v.shape[0]}"
        )
    return u, v


def random_hv(gen: SeededGenerator, label: str, dim: int) -> np.ndarray:
    """Sample a Gaussian hypervector with component variance 1/dim.

    The draw is a pure function of (gen.master_seed, label, dim); repeated
    calls return bit-identical vectors. At large dim the Euclidean norm
    concentrates near 1.
    """
    if dim < 2:
        raise DimensionError(f"hypervector dimension must be >= 2, got {dim}")
    rng = gen.rng_for(label)
    return rng.standard_normal(dim) / math.sqrt(dim)


def bind(u, v) -> np.ndarray:
    """Circular convolution of two hypervectors, computed in Fourier space.

    p_j = sum_k v_k * u_{(j-k) mod D}. Commutative and associative; the
    result is quasi-orthogonal to both operands for random inputs.
    """
    u, v = _check_pair(u, v)
    d = u.shape[0]
    return np.fft.irfft(np.fft.rfft(u) * np.fft.rfft(v), n=d)


def unbind(p, u) -> np.ndarray:
    """Circular correlation of a composite with one of its factors.

    Correlates against the unitary (phase-only) spectrum of ``u`` so the
    recovery quality of the other factor does not depend on the magnitude
    spectrum of the key; for p = bind(u, v) the result is a noisy version
    of v. Spectral bins of u with near-zero magnitude pass p through
    unchanged.
    """
    p, u = _check_pair(p, u)
    d = p.shape[0]
    fu = np.fft.rfft(u)
    mag = np.abs(fu)
    phase = np.where(mag > NORM_EPS, fu / np.maximum(mag, NORM_EPS), 1.0)
    return np.fft.irfft(np.conj(phase) * np.fft.rfft(p), n=d)


def bundle(vs) -> np.ndarray:
    """Component-wise sum of hypervectors (superposition, no normalization)."""
    vs = list(vs)
    if not vs:
        raise ValueError("bundle() requires a non-empty list of hypervectors")
    arrs = [_as_vector(v) for v in vs]
    d = arrs[0].shape[0]
    for a in arrs[1:]:
        if a.shape[0] != d:
            raise ShapeMismatchError(
                f"dimension mismatch in bundle: {a.shape[0]} vs {d}"
            )
    return np.sum(np.stack(arrs, axis=0), axis=0)


def cosine_sim(u, v) -> float:
    """Cosine similarity in [-1, 1]; 0 for degenerate (zero-norm) input."""
    u, v = _check_pair(u, v)
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu < NORM_EPS or nv < NORM_EPS:
        if nu < NORM_EPS and nv < NORM_EPS:
            warnings.warn(
                "cosine similarity of two zero vectors is undefined; returning 0",
                RuntimeWarning,
                stacklevel=2,
            )
        return 0.0
    sim = float(np.dot(u, v) / (nu * nv))
    return max(-1.0, min(1.0, sim))


def normalize(u) -> np.ndarray:
    """Scale to unit Euclidean norm; vectors with norm <= 1e-12 pass through."""
    u = _as_vector(u)
    n = float(np.linalg.norm(u))
    if n <= NORM_EPS:
        return u.copy()
    return u / n


@dataclass(frozen=True, eq=False)
class FpeBase:
    """Base vector for fractional power encoding of one scalar channel.

    ``base`` has a Fourier spectrum of unit magnitudes with Hermitian
    symmetry, so every encoded value is real. ``bandwidth`` sets the scale
    of the similarity decay: inputs closer than the bandwidth map to highly
    similar vectors, inputs much farther apart to near-orthogonal ones.
    """

    base: np.ndarray
    bandwidth: float
    phases: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_generator(
        cls, gen: SeededGenerator, label: str, dim: int, bandwidth: float
    ) -> "FpeBase":
        if dim < 2:
            raise DimensionError(f"FPE dimension must be >= 2, got {dim}")
        if not (bandwidth > 0.0):
            raise InvalidValueError(f"bandwidth must be positive, got {bandwidth}")
        rng = gen.rng_for(label)
        phases = np.zeros(dim)
        half = (dim - 1) // 2
        phases[1 : half + 1] = rng.uniform(-np.pi, np.pi, half)
        # real bins (0 and, for even dim, D/2) stay at phase 0 so fractional
        # powers of the spectrum remain Hermitian
        phases[dim - half :] = -phases[1 : half + 1][::-1]
        base = np.fft.ifft(np.exp(1j * phases))
        return cls(base=base.real.copy(), bandwidth=float(bandwidth), phases=phases)

    @classmethod
    def from_vector(cls, base, bandwidth: float) -> "FpeBase":
        base = _as_vector(base, "FPE base")
        if not (bandwidth > 0.0):
            raise InvalidValueError(f"bandwidth must be positive, got {bandwidth}")
        spectrum = np.fft.fft(base)
        mags = np.abs(spectrum)
        if np.max(np.abs(mags - 1.0)) > FPE_IMAG_TOL:
            raise InvalidValueError(
                "FPE base spectrum must have unit magnitudes "
                f"(max deviation {np.max(np.abs(mags - 1.0)):.3e})"
            )
        return cls(base=base.copy(), bandwidth=float(bandwidth), phases=np.angle(spectrum))

    @property
    def dim(self) -> int:
        return self.base.shape[0]


def fpe_encode(base: FpeBase, x: float) -> np.ndarray:
    """Encode a scalar by raising the base spectrum to the power x / bandwidth.

    The result must be real up to a 1e-9 imaginary residue (guaranteed by the
    Hermitian base); anything larger raises instead of being discarded.
    """
    x = float(x)
    if not math.isfinite(x):
        raise InvalidValueError(f"cannot encode non-finite value {x!r}")
    spectrum = np.exp(1j * base.phases * (x / base.bandwidth))
    out = np.fft.ifft(spectrum)
    residue = float(np.max(np.abs(out.imag)))
    if residue > FPE_IMAG_TOL:
        raise InvalidValueError(
            f"FPE result has imaginary residue {residue:.3e} > {FPE_IMAG_TOL:.0e}; "
            "base spectrum is not Hermitian-symmetric"
        )
    return out.real.copy()
