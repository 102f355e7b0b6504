"""Training-free molecular fingerprints via hyperdimensional computing.

The package encodes molecular graphs into fixed-dimension unit-norm real
vectors (message passing over holographic reduced representations), provides
a hashed circular bit fingerprint as a baseline, and ships an evaluation
harness for graph-edit-distance correlation, k-NN regression, and Bayesian
optimization experiments.
"""

from hyperfp.hdc import (
    FpeBase,
    SeededGenerator,
    bind,
    bundle,
    cosine_sim,
    fpe_encode,
    normalize,
    random_hv,
    unbind,
)

__version__ = "0.1.0"

__all__ = [
    "FpeBase",
    "SeededGenerator",
    "__version__",
    "bind",
    "bundle",
    "cosine_sim",
    "fpe_encode",
    "normalize",
    "random_hv",
    "unbind",
]
