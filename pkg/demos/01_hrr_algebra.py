"""Tour of the hypervector algebra: quasi-orthogonality, binding, bundling,
unbinding, and fractional power encoding.

Run with: python demos/01_hrr_algebra.py
"""

import numpy as np

from hyperfp import (
    FpeBase,
    SeededGenerator,
    bind,
    bundle,
    cosine_sim,
    fpe_encode,
    random_hv,
    unbind,
)

gen = SeededGenerator(master_seed=7)
D = 10000

# Random hypervectors are nearly orthogonal: that is what lets them act as
# distinct symbols.
x = random_hv(gen, "symbol:x", D)
y = random_hv(gen, "symbol:y", D)
print(f"norm of x            : {np.linalg.norm(x):.4f} (approaches 1 for large D)")
print(f"cos(x, y)            : {cosine_sim(x, y):+.4f} (random pair, near 0)")

# Binding composes two symbols into a third one, dissimilar to both.
p = bind(x, y)
print(f"cos(x (*) y, x)      : {cosine_sim(p, x):+.4f} (bound vector hides x)")

# Bundling superposes symbols while staying similar to each of them.
s = bundle([x, y])
print(f"cos(x (+) y, x)      : {cosine_sim(s, x):+.4f} (superposition keeps x visible)")

# Unbinding recovers a noisy version of the other operand.
recovered = unbind(p, x)
print(f"cos(unbind(p,x), y)  : {cosine_sim(recovered, y):+.4f} (noisy recovery of y)")
w = random_hv(gen, "symbol:w", D)
print(f"cos(unbind(p,x), w)  : {cosine_sim(recovered, w):+.4f} (unrelated stays orthogonal)")

# Fractional power encoding turns scalars into hypervectors whose similarity
# decays with the scalar difference, at a rate set by the bandwidth.
base = FpeBase.from_generator(gen, "fpe:demo", 2048, bandwidth=1.0)
print("\nFPE similarity profile (bandwidth 1.0):")
for delta in (0.0, 0.25, 0.5, 1.0, 2.0, 5.0):
    sim = cosine_sim(fpe_encode(base, 0.0), fpe_encode(base, delta))
    print(f"  cos(enc(0), enc({delta:4.2f})) = {sim:+.4f}")
