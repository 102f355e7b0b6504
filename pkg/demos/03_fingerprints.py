"""Encoding molecules as hyperdimensional fingerprints and as hashed bit
fingerprints, and how their similarities compare.

Run with: python demos/03_fingerprints.py
"""

import numpy as np

from hyperfp.encoder import EncoderConfig, HdfEncoder
from hyperfp.hdc import cosine_sim
from hyperfp.molgraph import parse_smiles
from hyperfp.morgan import MorganConfig, morgan_encode, tanimoto

MOLECULES = [
    "CCO",            # ethanol
    "CCCO",           # propanol: one edit away
    "CCN",            # ethylamine
    "c1ccccc1",       # benzene
    "Cc1ccccc1",      # toluene
    "CC(=O)O",        # acetic acid
]

encoder = HdfEncoder(EncoderConfig(dim=1024, depth=2, master_seed=42))
fingerprints = {s: encoder.encode(parse_smiles(s)).vector for s in MOLECULES}

print("every fingerprint has unit norm and fixed dimension:")
for s, v in fingerprints.items():
    print(f"  {s:12s} dim={v.shape[0]}  norm={np.linalg.norm(v):.6f}")

print("\ncosine similarity matrix (hyperdimensional fingerprints):")
header = "            " + " ".join(f"{s:>10s}" for s in MOLECULES)
print(header)
for a in MOLECULES:
    row = " ".join(
        f"{cosine_sim(fingerprints[a], fingerprints[b]):10.3f}" for b in MOLECULES
    )
    print(f"{a:12s}{row}")

# The same molecules through the hashed circular fingerprint baseline.
morgan_cfg = MorganConfig(radius=2, nbits=1024)
bit_fps = {s: morgan_encode(morgan_cfg, parse_smiles(s)) for s in MOLECULES}
print("\nTanimoto similarity (hashed circular baseline):")
print(header)
for a in MOLECULES:
    row = " ".join(f"{tanimoto(bit_fps[a], bit_fps[b]):10.3f}" for b in MOLECULES)
    print(f"{a:12s}{row}")

# Same molecule written differently encodes identically.
a = encoder.encode(parse_smiles("CCO")).vector
b = encoder.encode(parse_smiles("OCC")).vector
print(f"\nencode('CCO') vs encode('OCC'): cos = {cosine_sim(a, b):.9f}")

# Dimensionality is a free knob: similarities persist at very low D.
small = HdfEncoder(EncoderConfig(dim=32, depth=2, master_seed=42))
sa = small.encode(parse_smiles("CCO")).vector
sb = small.encode(parse_smiles("CCCO")).vector
sc = small.encode(parse_smiles("c1ccccc1")).vector
print(
    f"at D=32: cos(ethanol, propanol) = {cosine_sim(sa, sb):.3f}, "
    f"cos(ethanol, benzene) = {cosine_sim(sa, sc):.3f}"
)
