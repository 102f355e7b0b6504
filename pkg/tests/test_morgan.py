import numpy as np
import pytest

from corpus_data import CORPUS
from hyperfp.molgraph import parse_smiles, permute
from hyperfp.morgan import (
    BitFingerprint,
    MorganConfig,
    atom_invariant,
    morgan_encode,
    tanimoto,
)


def all_identifiers(config, g):
    """Re-derive the multiset of (atom, radius) identifiers independently."""
    from hyperfp.morgan import _BOND_CODE, _fnv1a, _i64, _u64

    order_code = {}
    for b in g.bonds:
        order_code[(b.i, b.j)] = _BOND_CODE[b.order]
        order_code[(b.j, b.i)] = _BOND_CODE[b.order]
    ids = [atom_invariant(a, len(g.adjacency[i])) for i, a in enumerate(g.atoms)]
    out = list(ids)
    for _ in range(config.radius):
        ids = [
            _fnv1a(
                _u64(ids[i])
                + b"".join(
                    _i64(c) + _u64(n)
                    for c, n in sorted(
                        (order_code[(i, j)], ids[j]) for j in g.adjacency[i]
                    )
                )
            )
            for i in range(g.atom_count)
        ]
        out.extend(ids)
    return out


# ---------------------------------------------------------------- invariant


def test_atom_invariant_deterministic():
    g = parse_smiles("CCC")
    assert atom_invariant(g.atoms[0], 1) == atom_invariant(g.atoms[2], 1)


def test_atom_invariant_degree_sensitive():
    a = parse_smiles("CCC").atoms[1]
    assert atom_invariant(a, 2) != atom_invariant(a, 3)


def test_atom_invariant_no_corpus_collisions():
    seen = {}
    for smiles in CORPUS:
        g = parse_smiles(smiles)
        for i, atom in enumerate(g.atoms):
            key = (
                atom.element,
                len(g.adjacency[i]),
                atom.h_count,
                atom.formal_charge,
            )
            inv = atom_invariant(atom, len(g.adjacency[i]))
            if key in seen:
                assert seen[key] == inv
            else:
                for other_key, other_inv in seen.items():
                    assert other_inv != inv, (key, other_key)
                seen[key] = inv


# ------------------------------------------------------------------- encode


def test_methane_radius0_single_bit():
    fp = morgan_encode(MorganConfig(radius=0, nbits=1024), parse_smiles("C"))
    assert fp.popcount() == 1


def test_permutation_invariance_simple():
    cfg = MorganConfig()
    a = morgan_encode(cfg, parse_smiles("CCO"))
    b = morgan_encode(cfg, parse_smiles("OCC"))
    assert np.array_equal(a.bits, b.bits)


def test_permutation_invariance_random_relabelings():
    rng = np.random.default_rng(0)
    cfg = MorganConfig()
    for smiles in CORPUS[:20]:
        g = parse_smiles(smiles)
        ref = morgan_encode(cfg, g)
        for _ in range(3):
            perm = list(rng.permutation(g.atom_count))
            assert np.array_equal(ref.bits, morgan_encode(cfg, permute(g, perm)).bits)


def test_permutation_invariance_exhaustive_small():
    # every relabeling for molecules small enough to enumerate; sampled
    # relabelings keep the 8-atom cases within test-runtime budget
    import itertools

    rng = np.random.default_rng(1)
    cfg = MorganConfig(radius=2, nbits=256)
    for smiles in CORPUS:
        g = parse_smiles(smiles)
        if g.atom_count > 8:
            continue
        ref = morgan_encode(cfg, g)
        if g.atom_count <= 7:
            perms = itertools.permutations(range(g.atom_count))
        else:
            perms = (
                tuple(rng.permutation(g.atom_count)) for _ in range(300)
            )
        for perm in perms:
            assert np.array_equal(
                ref.bits, morgan_encode(cfg, permute(g, list(perm))).bits
            ), (smiles, perm)


def test_radius_monotone_bit_accumulation():
    g = parse_smiles("CCO")
    prev = set()
    for radius in range(4):
        fp = morgan_encode(MorganConfig(radius=radius, nbits=1024), g)
        on = set(fp.on_bits())
        assert prev <= on
        prev = on


def test_folding_loses_information():
    g = parse_smiles("CC(C)CC(NC(=O)CO)C(=O)OCC")  # 15 atoms, low symmetry
    cfg = MorganConfig(radius=2, nbits=32)
    identifiers = all_identifiers(cfg, g)
    assert len(set(identifiers)) > 32
    fp = morgan_encode(cfg, g)
    assert fp.popcount() < len(set(identifiers))
    assert fp.popcount() <= 32


def test_encode_matches_identifier_oracle():
    cfg = MorganConfig(radius=2, nbits=2048)
    for smiles in CORPUS[:15]:
        g = parse_smiles(smiles)
        expected = {i % cfg.nbits for i in all_identifiers(cfg, g)}
        assert set(morgan_encode(cfg, g).on_bits()) == expected


# ----------------------------------------------------------------- tanimoto


def test_tanimoto_self():
    fp = morgan_encode(MorganConfig(), parse_smiles("CCO"))
    assert tanimoto(fp, fp) == 1.0


def test_tanimoto_disjoint():
    a = BitFingerprint.from_on_bits([0, 1], 16)
    b = BitFingerprint.from_on_bits([2, 3], 16)
    assert tanimoto(a, b) == 0.0


def test_tanimoto_direct_count():
    a = BitFingerprint.from_on_bits([0, 1], 4)
    b = BitFingerprint.from_on_bits([0, 2], 4)
    assert tanimoto(a, b) == pytest.approx(1 / 3)


def test_tanimoto_both_empty():
    a = BitFingerprint.from_on_bits([], 8)
    assert tanimoto(a, a) == 1.0


def test_tanimoto_length_mismatch():
    a = BitFingerprint.from_on_bits([0], 8)
    b = BitFingerprint.from_on_bits([0], 16)
    with pytest.raises(ValueError):
        tanimoto(a, b)


def test_config_guards():
    with pytest.raises(ValueError):
        MorganConfig(radius=9)
    with pytest.raises(ValueError):
        MorganConfig(nbits=4)
