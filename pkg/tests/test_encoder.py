import numpy as np
import pytest

from corpus_data import CORPUS
from hyperfp.hdc import ShapeMismatchError, bind, cosine_sim, normalize
from hyperfp.encoder import (
    DictionaryDomainError,
    EncoderConfig,
    HdfEncoder,
    UnsupportedElementError,
    build_dictionaries,
    encode,
    global_attrs,
    init_node,
    message_pass,
    node_aggregate,
    readout,
)
from hyperfp.molgraph import AtomRecord, parse_smiles, permute


@pytest.fixture(scope="module")
def dicts():
    return build_dictionaries(EncoderConfig(dim=10000))


@pytest.fixture(scope="module")
def encoder():
    return HdfEncoder(EncoderConfig(dim=1024, depth=2, master_seed=42))


# ------------------------------------------------------------- dictionaries


def test_dictionaries_reproducible():
    a = build_dictionaries(EncoderConfig(dim=256, master_seed=5))
    b = build_dictionaries(EncoderConfig(dim=256, master_seed=5))
    assert np.array_equal(a.atom_vectors["C"], b.atom_vectors["C"])
    assert np.array_equal(a.hs_vectors[3], b.hs_vectors[3])
    assert np.array_equal(a.fpe_size.base, b.fpe_size.base)


def test_dictionary_entries_quasi_orthogonal(dicts):
    entries = (
        list(dicts.atom_vectors.values())
        + list(dicts.hs_vectors.values())
        + list(dicts.bond_count_vectors.values())
    )
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            assert abs(cosine_sim(entries[i], entries[j])) < 0.1


# ---------------------------------------------------------------- init_node


def test_init_node_deterministic(dicts):
    a = AtomRecord("C", 3)
    b = AtomRecord("C", 3)
    assert np.array_equal(init_node(dicts, a, 1), init_node(dicts, b, 1))


def test_init_node_distinct_atoms_orthogonal(dicts):
    c = init_node(dicts, AtomRecord("C", 3), 1)
    o = init_node(dicts, AtomRecord("O", 1), 1)
    assert abs(cosine_sim(c, o)) < 0.05


def test_init_node_binding_order_free(dicts):
    e = dicts.atom_vectors["N"]
    h = dicts.hs_vectors[2]
    b = dicts.bond_count_vectors[1]
    ref = init_node(dicts, AtomRecord("N", 2), 1)
    for combo in (bind(bind(e, h), b), bind(e, bind(h, b)), bind(bind(b, e), h)):
        assert np.max(np.abs(combo - ref)) < 1e-9


def test_init_node_domain_errors(dicts):
    with pytest.raises(UnsupportedElementError):
        init_node(dicts, AtomRecord("Zn", 0), 0)
    with pytest.raises(DictionaryDomainError):
        init_node(dicts, AtomRecord("C", 12), 0)
    with pytest.raises(DictionaryDomainError):
        init_node(dicts, AtomRecord("C", 0), 9)


# ------------------------------------------------------------- message_pass


def test_message_pass_single_atom_unchanged():
    g = parse_smiles("C")
    enc = HdfEncoder(EncoderConfig(dim=128))
    states = enc._init_states(g)
    out = states
    for _ in range(4):
        out = message_pass(g, out)
    assert np.array_equal(out, states)


def test_message_pass_two_atoms_hand_evaluated():
    g = parse_smiles("CO")
    enc = HdfEncoder(EncoderConfig(dim=512))
    states = enc._init_states(g)
    out = message_pass(g, states)
    expected = normalize(bind(states[0], states[1]))
    assert np.max(np.abs(out[0] - expected)) < 1e-12
    assert np.max(np.abs(out[1] - expected)) < 1e-12


def test_message_pass_permutation_equivariant():
    g = parse_smiles("CC(=O)O")
    perm = [2, 0, 3, 1]
    pg = permute(g, perm)
    enc = HdfEncoder(EncoderConfig(dim=256))
    states = enc._init_states(g)
    pstates = enc._init_states(pg)
    out = message_pass(g, states)
    pout = message_pass(pg, pstates)
    for i in range(g.atom_count):
        assert np.max(np.abs(pout[perm[i]] - out[i])) < 1e-9


def test_message_pass_shape_check():
    g = parse_smiles("CCO")
    with pytest.raises(ShapeMismatchError):
        message_pass(g, np.zeros((2, 64)))


# ----------------------------------------------------- aggregation, readout


def test_node_aggregate_depth_zero():
    x = np.random.default_rng(0).standard_normal((4, 1, 64))
    out = node_aggregate(x)
    for i in range(4):
        assert np.allclose(out[i], normalize(x[i, 0]))


def test_node_aggregate_repeated_state():
    x = np.random.default_rng(1).standard_normal(64)
    out = node_aggregate([[x, x]])
    assert np.allclose(out[0], normalize(x))
    assert abs(np.linalg.norm(out[0]) - 1.0) < 1e-12


def test_node_aggregate_ragged_rejected():
    x = np.zeros(8)
    with pytest.raises(ShapeMismatchError):
        node_aggregate([[x, x], [x]])


def test_readout_cases():
    x = np.arange(8, dtype=float)
    assert np.array_equal(readout([x]), x)
    rng = np.random.default_rng(2)
    rows = rng.standard_normal((5, 32))
    a = readout(rows)
    b = readout(rows[::-1])
    assert np.max(np.abs(a - b)) < 1e-12
    assert np.allclose(readout([x, x]), 2 * x)
    with pytest.raises(ValueError):
        readout(np.empty((0, 8)))


# ------------------------------------------------------------- global attrs


def test_global_attrs_equal_descriptors_match():
    cfg = EncoderConfig(dim=2048)
    d = build_dictionaries(cfg)
    a = global_attrs(d, parse_smiles("CCCCC"))
    b = global_attrs(d, parse_smiles("CCCCO"))  # same size, same diameter
    assert np.array_equal(a, b)


def test_global_attrs_contains_size_component():
    from hyperfp.hdc import fpe_encode

    cfg = EncoderConfig(dim=2048)
    d = build_dictionaries(cfg)
    g = parse_smiles("CCCCCCCCCC")  # 10 atoms, diameter 9
    attr = global_attrs(d, g)
    assert cosine_sim(attr, fpe_encode(d.fpe_size, 10)) > 0.3


def double_star(n_leaves_per_hub):
    """Two bonded hubs with leaves on each: diameter 3 at any size."""
    from hyperfp.molgraph import AtomRecord as AR, Bond, MolGraph

    n = 2 + 2 * n_leaves_per_hub
    atoms = [AR("C", 0)] * n
    bonds = [Bond(0, 1, 1.0)]
    bonds += [Bond(0, 2 + k, 1.0) for k in range(n_leaves_per_hub)]
    bonds += [Bond(1, 2 + n_leaves_per_hub + k, 1.0) for k in range(n_leaves_per_hub)]
    return MolGraph.build(atoms, bonds)


def test_global_attrs_shared_term_dominates():
    from hyperfp.molgraph import diameter

    cfg = EncoderConfig(dim=2048, sigma_size=1.0)
    d = build_dictionaries(cfg)
    # same diameter (3), sizes 4 and 14 (10 sigma apart)
    g_small = double_star(1)
    g_big = double_star(6)
    assert diameter(g_small) == diameter(g_big) == 3
    assert g_big.atom_count - g_small.atom_count == 10
    sim = cosine_sim(global_attrs(d, g_small), global_attrs(d, g_big))
    assert sim == pytest.approx(0.5, abs=0.1)


# ------------------------------------------------------------------- encode


def test_encode_permuted_smiles_identical(encoder):
    a = encoder.encode(parse_smiles("CCO"))
    b = encoder.encode(parse_smiles("OCC"))
    assert cosine_sim(a.vector, b.vector) == pytest.approx(1.0, abs=1e-9)


def test_encode_unit_norm_over_corpus(encoder):
    for smiles in CORPUS:
        fp = encoder.encode(parse_smiles(smiles))
        assert abs(np.linalg.norm(fp.vector) - 1.0) <= 1e-9, smiles


def test_encode_distinct_molecules_distinct(encoder):
    fps = [encoder.encode(parse_smiles(s)).vector for s in CORPUS[:50]]
    for i in range(len(fps)):
        for j in range(i + 1, len(fps)):
            assert cosine_sim(fps[i], fps[j]) < 0.999


def test_encode_permutation_invariance(encoder):
    rng = np.random.default_rng(10)
    for smiles in CORPUS[:10]:
        g = parse_smiles(smiles)
        fp = encoder.encode(g).vector
        for _ in range(3):
            perm = list(rng.permutation(g.atom_count))
            pfp = encoder.encode(permute(g, perm)).vector
            assert np.max(np.abs(fp - pfp)) < 1e-9, smiles


def test_encode_deterministic(encoder):
    g = parse_smiles("CC(=O)Oc1ccccc1C(=O)O")
    a = encoder.encode(g).vector
    b = HdfEncoder(EncoderConfig(dim=1024, depth=2, master_seed=42)).encode(g).vector
    assert np.array_equal(a, b)


def test_encode_output_dim_independent_of_size():
    enc = HdfEncoder(EncoderConfig(dim=64))
    for smiles in ["C", "CCCCCCCCCC", "C" * 99 + "O"]:
        g = parse_smiles(smiles)
        fp = enc.encode(g)
        assert fp.vector.shape == (64,)
    assert g.atom_count == 100


def test_encode_depth_changes_similarity():
    m1 = parse_smiles("CCCCCO")
    m2 = parse_smiles("CCCCCN")
    sims = {}
    for depth in (1, 3):
        enc = HdfEncoder(EncoderConfig(dim=1024, depth=depth))
        sims[depth] = cosine_sim(enc.encode(m1).vector, enc.encode(m2).vector)
    assert abs(sims[3] - sims[1]) > 1e-6


def test_encode_without_global_attrs_differs():
    g = parse_smiles("CCO")
    with_attrs = HdfEncoder(EncoderConfig(dim=512)).encode(g).vector
    without = HdfEncoder(
        EncoderConfig(dim=512, include_global_attrs=False)
    ).encode(g).vector
    assert abs(np.linalg.norm(without) - 1.0) <= 1e-9
    assert cosine_sim(with_attrs, without) < 0.999


def test_encode_seed_changes_fingerprint():
    g = parse_smiles("CCO")
    a = HdfEncoder(EncoderConfig(dim=256, master_seed=1)).encode(g).vector
    b = HdfEncoder(EncoderConfig(dim=256, master_seed=2)).encode(g).vector
    assert not np.array_equal(a, b)


def test_encode_convenience_matches_class():
    cfg = EncoderConfig(dim=128)
    g = parse_smiles("CCN")
    assert np.array_equal(encode(cfg, g).vector, HdfEncoder(cfg).encode(g).vector)


def test_config_guards():
    with pytest.raises(ValueError):
        EncoderConfig(dim=4)
    with pytest.raises(ValueError):
        EncoderConfig(depth=17)
    with pytest.raises(ValueError):
        EncoderConfig(sigma_size=0.0)


def test_ged_monotonic_trend_smoke():
    # cosine distance grows with edit distance along one perturbation ladder
    import warnings

    from scipy.stats import spearmanr

    from hyperfp.perturb import build_ged_dataset

    seed = parse_smiles("CCCCCCCC")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pairs = build_ged_dataset(
            [seed], max_depth=6, pairs_per_seed=60, rng_seed=3, frontier_cap=16
        )
    enc = HdfEncoder(EncoderConfig(dim=1024, depth=2, master_seed=42))
    memo = {}

    def fp(m):
        if id(m) not in memo:
            memo[id(m)] = enc.encode(m).vector
        return memo[id(m)]

    dists = [1.0 - cosine_sim(fp(p.mol_a), fp(p.mol_b)) for p in pairs]
    geds = [p.edit_distance for p in pairs]
    rho = spearmanr(dists, geds).statistic
    assert rho > 0.0
