"""Command-line interface: encode, ged-bench, knn-eval, bo-run, replay.

Every command writes a ``<output>.manifest.json`` next to its output;
``hyperfp replay <manifest>`` re-runs the recorded configuration and must
reproduce the outputs byte-identically.

Exit codes: 0 success, 1 input error, 2 configuration error,
3 numeric failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from hyperfp import __version__
from hyperfp.bo import BoConfig, bo_run
from hyperfp.encoder import EncoderConfig, EncodingError, HdfEncoder
from hyperfp.gp import GpNumericsError
from hyperfp.hdc import cosine_sim
from hyperfp.io import (
    MoleculeFileError,
    bit_fingerprint_record,
    fingerprint_record,
    parse_molecule_line,
    read_manifest,
    read_molecule_file,
    write_manifest,
)
from hyperfp.metrics import DegenerateInputError, KnnConfig, ged_correlation, knn_mae
from hyperfp.molgraph import SmilesError, parse_smiles
from hyperfp.morgan import MorganConfig, morgan_encode, tanimoto
from hyperfp.perturb import build_ged_dataset

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_ENCODE_CHUNK = 1024


class CliInputError(Exception):
    """Unusable input data (unreadable file, failed parse in strict mode)."""


class CliConfigError(Exception):
    """Invalid flag combination or parameter value."""


def _default_threads() -> int:
    try:
        return max(1, int(os.environ.get("HDFP_THREADS", "1")))
    except ValueError:
        return 1


def _parse_dims(text: str) -> list[int]:
    try:
        dims = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dims list {text!r}") from None
    if not dims:
        raise argparse.ArgumentTypeError("dims list is empty")
    return dims


def _manifest_path(output: str) -> str:
    return output + ".manifest.json"


# ------------------------------------------------------------------- encode


def _resolve_encode_config(args) -> dict:
    if args.rep == "hdf":
        if args.radius is not None:
            raise CliConfigError("--radius applies only to --rep morgan")
        depth = args.depth if args.depth is not None else 2
        return {
            "input": args.input,
            "output": args.output,
            "rep": "hdf",
            "dim": args.dim,
            "depth": depth,
            "seed": args.seed,
            "include_global_attrs": not args.no_global_attrs,
            "strict": args.strict,
            "threads": args.threads,
        }
    if args.depth is not None:
        raise CliConfigError("--depth applies only to --rep hdf")
    if args.no_global_attrs:
        raise CliConfigError("--no-global-attrs applies only to --rep hdf")
    radius = args.radius if args.radius is not None else 2
    return {
        "input": args.input,
        "output": args.output,
        "rep": "morgan",
        "dim": args.dim,
        "radius": radius,
        "seed": args.seed,
        "strict": args.strict,
        "threads": args.threads,
    }


def run_encode(config: dict) -> int:
    if config["rep"] == "hdf":
        encoder = HdfEncoder(
            EncoderConfig(
                dim=config["dim"],
                depth=config["depth"],
                master_seed=config["seed"],
                include_global_attrs=config["include_global_attrs"],
            )
        )

        def encode_one(smiles: str) -> str:
            return fingerprint_record(smiles, encoder.encode(parse_smiles(smiles)))

    else:
        morgan_cfg = MorganConfig(radius=config["radius"], nbits=config["dim"])

        def encode_one(smiles: str) -> str:
            return bit_fingerprint_record(
                smiles,
                morgan_encode(morgan_cfg, parse_smiles(smiles)),
                morgan_cfg.radius,
            )

    threads = max(1, int(config.get("threads", 1)))
    failures = 0

    def encode_checked(item):
        line_number, smiles = item
        try:
            return line_number, encode_one(smiles), None
        except (SmilesError, EncodingError, ValueError) as err:
            return line_number, None, str(err)

    with open(config["input"], encoding="utf-8") as src, open(
        config["output"], "w", encoding="utf-8"
    ) as dst:
        pending: list[tuple[int, str]] = []

        def flush():
            nonlocal failures
            if not pending:
                return
            if threads > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    results = list(pool.map(encode_checked, pending))
            else:
                results = [encode_checked(item) for item in pending]
            for line_number, record, error in results:
                if error is not None:
                    failures += 1
                    print(f"line {line_number}: {error}", file=sys.stderr)
                else:
                    dst.write(record)
                    dst.write("\n")
            pending.clear()

        for line_number, line in enumerate(src, start=1):
            record = parse_molecule_line(line, line_number)
            if record is None:
                continue
            pending.append((record.line_number, record.smiles))
            if len(pending) >= _ENCODE_CHUNK:
                flush()
        flush()

    write_manifest(
        _manifest_path(config["output"]),
        "encode",
        config,
        input_path=config["input"],
        output_path=config["output"],
        master_seed=config["seed"],
    )
    if failures and config["strict"]:
        print(f"{failures} line(s) failed to encode", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_encode(args) -> int:
    return run_encode(_resolve_encode_config(args))


# ---------------------------------------------------------------- ged-bench


def _make_hdf_rep(encoder: HdfEncoder):
    memo: dict[int, np.ndarray] = {}

    def rep(mol):
        key = id(mol)
        if key not in memo:
            memo[key] = encoder.encode(mol).vector
        return memo[key]

    return rep


def _make_morgan_rep(cfg: MorganConfig):
    memo: dict[int, object] = {}

    def rep(mol):
        key = id(mol)
        if key not in memo:
            memo[key] = morgan_encode(cfg, mol)
        return memo[key]

    return rep


def run_ged_bench(config: dict) -> int:
    records = read_molecule_file(config["seeds"])
    if not records:
        raise CliInputError(f"seed file {config['seeds']!r} holds no molecules")
    try:
        seeds = [parse_smiles(r.smiles) for r in records]
    except SmilesError as err:
        raise CliInputError(f"seed file: {err}") from None

    lines = ["dataset,representation,dim,correlation"]
    for index, (record, seed) in enumerate(zip(records, seeds)):
        ladder_seed = (config["rng_seed"] + 1000003 * index) & 0xFFFFFFFFFFFFFFFF
        pairs = build_ged_dataset(
            [seed],
            max_depth=config["max_depth"],
            pairs_per_seed=config["pairs"],
            rng_seed=ladder_seed,
        )
        if not pairs:
            print(f"seed {record.smiles}: no pairs generated", file=sys.stderr)
            continue
        for dim in config["dims"]:
            encoder = HdfEncoder(
                EncoderConfig(
                    dim=dim, depth=config["depth"], master_seed=config["seed"]
                )
            )
            corr_hdf = ged_correlation(
                pairs,
                rep=_make_hdf_rep(encoder),
                distance=lambda a, b: 1.0 - cosine_sim(a, b),
            )
            lines.append(f"{record.smiles},hdf,{dim},{corr_hdf!r}")
            morgan_cfg = MorganConfig(radius=config["depth"], nbits=dim)
            corr_morgan = ged_correlation(
                pairs,
                rep=_make_morgan_rep(morgan_cfg),
                distance=lambda a, b: 1.0 - tanimoto(a, b),
            )
            lines.append(f"{record.smiles},morgan,{dim},{corr_morgan!r}")

    with open(config["output"], "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
    write_manifest(
        _manifest_path(config["output"]),
        "ged-bench",
        config,
        input_path=config["seeds"],
        output_path=config["output"],
        master_seed=config["seed"],
    )
    return EXIT_OK


def cmd_ged_bench(args) -> int:
    return run_ged_bench(
        {
            "seeds": args.seeds,
            "output": args.output,
            "dims": args.dims,
            "depth": args.depth,
            "pairs": args.pairs,
            "max_depth": args.max_depth,
            "rng_seed": args.rng_seed,
            "seed": args.seed,
        }
    )


# ----------------------------------------------------------------- knn-eval


def _require_labeled(records, path):
    for record in records:
        if record.value is None:
            raise CliInputError(
                f"{path}: line {record.line_number} lacks a property value"
            )


def run_knn_eval(config: dict) -> int:
    records = read_molecule_file(config["input"])
    if not records:
        raise CliInputError(f"input file {config['input']!r} holds no molecules")
    _require_labeled(records, config["input"])
    try:
        graphs = [parse_smiles(r.smiles) for r in records]
    except SmilesError as err:
        raise CliInputError(f"input file: {err}") from None
    values = np.array([r.value for r in records], dtype=np.float64)

    n = len(graphs)
    n_train = int(round(config["train_fraction"] * n))
    if not (1 <= n_train < n):
        raise CliConfigError(
            f"train fraction {config['train_fraction']} leaves no usable split "
            f"for {n} molecules"
        )
    if config["k"] > n_train:
        raise CliConfigError(
            f"k={config['k']} exceeds the training split of {n_train}"
        )
    order = np.random.default_rng(config["split_seed"]).permutation(n)
    train_idx, test_idx = order[:n_train], order[n_train:]
    degenerate = bool(np.all(values == values[0]))

    lines = ["representation,dim,k,mae"]
    for dim in config["dims"]:
        encoder = HdfEncoder(
            EncoderConfig(dim=dim, depth=config["depth"], master_seed=config["seed"])
        )
        hdf_x = np.stack([encoder.encode(g).vector for g in graphs])
        mae_hdf = knn_mae(
            hdf_x[train_idx],
            values[train_idx],
            hdf_x[test_idx],
            values[test_idx],
            KnnConfig(k=config["k"], distance="cosine"),
        )
        morgan_cfg = MorganConfig(radius=config["radius"], nbits=dim)
        bit_x = np.stack([morgan_encode(morgan_cfg, g).bits for g in graphs])
        mae_morgan = knn_mae(
            bit_x[train_idx],
            values[train_idx],
            bit_x[test_idx],
            values[test_idx],
            KnnConfig(k=config["k"], distance="tanimoto"),
        )
        lines.append(f"hdf,{dim},{config['k']},{mae_hdf!r}")
        lines.append(f"morgan,{dim},{config['k']},{mae_morgan!r}")
        if degenerate:
            ratio_label, ratio = "ratio_morgan_over_hdf_degenerate", 1.0
        elif mae_hdf == 0.0:
            ratio_label, ratio = "ratio_morgan_over_hdf", float("inf")
        else:
            ratio_label, ratio = "ratio_morgan_over_hdf", mae_morgan / mae_hdf
        lines.append(f"{ratio_label},{dim},{config['k']},{ratio!r}")

    with open(config["output"], "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
    write_manifest(
        _manifest_path(config["output"]),
        "knn-eval",
        config,
        input_path=config["input"],
        output_path=config["output"],
        master_seed=config["seed"],
    )
    return EXIT_OK


def cmd_knn_eval(args) -> int:
    return run_knn_eval(
        {
            "input": args.input,
            "output": args.output,
            "dims": args.dims,
            "k": args.k,
            "split_seed": args.split_seed,
            "train_fraction": args.train_fraction,
            "depth": args.depth,
            "radius": args.radius,
            "seed": args.seed,
        }
    )


# ------------------------------------------------------------------- bo-run


def run_bo_run(config: dict) -> int:
    records = read_molecule_file(config["input"])
    if not records:
        raise CliInputError(f"input file {config['input']!r} holds no molecules")
    _require_labeled(records, config["input"])
    try:
        graphs = [parse_smiles(r.smiles) for r in records]
    except SmilesError as err:
        raise CliInputError(f"input file: {err}") from None
    values = np.array([r.value for r in records], dtype=np.float64)

    n = len(graphs)
    if n <= config["init_points"] + config["rounds"]:
        raise CliConfigError(
            f"library of {n} molecules cannot cover init_points + rounds = "
            f"{config['init_points'] + config['rounds']}"
        )

    rep = config["rep"]
    if rep == "hdf":
        encoder = HdfEncoder(
            EncoderConfig(
                dim=config["dim"], depth=config["depth"], master_seed=config["seed"]
            )
        )
        features = np.stack([encoder.encode(g).vector for g in graphs])
    elif rep == "morgan":
        morgan_cfg = MorganConfig(radius=config["radius"], nbits=config["dim"])
        features = np.stack(
            [morgan_encode(morgan_cfg, g).as_real_vector() for g in graphs]
        )
    else:  # random baseline never looks at the representation
        features = np.zeros((n, 1))

    lines = ["seed,representation,dim,round,best_distance"]
    for repetition in range(config["repetitions"]):
        run_seed = config["seed"] + repetition
        trace = bo_run(
            features,
            values,
            BoConfig(
                target_value=config["target"],
                init_points=config["init_points"],
                rounds=config["rounds"],
                noise_variance=config["noise"],
                seed=run_seed,
            ),
            acquisition="random" if rep == "random" else "ei",
        )
        for round_index, best in enumerate(trace.best_distance_per_round, start=1):
            lines.append(
                f"{run_seed},{rep},{config['dim']},{round_index},{float(best)!r}"
            )
        lines.append(f"{run_seed},{rep},{config['dim']},auc,{trace.auc!r}")
        if trace.truncated:
            print(f"repetition {repetition}: library exhausted", file=sys.stderr)

    with open(config["output"], "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")
    write_manifest(
        _manifest_path(config["output"]),
        "bo-run",
        config,
        input_path=config["input"],
        output_path=config["output"],
        master_seed=config["seed"],
    )
    return EXIT_OK


def cmd_bo_run(args) -> int:
    return run_bo_run(
        {
            "input": args.input,
            "output": args.output,
            "rep": args.rep,
            "dim": args.dim,
            "target": args.target,
            "rounds": args.rounds,
            "repetitions": args.repetitions,
            "init_points": args.init_points,
            "noise": args.noise,
            "depth": args.depth,
            "radius": args.radius,
            "seed": args.seed,
        }
    )


# ------------------------------------------------------------------- replay


_RUNNERS = {
    "encode": run_encode,
    "ged-bench": run_ged_bench,
    "knn-eval": run_knn_eval,
    "bo-run": run_bo_run,
}


def cmd_replay(args) -> int:
    manifest = read_manifest(args.manifest)
    command = manifest["command"]
    runner = _RUNNERS.get(command)
    if runner is None:
        raise CliConfigError(f"manifest names unknown command {command!r}")
    return runner(manifest["config"])


# -------------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperfp",
        description="Molecular fingerprints via hyperdimensional computing",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a molecule list to JSONL")
    enc.add_argument("--input", required=True)
    enc.add_argument("--output", required=True)
    enc.add_argument("--rep", choices=("hdf", "morgan"), default="hdf")
    enc.add_argument("--dim", type=int, default=1024)
    enc.add_argument("--depth", type=int, default=None)
    enc.add_argument("--radius", type=int, default=None)
    enc.add_argument("--seed", type=int, default=42)
    enc.add_argument("--no-global-attrs", action="store_true")
    enc.add_argument("--strict", action="store_true")
    enc.add_argument("--threads", type=int, default=_default_threads())
    enc.set_defaults(func=cmd_encode)

    ged = sub.add_parser("ged-bench", help="edit-distance correlation benchmark")
    ged.add_argument("--seeds", required=True)
    ged.add_argument("--output", required=True)
    ged.add_argument("--dims", type=_parse_dims, default=[32, 128, 512, 2048])
    ged.add_argument("--depth", type=int, default=2)
    ged.add_argument("--pairs", type=int, default=200)
    ged.add_argument("--max-depth", type=int, default=6)
    ged.add_argument("--rng-seed", type=int, default=0)
    ged.add_argument("--seed", type=int, default=42)
    ged.set_defaults(func=cmd_ged_bench)

    knn = sub.add_parser("knn-eval", help="k-NN regression error comparison")
    knn.add_argument("--input", required=True)
    knn.add_argument("--output", required=True)
    knn.add_argument("--dims", type=_parse_dims, default=[32, 128, 512, 2048])
    knn.add_argument("--k", type=int, default=5)
    knn.add_argument("--split-seed", type=int, default=0)
    knn.add_argument("--train-fraction", type=float, default=0.8)
    knn.add_argument("--depth", type=int, default=2)
    knn.add_argument("--radius", type=int, default=2)
    knn.add_argument("--seed", type=int, default=42)
    knn.set_defaults(func=cmd_knn_eval)

    bo = sub.add_parser("bo-run", help="Bayesian optimization traces")
    bo.add_argument("--input", required=True)
    bo.add_argument("--output", required=True)
    bo.add_argument("--rep", choices=("hdf", "morgan", "random"), default="hdf")
    bo.add_argument("--dim", type=int, default=64)
    bo.add_argument("--target", type=float, required=True)
    bo.add_argument("--rounds", type=int, default=150)
    bo.add_argument("--repetitions", type=int, default=10)
    bo.add_argument("--init-points", type=int, default=10)
    bo.add_argument("--noise", type=float, default=1e-4)
    bo.add_argument("--depth", type=int, default=2)
    bo.add_argument("--radius", type=int, default=2)
    bo.add_argument("--seed", type=int, default=0)
    bo.set_defaults(func=cmd_bo_run)

    rep = sub.add_parser("replay", help="re-run a recorded manifest")
    rep.add_argument("manifest")
    rep.set_defaults(func=cmd_replay)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliInputError, MoleculeFileError, SmilesError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except (GpNumericsError, EncodingError, DegenerateInputError) as err:
        print(f"numeric failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CliConfigError, ValueError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
