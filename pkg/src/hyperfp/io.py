"""File formats: molecule list files, fingerprint JSONL records, manifests.

Molecule list files are UTF-8 text, one record per line in the form
``SMILES`` or ``SMILES<TAB>property_value``; lines starting with ``#`` and
blank lines are ignored. JSON is emitted with full round-trip float
precision so re-encoding is byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from hyperfp import __version__
from hyperfp.encoder import Fingerprint
from hyperfp.morgan import BitFingerprint

__all__ = [
    "MoleculeFileError",
    "MoleculeRecord",
    "bit_fingerprint_record",
    "fingerprint_record",
    "parse_molecule_line",
    "read_manifest",
    "read_molecule_file",
    "write_manifest",
]


class MoleculeFileError(ValueError):
    """Malformed molecule list line; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


@dataclass(frozen=True)
class MoleculeRecord:
    line_number: int
    smiles: str
    value: float | None


def parse_molecule_line(line: str, line_number: int) -> MoleculeRecord | None:
    """One record, or None for comments and blank lines."""
    stripped = line.strip()
    if not stripped or stripped.startswith("#"):
        return None
    fields = stripped.split("\t")
    if len(fields) > 2:
        raise MoleculeFileError(
            f"expected 'SMILES' or 'SMILES<TAB>value', got {len(fields)} fields",
            line_number,
        )
    value = None
    if len(fields) == 2:
        try:
            value = float(fields[1])
        except ValueError:
            raise MoleculeFileError(
                f"property value {fields[1]!r} is not numeric", line_number
            ) from None
    return MoleculeRecord(line_number=line_number, smiles=fields[0], value=value)


def read_molecule_file(path) -> list[MoleculeRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            record = parse_molecule_line(line, line_number)
            if record is not None:
                records.append(record)
    return records


def fingerprint_record(smiles: str, fp: Fingerprint) -> str:
    """JSONL line for one hyperdimensional fingerprint."""
    return json.dumps(
        {
            "smiles": smiles,
            "dim": fp.config.dim,
            "depth": fp.config.depth,
            "seed": fp.config.master_seed,
            "fp": [float(x) for x in fp.vector],
        }
    )


def bit_fingerprint_record(smiles: str, fp: BitFingerprint, radius: int) -> str:
    """JSONL line for one hashed circular fingerprint (set-bit indices)."""
    return json.dumps(
        {
            "smiles": smiles,
            "nbits": fp.nbits,
            "radius": radius,
            "bits": fp.on_bits(),
        }
    )


def write_manifest(
    path,
    command: str,
    config: dict,
    input_path: str,
    output_path: str,
    master_seed: int,
) -> None:
    """Reproducibility manifest: re-running it must recreate outputs exactly."""
    document = {
        "command": command,
        "tool_version": __version__,
        "input": input_path,
        "output": output_path,
        "master_seed": master_seed,
        "config": config,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        document = json.load(fh)
    for key in ("command", "config"):
        if key not in document:
            raise ValueError(f"manifest missing {key!r} field")
    return document
