"""JSON files for vectors and SICs: {"dim": d, "vectors": [[[re, im], ...], ...]}.

A file holding a single vector may use {"dim": d, "vector": [[re, im], ...]}.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .linalg import vector_from_json, vector_to_json
from .weyl import SicCandidate


def sic_to_json(c: SicCandidate) -> dict:
    return {"dim": c.dim, "vectors": [vector_to_json(v) for v in c.vectors]}


def sic_from_json(data: dict) -> SicCandidate:
    if "vectors" not in data:
        raise ValueError("SIC JSON needs a 'vectors' field")
    V = np.array([vector_from_json(v) for v in data["vectors"]])
    if "dim" in data and V.shape[1] != int(data["dim"]):
        raise ValueError(f"declared dim {data['dim']} but vectors have length {V.shape[1]}")
    return SicCandidate(V)


def vector_from_file_json(data: dict) -> np.ndarray:
    if "vector" not in data:
        raise ValueError("vector JSON needs a 'vector' field")
    return vector_from_json(data["vector"])


def load(path) -> dict:
    return json.loads(Path(path).read_text())


def save_sic(c: SicCandidate, path) -> None:
    Path(path).write_text(json.dumps(sic_to_json(c), indent=1) + "\n")
