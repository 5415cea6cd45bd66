"""JSON interchange.

A complex matrix is ``{"rows": r, "cols": c, "data": [[re, im], ...]}`` with
entries in row-major order. A channel is ``{"dim": d}`` plus exactly one of
``"kraus": [matrix, ...]``, ``"mixed_unitary": {"weights": [...],
"unitaries": [matrix, ...]}`` or ``"choi": matrix``. A dilation is
``{"env_dim": k, "matrix": matrix}``. Floats are written with ``repr``
precision so values round-trip exactly.
"""
import json

import numpy as np

from .channels import ChoiMatrix, KrausDecomposition, MixedUnitaryDecomposition
from .dilation import DilationUnitary
from .errors import ParseError

CHANNEL_KEYS = ("kraus", "mixed_unitary", "choi")


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
        if len(data) != rows * cols or any(len(pair) != 2 for pair in data):
            raise ParseError(f"matrix data has {len(data)} entries, expected {rows}x{cols} [re, im] pairs")
        flat = np.array([complex(float(re), float(im)) for re, im in data], dtype=complex)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix: {exc}") from exc
    if not np.all(np.isfinite(flat)):
        raise ParseError("matrix has non-finite entries")
    return flat.reshape(rows, cols)


def channel_to_json(rep) -> dict:
    if isinstance(rep, KrausDecomposition):
        return {"dim": rep.dim, "kraus": [matrix_to_json(a) for a in rep.operators]}
    if isinstance(rep, MixedUnitaryDecomposition):
        return {
            "dim": rep.dim,
            "mixed_unitary": {
                "weights": [float(w) for w in rep.weights],
                "unitaries": [matrix_to_json(u) for u in rep.unitaries],
            },
        }
    if isinstance(rep, ChoiMatrix):
        return {"dim": rep.dim, "choi": matrix_to_json(rep.matrix)}
    raise TypeError(f"cannot serialize {type(rep).__name__}")


def channel_from_json(obj):
    if not isinstance(obj, dict) or "dim" not in obj:
        raise ParseError("channel object needs a 'dim' field")
    present = [key for key in CHANNEL_KEYS if key in obj]
    if len(present) != 1:
        raise ParseError(f"channel object needs exactly one of {CHANNEL_KEYS}, found {present}")
    try:
        dim = int(obj["dim"])
        if present[0] == "kraus":
            return KrausDecomposition(dim, tuple(matrix_from_json(m) for m in obj["kraus"]))
        if present[0] == "choi":
            return ChoiMatrix(dim, matrix_from_json(obj["choi"]))
        mu = obj["mixed_unitary"]
        rep = MixedUnitaryDecomposition(
            [float(w) for w in mu["weights"]],
            tuple(matrix_from_json(m) for m in mu["unitaries"]),
        )
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed channel: {exc}") from exc
    if rep.dim != dim:
        raise ParseError(f"declared dim {dim} does not match unitaries of dim {rep.dim}")
    return rep


def dilation_to_json(u: DilationUnitary) -> dict:
    return {"env_dim": u.env_dim, "matrix": matrix_to_json(u.matrix)}


def dilation_from_json(obj) -> DilationUnitary:
    try:
        return DilationUnitary(int(obj["env_dim"]), matrix_from_json(obj["matrix"]))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed dilation: {exc}") from exc


def steps_to_json(steps) -> list:
    return [
        {
            "n": s.n,
            "m": s.m,
            "delta": s.delta,
            "replaced": [matrix_to_json(v) for v in s.replaced],
            "weights_after": [float(w) for w in s.weights_after],
        }
        for s in steps
    ]


def dumps(obj) -> str:
    return json.dumps(obj, indent=1)


def load_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
