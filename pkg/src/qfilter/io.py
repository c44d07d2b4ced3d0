"""Ensemble files and deterministic JSON output.

Ensemble file layout::

    {"states": [[[re, im], [re, im]], ...],      # or "raw_states": [[[re, im], ...], ...]
     "priors": [p1, ..., pN],
     "subset_size": M}

Floats are written with 17 significant digits so they round-trip exactly,
and keys keep insertion order, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .ensemble import RANK_TOL, Ensemble, RawState, embed_raw, validate_ensemble
from .errors import IoError, NormalizationError, SchemaError


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite float {x!r}")
    return "%.17g" % x


def dumps(obj) -> str:
    """Serialize dicts, lists, strings, bools, ints and floats on one line."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def ensemble_to_dict(ensemble: Ensemble) -> dict:
    return {
        "states": [[_pair(s.c1), _pair(s.c2)] for s in ensemble.states],
        "priors": list(ensemble.priors),
        "subset_size": ensemble.subset_size,
    }


def _complex_list(rows, key: str, index: int) -> list[complex]:
    if not isinstance(rows, list) or not rows:
        raise SchemaError(f"{key}[{index}] must be a non-empty list of [re, im] pairs")
    out = []
    for amp in rows:
        if (
            not isinstance(amp, list)
            or len(amp) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in amp)
        ):
            raise SchemaError(f"{key}[{index}] has a malformed amplitude {amp!r}")
        out.append(complex(amp[0], amp[1]))
    return out


def ensemble_from_dict(data, tol: float = RANK_TOL) -> Ensemble:
    """Validate parsed JSON and build the ensemble, embedding raw states."""
    if not isinstance(data, dict):
        raise SchemaError("ensemble file must hold a JSON object")
    has_states, has_raw = "states" in data, "raw_states" in data
    if has_states == has_raw:
        raise SchemaError('exactly one of "states" and "raw_states" is required')
    for key in ("priors", "subset_size"):
        if key not in data:
            raise SchemaError(f'missing key "{key}"')
    priors = data["priors"]
    if not isinstance(priors, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in priors
    ):
        raise SchemaError('"priors" must be a list of numbers')
    m = data["subset_size"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise SchemaError('"subset_size" must be an integer')

    key = "states" if has_states else "raw_states"
    rows = data[key]
    if not isinstance(rows, list):
        raise SchemaError(f'"{key}" must be a list')
    vectors = [_complex_list(r, key, k) for k, r in enumerate(rows)]

    if has_raw:
        raws = []
        for k, v in enumerate(vectors):
            try:
                raws.append(RawState(tuple(v)))
            except NormalizationError as exc:
                raise NormalizationError(f"raw_states[{k}]: {exc}") from None
        states = embed_raw(raws, tol)
    else:
        states = vectors
    return validate_ensemble(states, priors, m)


def load_ensemble(path, tol: float = RANK_TOL) -> Ensemble:
    """Read and validate an ensemble JSON file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None
    return ensemble_from_dict(data, tol)
