"""Tensor JSON file format.

{"dims": [n1, n2, n3], "entries": [[i, j, k, "v"], ...]} with 0-based
indices; "v" is a decimal integer or "a/b" rational string; omitted
entries are zero.  Output is always sorted, nonzero-only, lowest terms.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .tensor import Tensor3

__all__ = ["tensor_to_doc", "tensor_from_doc", "dump_tensor", "load_tensor"]

_VALUE_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def _parse_value(v) -> Fraction:
    if isinstance(v, bool):
        raise ValidationError(f"bad entry value {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str) and _VALUE_RE.match(v.strip()):
        return Fraction(v.strip())
    raise ValidationError(f"entry value {v!r} is not a decimal integer or a/b rational")


def tensor_to_doc(t: Tensor3) -> dict:
    entries = [
        [int(i), int(j), int(k), str(t.entries[i, j, k])]
        for (i, j, k) in sorted(t.nonzeros())
    ]
    return {"dims": list(t.dims), "entries": entries}


def tensor_from_doc(doc) -> Tensor3:
    if not isinstance(doc, dict):
        raise ValidationError("tensor document must be a JSON object")
    dims = doc.get("dims")
    if (
        not isinstance(dims, (list, tuple))
        or len(dims) != 3
        or not all(isinstance(d, int) and d >= 1 for d in dims)
    ):
        raise ValidationError(f"dims must be three integers >= 1, got {dims!r}")
    entries = doc.get("entries", [])
    if not isinstance(entries, list):
        raise ValidationError("entries must be a list")
    arr = np.full(tuple(dims), Fraction(0), dtype=object)
    seen = set()
    for item in entries:
        if not isinstance(item, (list, tuple)) or len(item) != 4:
            raise ValidationError(f"entry {item!r} must be [i, j, k, value]")
        i, j, k, v = item
        if not all(isinstance(x, int) for x in (i, j, k)):
            raise ValidationError(f"indices in {item!r} must be integers")
        if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
            raise ValidationError(f"index ({i},{j},{k}) out of range for dims {dims}")
        if (i, j, k) in seen:
            raise ValidationError(f"duplicate entry at ({i},{j},{k})")
        seen.add((i, j, k))
        arr[i, j, k] = _parse_value(v)
    return Tensor3(arr)


def dump_tensor(t: Tensor3, fp) -> None:
    json.dump(tensor_to_doc(t), fp, indent=2)
    fp.write("\n")


def load_tensor(path) -> Tensor3:
    try:
        with open(path) as fp:
            doc = json.load(fp)
    except OSError as exc:
        raise ValidationError(f"cannot read tensor file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {path}: {exc}") from exc
    return tensor_from_doc(doc)
