"""Reading and writing sets, sequences, operators, matrices and reports."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .hankel import HankelOperator, make_hankel, make_paley_hankel
from .sequences import LacunarySet

SCHEMA = 1


def parse_number(text: str):
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        return complex(text.replace(" ", "").replace("i", "j"))


def parse_list(text: str) -> list:
    return [parse_number(t) for t in text.split(",") if t.strip()]


def parse_set(text: str) -> LacunarySet:
    return LacunarySet(tuple(int(t) for t in text.split(",") if t.strip()))


def read_sequence(path) -> np.ndarray:
    """One value per line; blank lines and ``#`` comments are skipped."""
    vals = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            vals.append(parse_number(line))
    return np.asarray(vals)


def write_sequence(path, values):
    Path(path).write_text("".join(f"{x!r}\n" for x in np.asarray(values).tolist()))


def sequence_arg(text: str) -> np.ndarray:
    """A comma list, or a path to a one-value-per-line file."""
    p = Path(text)
    if p.is_file():
        return read_sequence(p)
    return np.asarray(parse_list(text))


def set_to_json(K: LacunarySet) -> str:
    return json.dumps(K.to_list())


def set_from_json(text: str) -> LacunarySet:
    return LacunarySet(tuple(json.loads(text)))


def _complex_list(x):
    x = np.asarray(x)
    if np.iscomplexobj(x):
        return [[float(z.real), float(z.imag)] for z in x]
    return x.astype(float).tolist()


def _from_complex_list(vals):
    if vals and isinstance(vals[0], list):
        return np.array([complex(re, im) for re, im in vals])
    return np.asarray(vals, dtype=float)


def operator_to_json(H: HankelOperator, K: Optional[LacunarySet] = None, v=None) -> dict:
    if K is not None:
        return {"K": K.to_list(), "v": _complex_list(v)}
    return {"a": _complex_list(H.a)}


def operator_from_json(obj: dict) -> HankelOperator:
    if "K" in obj:
        return make_paley_hankel(LacunarySet(tuple(obj["K"])), _from_complex_list(obj["v"]))
    if "a" in obj:
        return make_hankel(_from_complex_list(obj["a"]))
    raise ValueError("operator JSON needs either 'K' and 'v' or 'a'")


def matrix_to_csv(M) -> str:
    buf = io.StringIO()
    np.savetxt(buf, np.asarray(M), delimiter=",", fmt="%.17g")
    return buf.getvalue()


def write_matrix_csv(path, M):
    Path(path).write_text(matrix_to_csv(M))


def read_matrix_csv(path) -> np.ndarray:
    return np.loadtxt(path, delimiter=",", ndmin=2)


def _default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer, np.bool_)):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj: dict) -> str:
    return json.dumps({"schema": SCHEMA, **obj}, default=_default, indent=2)


def rows_to_csv(header: Iterable[str], rows: Iterable[Iterable]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(header))
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, float) else x for x in r])
    return buf.getvalue()
