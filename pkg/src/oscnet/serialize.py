"""JSON code files and plain-text subspace files."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .code import Code, CodeParams, code_params
from .gf import Field
from .linalg import Subspace, format_subspace, parse_subspace
from .veronese import LinearForm

MONOMIAL_ORDER = "grlex-desc"


def code_to_dict(code: Code) -> dict:
    f = code.field
    params = code.params or code_params(code)
    words = []
    for label, v in code.codewords:
        words.append({
            "label": label.to_text(),
            "basis": [[f.to_text(c) for c in row] for row in v.basis],
        })
    return {
        "q": f.q,
        "p": f.p,
        "m": f.m,
        "irreducible": list(f.irreducible),
        "n": code.n,
        "d": code.d,
        "k": code.k,
        "N": params.N,
        "dim": params.dim,
        "size": params.size,
        "D": params.D,
        "monomial_order": MONOMIAL_ORDER,
        "codewords": words,
    }


def dumps_code(code: Code) -> str:
    return json.dumps(code_to_dict(code), indent=1) + "\n"


def code_from_dict(data: dict) -> Code:
    if data.get("monomial_order") != MONOMIAL_ORDER:
        raise ValueError(f"unsupported monomial order {data.get('monomial_order')!r}")
    field = Field(data["p"], data["m"], data["irreducible"] if data["m"] > 1 else None)
    if field.q != data["q"]:
        raise ValueError(f"q={data['q']} inconsistent with p^m = {field.q}")
    n_amb = data["N"]
    words = []
    for w in data["codewords"]:
        label = LinearForm.from_text(field, w["label"])
        rows = [[field.from_text(t) for t in row] for row in w["basis"]]
        if any(len(r) != n_amb for r in rows):
            raise ValueError(f"codeword {w['label']!r} has rows of the wrong length")
        raw = np.array(rows, dtype=np.int64).reshape(len(rows), n_amb)
        v = Subspace(field, n_amb, raw)
        if not np.array_equal(v.basis, raw):
            raise ValueError(f"codeword {w['label']!r} basis is not in reduced row echelon form")
        words.append((label, v))
    code = Code(data["n"], data["d"], data["k"], field, words)
    if code.N != n_amb:
        raise ValueError(f"N={n_amb} does not match C(n+d, n) = {code.N}")
    if len(words) >= 2:
        code.params = CodeParams.from_counts(n_amb, data["dim"], data["size"], data["D"], field.q)
    return code


def loads_code(text: str) -> Code:
    return code_from_dict(json.loads(text))


def write_code(code: Code, path) -> None:
    Path(path).write_text(dumps_code(code))


def read_code(path) -> Code:
    return loads_code(Path(path).read_text())


def write_subspace(v: Subspace, path) -> None:
    Path(path).write_text(format_subspace(v))


def read_subspace(path, field: Field | None = None) -> Subspace:
    return parse_subspace(Path(path).read_text(), field)
