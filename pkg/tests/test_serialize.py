import json

import pytest

from oscnet.code import build_code
from oscnet.gf import Field
from oscnet.serialize import code_to_dict, dumps_code, loads_code, read_code, write_code


@pytest.mark.parametrize("q,n,d,k", [(2, 1, 3, 1), (4, 1, 2, 1), (9, 2, 3, 2), (8, 1, 4, 2)])
def test_roundtrip_bit_exact(tmp_path, q, n, d, k):
    code = build_code(n, d, k, Field.of_order(q))
    path = tmp_path / "c.json"
    write_code(code, path)
    back = read_code(path)
    assert back.field == code.field
    assert [lab.to_text() for lab in back.labels] == [lab.to_text() for lab in code.labels]
    assert back.subspaces == code.subspaces
    assert all((a.basis == b.basis).all() for a, b in zip(back.subspaces, code.subspaces))
    assert dumps_code(back) == path.read_text()
    assert back.params == code.params


def test_header_fields():
    data = code_to_dict(build_code(1, 2, 1, Field(2, 2)))
    assert {k: data[k] for k in ("q", "p", "m", "irreducible", "n", "d", "k", "N", "dim", "size", "D")} == {
        "q": 4, "p": 2, "m": 2, "irreducible": [1, 1, 1], "n": 1, "d": 2, "k": 1,
        "N": 3, "dim": 2, "size": 5, "D": 2,
    }
    assert data["monomial_order"] == "grlex-desc"
    assert data["codewords"][1] == {"label": "10 10", "basis": [["10", "00", "10"], ["00", "10", "10"]]}


def test_rejects_non_canonical_basis():
    data = json.loads(dumps_code(build_code(1, 2, 1, Field(2))))
    data["codewords"][0]["basis"] = [["1", "1", "0"], ["0", "1", "0"]]
    with pytest.raises(ValueError, match="reduced row echelon"):
        loads_code(json.dumps(data))


def test_rejects_unknown_monomial_order():
    data = json.loads(dumps_code(build_code(1, 2, 1, Field(2))))
    data["monomial_order"] = "lex"
    with pytest.raises(ValueError):
        loads_code(json.dumps(data))
