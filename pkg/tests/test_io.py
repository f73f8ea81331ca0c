import json

import pytest
from hypothesis import given, settings, strategies as st

from klrdual import io
from klrdual.catalog import L, L_z, ambient_A, ambient_B, module_B2
from klrdual.duality import derive_cartan
from klrdual.fields import PrimeField
from klrdual.modules import check_relations, convolve

PA = ambient_A(3)


def same_module(M, N):
    return (M.basis == N.basis and M.ring == N.ring and M.n == N.n
            and all(list(M.mat(g)) == list(N.mat(g)) for g in M.gens()))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([1, 2, 3]), min_size=1, max_size=3))
def test_module_round_trip(word):
    M = convolve(*[L(PA, i) for i in word]) if len(word) > 1 else L(PA, *word)
    doc = json.loads(io.dumps(io.module_to_json(M)))
    N = io.module_from_json(doc)
    assert same_module(M, N)
    assert N.params.same_algebra(M.params)


def test_polynomial_module_round_trip():
    for M in [module_B2(ambient_B(3)).module,
              convolve(L_z(PA, 1, "a").module, L_z(PA, 2, "b").module)]:
        N = io.module_from_json(json.loads(io.dumps(io.module_to_json(M))))
        assert same_module(M, N)
        assert check_relations(N)["ok"]


def test_prime_field_round_trip():
    P = ambient_A(2, PrimeField(5))
    M = convolve(L(P, 1), L(P, 1))
    N = io.module_from_json(io.module_to_json(M), field=PrimeField(5))
    assert same_module(M, N)


def test_datum_round_trip(dD):
    doc = json.loads(io.dumps(io.datum_to_json(dD)))
    d2 = io.datum_from_json(doc, check=False)
    assert derive_cartan(d2)[1] == derive_cartan(dD)[1]
    assert io.datum_from_json({"example": "C", "ell": 3}, check=False).J == [1, 2, 3]


def test_twist_survives_params_round_trip(dD):
    P = io.params_from_json(io.params_to_json(dD.paramsD))
    assert P.same_algebra(dD.paramsD)


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d.pop("basis"), "$"),
    (lambda d: d.update(format=2), "$.format"),
    (lambda d: d["basis"].__setitem__(0, {"word": [9], "deg2": 0}), "$.basis[0].word"),
    (lambda d: d.update(x=[[[0, 5, "1"]]]), "$.x[0][0]"),
    (lambda d: d.update(x=[[[0, 0, "1/0"]]]), "$.x[0][0]"),
    (lambda d: d["params"].pop("form"), "$.params"),
])
def test_schema_errors_name_the_field(mutate, where):
    doc = io.module_to_json(L(PA, 1))
    mutate(doc)
    with pytest.raises(io.SchemaError) as e:
        io.module_from_json(doc)
    assert e.value.path == where


def test_load_rejects_bad_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(io.SchemaError):
        io.load(str(p))
