import json

import pytest

from klrdual import io
from klrdual.catalog import L, L_z, ambient_A
from klrdual.cli import main
from klrdual.modules import convolve

PA = ambient_A(3)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(io.dumps(doc))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_run_example_with_figures(tmp_path, capsys):
    figs = tmp_path / "figs"
    code, rep = run(["run-example", "D", "--check", "all", "--figures", str(figs)], capsys)
    assert code == 0
    pngs = sorted(p.name for p in figs.iterdir())
    assert "cartan_D4.png" in pngs
    assert any(n.startswith("qchar_") for n in pngs)


def test_input_errors_exit_2(tmp_path, capsys):
    assert main(["run-example", "E"]) == 2
    assert main(["run-example"]) == 2
    assert main(["qchar", "--module", str(tmp_path / "missing.json")]) == 2
    assert main(["qchar", "--module", "x.json", "--field", "fp:4"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["qchar", "--module", str(bad)]) == 2
    assert main(["build-delta", "--datum", write(tmp_path, "d.json", {"example": "D"})]) == 2


def test_check_relations_exit_codes(tmp_path, capsys):
    doc = io.module_to_json(convolve(L(PA, 1), L(PA, 1)))
    code, rep = run(["check-relations", "--module", write(tmp_path, "m.json", doc)], capsys)
    assert code == 0 and rep["ok"] and rep["dim"] == 2
    doc["x"][0] = []
    code, rep = run(["check-relations", "--module", write(tmp_path, "bad.json", doc)], capsys)
    assert code == 1 and rep["failures"]


def test_qchar_and_convolve(tmp_path, capsys):
    a = write(tmp_path, "a.json", io.module_to_json(L(PA, 1)))
    b = write(tmp_path, "b.json", io.module_to_json(L(PA, 2)))
    out = tmp_path / "c.json"
    assert main(["convolve", "--module", a, "--module", b, "--out", str(out)]) == 0
    C = io.module_from_json(io.load(str(out)))
    assert C.dim == 2
    code, rep = run(["qchar", "--module", str(out)], capsys)
    assert code == 0 and rep["dim"] == 2


def test_rmatrix_and_affinization_verbs(tmp_path, capsys):
    a = write(tmp_path, "a.json", io.module_to_json(L_z(PA, 1, "a").module))
    b = write(tmp_path, "b.json", io.module_to_json(L_z(PA, 2, "b").module))
    code, rep = run(["rmatrix", "--module", a, "--module", b], capsys)
    assert code == 0 and rep["ok"]
    code, rep = run(["check-affinization", "--module", a], capsys)
    assert code == 0 and rep["valid"]


def test_datum_verbs(tmp_path, capsys):
    d = write(tmp_path, "d.json", {"example": "D", "ell": 4})
    code, rep = run(["derive-cartan", "--datum", d], capsys)
    assert code == 0 and rep["finite_type"] and len(rep["cartan"]) == 4
    code, rep = run(["build-delta", "--datum", d, "--gamma", "1,3"], capsys)
    assert code == 0 and rep["ok"]
    assert main(["build-delta", "--datum", d, "--gamma", "1,9"]) == 2
    code, rep = run(["check-datum", "--datum", d], capsys)
    assert code == 0


def test_apply_functor_defaults_to_twisted_params(tmp_path, capsys):
    from conftest import datum
    from klrdual.duality import one_dim_D
    dD = datum("D", 4)
    doc = io.module_to_json(one_dim_D(dD, (1, 3)), include_params=False)
    d = write(tmp_path, "d.json", {"example": "D", "ell": 4})
    code, rep = run(["apply-functor", "--datum", d, "--module", write(tmp_path, "m.json", doc)],
                    capsys)
    assert code == 0 and rep["dim"] == 1


def test_unknown_verb_is_usage_error():
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
