import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from fmcalc.cli import DocumentError, main, parse_document, serialize_document
from fmcalc.models import default_registry, registry_to_yaml
from strategies import geom_and_charges


def _run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def _charge(**slots):
    return json.dumps({"charge": slots})


def test_model_list_and_show():
    code, out, _ = _run("model", "list")
    assert code == 0 and out.split() == ["deg12", "deg18", "deg8"]
    code, out, _ = _run("model", "show", "deg18")
    assert code == 0 and "E^3 = 9" in out and "c2·L = 36" in out
    code, out, _ = _run("model", "show", "deg8", "--json")
    assert code == 0 and json.loads(out)["name"] == "deg8"


def test_model_show_unknown():
    code, _, err = _run("model", "show", "quintic")
    assert code == 2 and "quintic" in err


def test_fm_forward_of_a_point():
    code, out, _ = _run("fm", "--model", "deg18", "--charge", _charge(s=1), "--oracle")
    payload = json.loads(out)
    assert code == 0 and payload["oracle_match"] is True
    assert payload["output"]["charge"] == {"r": "0", "x": "0", "S": ["0"], "eta": ["0"], "a": "1", "s": "0"}


def test_fm_inverse_with_inline_base():
    doc = {"geometry": {"base": {"name": "P1xP1", "basis": ["f", "s"], "form": [[0, 1], [1, 0]],
                                 "c1": [2, 2], "c2": 4}},
           "charge": {"r": "1/2", "x": 3, "S": [1, 2], "eta": [0, "-1/3"], "a": 1, "s": 0}}
    code, out, _ = _run("fm", "--direction", "inverse", "--charge", "-", "--oracle", stdin=json.dumps(doc))
    assert code == 0 and json.loads(out)["oracle_match"] is True


def test_fm_verify_m():
    code, out, _ = _run("fm", "--model", "deg18", "--charge", _charge(r=2, S=[1], a=3), "--verify-m",
                        "--twisted-charge")
    payload = json.loads(out)
    assert code == 0 and all(payload["m_relations"].values())
    assert "twisted_charge" in payload
    code, _, err = _run("fm", "--model", "deg18", "--charge", _charge(x=1), "--verify-m")
    assert code == 2 and "x = 0" in err


def test_fm_bad_documents(tmp_path):
    assert _run("fm", "--model", "deg18", "--charge", "{not json")[0] == 2
    assert _run("fm", "--charge", _charge(r=1))[0] == 2
    assert _run("fm", "--model", "deg8", "--charge", _charge(r=1))[0] == 2
    assert _run("fm", "--model", "deg18", "--charge", _charge(r=0.5))[0] == 2
    assert _run("fm", "--model", "deg18", "--charge", str(tmp_path / "missing.json"))[0] == 2
    path = tmp_path / "doc.json"
    path.write_text(_charge(r=1))
    assert _run("fm", "--model", "deg18", "--charge", str(path))[0] == 0


def test_moduli_commands():
    code, out, _ = _run("moduli", "--fmw", "2,1")
    payload = json.loads(out)
    assert code == 0 and payload["dimension"] == "11"
    assert payload["bps"] == ["2", "0", "0", "0", "0", "-3"]
    assert _run("moduli", "--bps", "2,1,0,0,0,0")[0] == 2
    assert _run("moduli", "--fmw", "3,1")[0] == 2
    assert _run("moduli", "--fmw", "2,1", "--bps", "2,0,0,0,0,-3")[0] == 2
    assert _run("moduli", "--model", "deg8", "--fmw", "2,1")[0] == 2
    assert _run("moduli", "--bps", "1,2,x")[0] == 2


def test_verify_exit_codes():
    code, out, _ = _run("verify", "m-matrix", "lattice-maps")
    assert code == 0 and "FAIL" not in out
    code, out, _ = _run("verify", "unimodular")
    assert code == 3 and "FAIL  unimodular: deg8 m" in out
    code, out, _ = _run("verify", "unimodular", "--json")
    assert code == 3 and json.loads(out)["passed"] is False
    assert _run("verify", "no-such-suite")[0] == 2


def test_usage_errors():
    assert _run()[0] == 2
    assert _run("fm")[0] == 2


def test_config_file(tmp_path):
    path = tmp_path / "models.yaml"
    path.write_text(registry_to_yaml(default_registry()))
    assert _run("--config", str(path), "model", "list")[0] == 0
    assert _run("--config", str(tmp_path / "absent.yaml"), "model", "list")[0] == 2


@settings(max_examples=40, deadline=None)
@given(geom_and_charges(1))
def test_document_round_trip(data):
    g, v = data
    doc = json.loads(json.dumps(serialize_document(v)))
    assert parse_document(doc, default_registry())[0] == v


def test_parse_document_rejects_garbage():
    with pytest.raises(DocumentError):
        parse_document([1, 2], default_registry())
    with pytest.raises(DocumentError):
        parse_document({"geometry": 7, "charge": {}}, default_registry())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fmcalc", "model", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "deg18" in proc.stdout
