import io
import json
from fractions import Fraction as F

import pytest

from affsel import serialize as ser
from affsel.cli import run
from affsel.errors import InputError
from affsel.examples import olsen
from affsel.lp import LpOutcome, verify_certificate
from affsel.selection import global_selection


@pytest.fixture
def invoke(capsys, monkeypatch):
    def _invoke(*argv, stdin=None):
        if stdin is not None:
            monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
        code = run(list(argv))
        out, err = capsys.readouterr()
        return code, out, err

    return _invoke


@pytest.fixture
def olsen_file(tmp_path, invoke):
    path = tmp_path / "olsen.json"
    code, _, _ = invoke("example", "olsen", "--out", str(path))
    assert code == 0
    return path


def test_example_then_select_global(invoke):
    _, doc, _ = invoke("example", "olsen")
    code, out, _ = invoke("select-global", stdin=doc)
    assert code == 0
    res = json.loads(out)
    assert res["status"] == "none_exists" and res["map"] is None
    assert res["certificate"]["verified"] is True
    # the emitted multipliers verify against the library's selection LP
    lp = global_selection(olsen()).lp
    farkas = tuple(ser.decode_rational(v, "farkas") for v in res["certificate"]["farkas"])
    assert verify_certificate(lp, LpOutcome("infeasible", farkas=farkas))


def test_select_local(invoke, olsen_file):
    code, out, _ = invoke("select-local", str(olsen_file), "--point", "0,0")
    assert code == 0
    res = json.loads(out)
    assert res["simplex"] == [["1/2", 0], [0, "1/2"], ["-1/2", "-1/2"]]
    assert res["map"] == {"n": 2, "m": 1, "matrix": [["-2/3", "1/3"]], "offset": ["1/3"]}
    assert res["shrink_exponent"] == 1 and res["spot_check_failures"] == 0


def test_select_local_boundary_exit_2(invoke, olsen_file):
    code, out, err = invoke("select-local", str(olsen_file), "--point", "1,0")
    assert code == 2 and out == "" and "not interior" in err


def test_select_local_negative_coordinates(invoke, olsen_file):
    code, out, _ = invoke("select-local", str(olsen_file), "--point=-1/4,1/4")
    assert code == 0 and json.loads(out)["center"] == ["-1/4", "1/4"]


def test_audit_sampled(invoke):
    _, doc, _ = invoke("example", "hahn-banach")
    code, out, _ = invoke("audit", stdin=doc)
    res = json.loads(out)
    assert code == 0
    assert not res["convexity"]["passed"]
    assert {"i": 2, "j": 0, "k": 1, "t": "1/2", "witness": ["1/2", "-1/2"]} in res["convexity"]["violations"]


def test_audit_graph(invoke, olsen_file):
    code, out, _ = invoke("audit", str(olsen_file))
    res = json.loads(out)
    assert code == 0 and res["convexity"]["passed"] and res["intersection"]["passed"]
    assert res["convexity"]["checked_triples"] > 0


def test_sandwich(invoke, tmp_path):
    doc = ser.sandwich_doc(
        [((-1,), 1), ((0,), 0), ((1,), 1)], [((-1,), 1), ((0,), 2), ((1,), 1)]
    )
    path = tmp_path / "s.json"
    path.write_text(json.dumps(ser.to_wire(doc)))
    code, out, _ = invoke("sandwich", str(path))
    res = json.loads(out)
    assert code == 0 and res["map"] == {"n": 1, "m": 1, "matrix": [[0]], "offset": [1]}
    bad = ser.sandwich_doc([((0,), 1)], [((0,), 0)])
    code, out, _ = invoke("sandwich", stdin=json.dumps(ser.to_wire(bad)))
    res = json.loads(out)
    assert res["status"] == "none_exists" and res["certificate"]["verified"]


def test_sandwich_interval_data(invoke):
    doc = {
        "kind": "sampled", "n": 1, "m": 1,
        "samples": [
            {"point": [0], "value": [[0]]},
            {"point": [1], "value": [[1]]},
            {"point": ["1/2"], "value": [[0]]},
        ],
    }
    code, out, _ = invoke("sandwich", stdin=json.dumps(doc))
    res = json.loads(out)
    assert code == 0 and res["status"] == "none_exists"
    assert not res["intersection_audit"]["passed"]


def test_verify(invoke, olsen_file, tmp_path):
    mp = tmp_path / "map.json"
    mp.write_text(json.dumps({"n": 2, "m": 1, "matrix": [[0, 0]], "offset": [0]}))
    code, out, _ = invoke("verify", str(olsen_file), "--map", str(mp), "--trials", "30", "--seed", "4")
    res = json.loads(out)
    assert code == 0 and not res["passed"] and res["trials"] == 30
    _, local, _ = invoke("select-local", str(olsen_file), "--point", "0,0")
    mp.write_text(local)
    code, out, _ = invoke("verify", str(olsen_file), "--map", str(mp))
    # a local selection is not a global one on Olsen's square
    assert code == 0 and not json.loads(out)["passed"]


def test_input_errors(invoke, tmp_path):
    code, _, err = invoke("select-global", str(tmp_path / "missing.json"))
    assert code == 1 and "cannot read" in err
    code, _, err = invoke("select-global", stdin='{"kind": "graph", "n": 1, "m": 1, "graph_vertices": [[0, 0.5]]}')
    assert code == 1 and "graph_vertices[0][1]" in err
    code, _, err = invoke("select-global", stdin='{"kind": "graph", "n": 1, "m": 1, "graph_vertices": [[0]]}')
    assert code == 1 and "graph_vertices[0]" in err
    code, _, err = invoke("select-global", stdin="not json")
    assert code == 1
    code, _, _ = invoke("frobnicate")
    assert code == 1
    code, _, _ = invoke("select-local", stdin=json.dumps(ser.to_wire(ser.instance_doc(olsen()))))
    assert code == 1  # --point is required


def test_bad_seed_env(invoke, monkeypatch):
    monkeypatch.setenv("AFFSEL_SEED", "x")
    code, _, err = invoke("example", "random")
    assert code == 1 and "AFFSEL_SEED" in err


def test_seed_env_default(invoke, monkeypatch):
    monkeypatch.setenv("AFFSEL_SEED", "17")
    _, a, _ = invoke("example", "random")
    _, b, _ = invoke("example", "random", "--seed", "17")
    assert a == b


def test_byte_identical_and_exact(invoke):
    _, doc, _ = invoke("example", "random", "--seed", "5", "--n", "2", "--m", "1")
    outs = [invoke("select-global", "--seed", "3", stdin=doc)[1] for _ in range(2)]
    assert outs[0] == outs[1]

    def leaves(t):
        if isinstance(t, dict):
            for v in t.values():
                yield from leaves(v)
        elif isinstance(t, list):
            for v in t:
                yield from leaves(v)
        else:
            yield t

    assert not any(isinstance(v, float) for v in leaves(json.loads(outs[0])))


def test_pretty_labels_decimals(invoke, olsen_file):
    code, out, _ = invoke("--pretty", "select-local", str(olsen_file), "--point", "0,0")
    res = json.loads(out)
    assert res["result"]["map"]["offset"] == ["1/3"]
    assert res["approximate_decimals"]["map"]["offset"][0] == pytest.approx(1 / 3)


def test_instance_round_trip_through_cli(invoke, tmp_path):
    for name in ("olsen", "hahn-banach", "random"):
        _, out, _ = invoke("example", name, "--seed", "2")
        inst = ser.parse_instance(json.loads(out))
        assert json.dumps(ser.to_wire(ser.instance_doc(inst))) + "\n" == out


def test_rational_codec():
    assert ser.encode_rational(F(3)) == 3
    assert ser.encode_rational(F(-2, 6)) == "-1/3"
    assert ser.decode_rational("-1/3", "x") == F(-1, 3)
    assert ser.decode_rational(7, "x") == 7
    for bad in ("1/0", "0.5", 0.5, True, None, "1/-2"):
        with pytest.raises(InputError):
            ser.decode_rational(bad, "x")
