import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import E01, LE_LANG, OR_LANG, X, le_instance, tractable_corpus
from minhom import io
from minhom.boolean import reduce_mis
from minhom.classify import classify, verify_report
from minhom.cli import main
from minhom.generators import random_closed_language, random_costs, random_instance


def write(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "le": write(tmp_path / "le.json", io.language_to_dict(LE_LANG)),
        "or": write(tmp_path / "or.json", io.language_to_dict(OR_LANG)),
        "e": write(tmp_path / "e.json", io.costs_to_dict(E01)),
        "x": write(tmp_path / "x.json", io.costs_to_dict(X)),
        "flat": write(tmp_path / "flat.json", {"functions": [[0, 0]]}),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_exit_codes(files, capsys):
    code, out, _ = run(capsys, "classify", files["le"], files["e"])
    assert code == 0 and json.loads(out)["verdict"] == "TRACTABLE"
    assert run(capsys, "classify", files["or"], files["x"])[0] == 2
    assert run(capsys, "classify", files["le"], files["flat"])[0] == 3


def test_malformed_input_reports_location(files, capsys):
    bad = files["dir"] / "bad.json"
    bad.write_text('{"domain": 2,\n "relations": [}')
    code, _, err = run(capsys, "classify", str(bad), files["e"])
    assert code == 1 and "line 2" in err
    write(bad, {"domain": 2, "relations": [{"name": "r", "arity": 2, "tuples": [[0, 1], [0]]}]})
    code, _, err = run(capsys, "classify", str(bad), files["e"])
    assert code == 1 and "language.relations[0].tuples[1]" in err
    write(bad, {"domain": 2, "relations": [{"name": "r", "arity": 1, "tuples": [[0], [0]]}]})
    code, _, err = run(capsys, "classify", str(bad), files["e"])
    assert code == 1 and "duplicate" in err


def test_report_is_written_atomically_and_verifies(files, capsys):
    out = files["dir"] / "rep.json"
    assert run(capsys, "classify", files["le"], files["e"], "-o", str(out))[0] == 0
    doc = json.loads(out.read_text())
    assert doc["version"] and len(doc["inputs"]["language_sha256"]) == 64
    code, stdout, _ = run(capsys, "verify", str(out), files["le"], files["e"])
    assert code == 0 and "ok" in stdout
    assert run(capsys, "verify", str(out), files["or"], files["e"])[0] == 1
    doc["witness"]["phi"]["table"] = [0, 0, 0, 1]
    write(out, doc)
    assert run(capsys, "verify", str(out), files["le"], files["e"])[0] == 1


def test_solve_and_oracle(files, capsys):
    inst = {"language": "le.json", "costs": "e.json", "variables": ["u", "v"],
            "constraints": [{"scope": ["u", "v"], "relation": "x1<=x2"}], "weights": [[5, 1], [0, 3]]}
    path = write(files["dir"] / "inst.json", inst)
    code, out, _ = run(capsys, "solve", path)
    sol = json.loads(out)
    assert code == 0 and sol["assignment"] == {"u": 1, "v": 1} and sol["measure"] == 4
    code, out, _ = run(capsys, "oracle", path)
    assert code == 0 and json.loads(out)["measure"] == 4 and json.loads(out)["method"] == "oracle"

    rep = files["dir"] / "rep.json"
    run(capsys, "classify", files["le"], files["e"], "-o", str(rep))
    assert run(capsys, "solve", path, "--report", str(rep))[0] == 0
    other = files["dir"] / "other.json"
    run(capsys, "classify", files["or"], files["x"], "-o", str(other))
    assert run(capsys, "solve", path, "--report", str(other))[0] == 1

    inst["constraints"] += [{"scope": ["u"], "values": [1]}, {"scope": ["v"], "relation": "U[0]"}]
    path = write(files["dir"] / "unsat.json", inst)
    code, out, _ = run(capsys, "solve", path)
    assert code == 4 and json.loads(out)["status"] == "unsat"
    assert run(capsys, "oracle", path)[0] == 4


def test_hard_language_needs_oracle_flag(files, capsys):
    inst = {"language": "or.json", "costs": "x.json", "variables": ["a", "b"],
            "constraints": [{"scope": ["a", "b"], "relation": "x1|x2"}], "weights": [[1], [1]]}
    path = write(files["dir"] / "hard.json", inst)
    code, out, _ = run(capsys, "solve", path)
    assert code == 2 and out == ""
    code, out, _ = run(capsys, "solve", path, "--oracle")
    assert code == 0 and json.loads(out)["measure"] == 1


def test_oracle_limits(files, capsys):
    big = {"language": "le.json", "costs": "e.json", "variables": [f"v{i}" for i in range(30)],
           "constraints": [], "weights": [[0, 0]] * 30}
    code, _, err = run(capsys, "oracle", write(files["dir"] / "big.json", big))
    assert code == 1 and "exceeds the limit" in err
    none = {"language": "le.json", "costs": "e.json", "variables": [], "constraints": [], "weights": []}
    code, out, _ = run(capsys, "oracle", write(files["dir"] / "none.json", none))
    assert code == 0 and json.loads(out)["measure"] == 0 and json.loads(out)["assignment"] == {}


def test_gadget_command(files, capsys):
    k3 = write(files["dir"] / "k3.json", {"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]})
    out = files["dir"] / "mis.json"
    assert run(capsys, "gadget", "mis", k3, "-o", str(out))[0] == 0
    assert json.loads(run(capsys, "oracle", str(out))[1])["measure"] == 2
    edge = write(files["dir"] / "edge.json", {"n": 2, "edges": [[0, 1]]})
    code, text, _ = run(capsys, "gadget", "maxcut", edge)
    assert [v for v in json.loads(text)["variables"]] == ["y_0", "y_1", "x_0_1", "x_1_0"]
    (files["dir"] / "mc.json").write_text(text)
    assert json.loads(run(capsys, "oracle", str(files["dir"] / "mc.json"))[1])["measure"] == 0
    empty = write(files["dir"] / "empty.json", {"n": 3, "edges": []})
    (files["dir"] / "e3.json").write_text(run(capsys, "gadget", "mis", empty)[1])
    assert json.loads(run(capsys, "oracle", str(files["dir"] / "e3.json"))[1])["measure"] == 0
    bad = write(files["dir"] / "badg.json", {"n": 2, "edges": [[0, 0]]})
    assert run(capsys, "gadget", "mis", bad)[0] == 1


def test_solve_matches_oracle_on_corpus(seed, tmp_path, capsys):
    for k, (_, _, _, inst) in enumerate(tractable_corpus(seed)[:25]):
        path = write(tmp_path / f"i{k}.json", io.instance_to_dict(inst))
        c1, o1, _ = run(capsys, "solve", path)
        c2, o2, _ = run(capsys, "oracle", path)
        assert c1 == c2
        if c1 == 0:
            assert json.loads(o1)["measure"] == json.loads(o2)["measure"]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_round_trips(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    lang = random_closed_language(rng, n)
    costs = random_costs(rng, n)
    assert io.language_from_dict(json.loads(io.dumps(io.language_to_dict(lang)))) == lang
    assert io.costs_from_dict(io.costs_to_dict(costs)) == costs
    inst = random_instance(rng, lang, costs, satisfiable=False)
    assert io.instance_from_dict(json.loads(io.dumps(io.instance_to_dict(inst)))) == inst
    rep = classify(lang, costs)
    back = io.report_from_dict(json.loads(io.dumps(io.report_to_dict(rep))))
    assert back == rep
    assert verify_report(lang, costs, back) == []


def test_gadget_instances_round_trip():
    inst = reduce_mis(4, [(0, 1), (2, 3)])
    assert io.instance_from_dict(io.instance_to_dict(inst)) == inst
    assert io.instance_from_dict(io.instance_to_dict(le_instance())) == le_instance()
