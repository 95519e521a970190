# Driving the command line: classify, save a report, verify it, solve with it.
import json
import tempfile
from pathlib import Path

from minhom.cli import main

d = Path(tempfile.mkdtemp())
(d / "le.json").write_text(json.dumps(
    {"domain": 2, "relations": [{"name": "le", "arity": 2, "tuples": [[0, 0], [0, 1], [1, 1]]}]}))
(d / "e.json").write_text(json.dumps({"functions": [[1, 0], [0, 1]]}))
(d / "inst.json").write_text(json.dumps({
    "language": "le.json", "costs": "e.json", "variables": ["u", "v"],
    "constraints": [{"scope": ["u", "v"], "relation": "le"}], "weights": [[5, 1], [0, 3]],
}))

print("classify exit", main(["classify", str(d / "le.json"), str(d / "e.json"), "-o", str(d / "rep.json")]))
print("verify exit", main(["verify", str(d / "rep.json"), str(d / "le.json"), str(d / "e.json")]))
print("solve exit", main(["solve", str(d / "inst.json"), "--report", str(d / "rep.json")]))

(d / "k3.json").write_text(json.dumps({"n": 3, "edges": [[0, 1], [1, 2], [0, 2]]}))
main(["gadget", "mis", str(d / "k3.json"), "-o", str(d / "mis.json")])
print("oracle exit", main(["oracle", str(d / "mis.json")]))
