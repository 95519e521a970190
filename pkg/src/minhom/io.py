"""JSON documents: languages, cost sets, instances, graphs, reports, solutions.

Parsing errors raise :class:`FormatError` naming the offending field path
(and the line/column for JSON syntax errors).
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any

from . import __version__
from .classify import (
    Bipartition,
    ClassificationReport,
    LocalViolation,
    OddCycle,
    PairKind,
    PairType,
    TGraph,
    Verdict,
)
from .model import ConstraintLanguage, CostSet, Instance, ModelError, Relation
from .polymorphisms import OperationTable
from .tractable import WeakTournamentPair


class FormatError(ValueError):
    pass


def _field(doc: Any, key: str, path: str, kind=None):
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected an object")
    if key not in doc:
        raise FormatError(f"{path}.{key}: missing field")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise FormatError(f"{path}.{key}: expected {getattr(kind, '__name__', kind)}")
    return val


def _int_list(val: Any, path: str) -> list[int]:
    if not isinstance(val, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in val):
        raise FormatError(f"{path}: expected a list of integers")
    return val


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def load_file(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None
    return loads(text, str(path))


def digest(doc: Any) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _render(doc: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(doc, dict) and doc:
        items = [f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in doc.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(doc, list) and any(isinstance(x, (dict, list)) and x for x in doc) \
            and not all(isinstance(x, list) and all(not isinstance(y, (dict, list)) for y in x) for x in doc):
        return "[\n" + ",\n".join(pad + _render(x, indent + 1) for x in doc) + "\n" + "  " * indent + "]"
    return json.dumps(doc)


def dumps(doc: Any) -> str:
    """Indented JSON with flat lists (tuples, tables, pairs) kept on one line."""
    return _render(doc, 0) + "\n"


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# languages and costs -------------------------------------------------------------

def language_from_dict(doc: Any, path: str = "language") -> ConstraintLanguage:
    n = _field(doc, "domain", path, int)
    rels_doc = _field(doc, "relations", path, list)
    rels = []
    for i, rd in enumerate(rels_doc):
        rp = f"{path}.relations[{i}]"
        name = _field(rd, "name", rp, str)
        arity = _field(rd, "arity", rp, int)
        tuples = _field(rd, "tuples", rp, list)
        rows = []
        for j, t in enumerate(tuples):
            tp = f"{rp}.tuples[{j}]"
            row = _int_list(t, tp)
            if len(row) != arity:
                raise FormatError(f"{tp}: length {len(row)} differs from arity {arity}")
            if any(not 0 <= x < n for x in row):
                raise FormatError(f"{tp}: value outside 0..{n - 1}")
            rows.append(row)
        try:
            rels.append(Relation.from_tuples(name, arity, rows))
        except ModelError as exc:
            raise FormatError(f"{rp}: {exc}") from None
    try:
        return ConstraintLanguage(n, tuple(rels))
    except ModelError as exc:
        raise FormatError(f"{path}: {exc}") from None


def language_to_dict(lang: ConstraintLanguage) -> dict:
    return {
        "domain": lang.size,
        "relations": [
            {"name": r.name, "arity": r.arity, "tuples": [list(t) for t in r.sorted_tuples()]}
            for r in lang.relations
        ],
    }


def costs_from_dict(doc: Any, path: str = "costs") -> CostSet:
    funcs = _field(doc, "functions", path, list)
    rows = [_int_list(r, f"{path}.functions[{i}]") for i, r in enumerate(funcs)]
    try:
        return CostSet.of(*rows)
    except ModelError as exc:
        raise FormatError(f"{path}: {exc}") from None


def costs_to_dict(costs: CostSet) -> dict:
    return {"functions": [list(r) for r in costs.functions]}


# instances --------------------------------------------------------------------------

def _inline_or_path(doc: Any, key: str, base: Path | None):
    val = _field(doc, key, "instance")
    if isinstance(val, str):
        p = Path(val)
        if base is not None and not p.is_absolute():
            p = base / p
        return load_file(p)
    return val


def instance_from_dict(doc: Any, base: Path | None = None) -> Instance:
    lang = language_from_dict(_inline_or_path(doc, "language", base))
    costs = costs_from_dict(_inline_or_path(doc, "costs", base))
    variables = _field(doc, "variables", "instance", list)
    if not all(isinstance(v, str) for v in variables):
        raise FormatError("instance.variables: expected a list of names")
    cons = []
    for i, cd in enumerate(_field(doc, "constraints", "instance", list)):
        cp = f"instance.constraints[{i}]"
        scope = _field(cd, "scope", cp, list)
        if "values" in cd:
            rel = "U[" + ",".join(str(v) for v in sorted(set(_int_list(cd["values"], cp + ".values")))) + "]"
        else:
            rel = _field(cd, "relation", cp, str)
        cons.append((scope, rel))
    weights = _field(doc, "weights", "instance", list)
    rows = [_int_list(r, f"instance.weights[{i}]") for i, r in enumerate(weights)]
    try:
        return Instance.build(lang, costs, variables, cons, rows)
    except ModelError as exc:
        raise FormatError(f"instance: {exc}") from None


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(load_file(path), Path(path).parent)


def instance_to_dict(inst: Instance) -> dict:
    cons = []
    for c in inst.constraints:
        entry = {"scope": [inst.variables[v] for v in c.scope]}
        if c.relation.arity == 1 and c.relation not in inst.language.relations:
            entry["values"] = sorted(t[0] for t in c.relation.tuples)
        else:
            entry["relation"] = c.relation.name
        cons.append(entry)
    return {
        "language": language_to_dict(inst.language),
        "costs": costs_to_dict(inst.costs),
        "variables": list(inst.variables),
        "constraints": cons,
        "weights": [list(r) for r in inst.weights],
    }


def graph_from_dict(doc: Any) -> tuple[int, list[tuple[int, int]]]:
    n = _field(doc, "n", "graph", int)
    edges = []
    for i, e in enumerate(_field(doc, "edges", "graph", list)):
        row = _int_list(e, f"graph.edges[{i}]")
        if len(row) != 2:
            raise FormatError(f"graph.edges[{i}]: an edge has two endpoints")
        edges.append((row[0], row[1]))
    return n, edges


# reports ----------------------------------------------------------------------------

def _table_to_dict(op: OperationTable | None):
    if op is None:
        return None
    return {"arity": op.arity, "table": list(op.table)}


def _table_from_dict(doc, size: int) -> OperationTable | None:
    if doc is None:
        return None
    return OperationTable(size, doc["arity"], tuple(doc["table"]))


def _pairs(xs) -> list[list[int]]:
    return [list(p) for p in xs]


def report_to_dict(report: ClassificationReport, lang_doc: Any = None, costs_doc: Any = None,
                   seconds: float | None = None) -> dict:
    doc: dict[str, Any] = {
        "tool": "minhom",
        "version": __version__,
        "verdict": report.verdict.name,
        "domain": report.size,
        "arcs": _pairs(report.arcs),
    }
    if lang_doc is not None or costs_doc is not None:
        doc["inputs"] = {"language_sha256": digest(lang_doc), "costs_sha256": digest(costs_doc)}
    if seconds is not None:
        doc["seconds"] = round(seconds, 6)
    w: dict[str, Any] = {}
    if report.violation is not None:
        v = report.violation
        w["local_violation"] = {
            "pair": list(v.pair.pair),
            "kind": v.pair.kind.name,
            "arc": list(v.pair.arc) if v.pair.arc else None,
            "failed": list(v.failed),
            "queries": [list(q) for q in v.queries],
        }
    if report.t_graph is not None:
        w["t_graph"] = {
            "vertices": _pairs(report.t_graph.vertices),
            "edges": sorted([list(u), list(v)] for u, v in (sorted(e) for e in report.t_graph.edges)),
        }
    if report.odd_cycle is not None:
        w["odd_cycle"] = _pairs(report.odd_cycle.vertices)
    if report.bipartition is not None:
        w["bipartition"] = {"m1": _pairs(report.bipartition.m1), "m2": _pairs(report.bipartition.m2)}
    if report.verdict is Verdict.TRACTABLE:
        w["f_max"] = _table_to_dict(report.f_max)
        w["phi"] = _table_to_dict(report.pair.phi)
        w["psi"] = _table_to_dict(report.pair.psi)
        w["tournament_scope"] = _pairs(sorted(report.pair.scope))
        w["m"] = _table_to_dict(report.m)
        w["m_used"] = report.m_used
    if report.notes:
        w["notes"] = list(report.notes)
    doc["witness"] = w
    return doc


def report_from_dict(doc: Any) -> ClassificationReport:
    try:
        verdict = Verdict[doc["verdict"]]
        n = doc["domain"]
        arcs = tuple(tuple(a) for a in doc["arcs"])
        w = doc.get("witness", {})
        rep = ClassificationReport(verdict, n, arcs, notes=list(w.get("notes", [])))
        if "local_violation" in w:
            lv = w["local_violation"]
            pt = PairType(tuple(lv["pair"]), PairKind[lv["kind"]], tuple(lv["arc"]) if lv["arc"] else None)
            rep.violation = LocalViolation(pt, tuple(lv["failed"]), tuple(tuple(q) for q in lv["queries"]))
        if "t_graph" in w:
            tg = w["t_graph"]
            rep.t_graph = TGraph(tuple(tuple(v) for v in tg["vertices"]),
                                 frozenset(frozenset((tuple(u), tuple(v))) for u, v in tg["edges"]))
        if "odd_cycle" in w:
            rep.odd_cycle = OddCycle(tuple(tuple(v) for v in w["odd_cycle"]))
        if "bipartition" in w:
            bp = w["bipartition"]
            rep.bipartition = Bipartition(tuple(tuple(v) for v in bp["m1"]), tuple(tuple(v) for v in bp["m2"]))
        if verdict is Verdict.TRACTABLE:
            rep.f_max = _table_from_dict(w["f_max"], n)
            rep.pair = WeakTournamentPair(_table_from_dict(w["phi"], n), _table_from_dict(w["psi"], n),
                                          frozenset(tuple(p) for p in w["tournament_scope"]))
            rep.m = _table_from_dict(w["m"], n)
            rep.m_used = bool(w["m_used"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"report: malformed ({exc})") from None
    return rep


def solution_to_dict(inst: Instance, result, method: str) -> dict:
    if result is None:
        return {"method": method, "status": "unsat"}
    f, measure = result
    return {
        "method": method,
        "status": "optimal",
        "assignment": {v: int(a) for v, a in zip(inst.variables, f)},
        "measure": int(measure),
    }
