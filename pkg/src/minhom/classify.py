"""The tractability decision for a conservative language and a cost set.

Pipeline: preference graph and completeness of its undirected shadow,
pair typing, the necessary local conditions, the conflict graph on
commutative-capable arcs, and a two-colouring of that graph. Every verdict
carries a witness that :func:`verify_report` re-checks from scratch.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .model import ConstraintLanguage, CostSet, PreferenceGraph, build_preference_graph, check_ug_complete
from .polymorphisms import (
    OperationTable,
    com_set,
    commutative_pairs,
    compute_f_max,
    is_arithmetical_on,
    is_down,
    joint_down_query,
    pair_query_arithmetical,
    pair_query_down,
    preserves_language,
)
from .tractable import (
    WeakTournamentPair,
    construct_arithmetical,
    construct_weak_tournament_pair,
    tournament_scope,
    weak_tournament_violations,
)


class Verdict(enum.Enum):
    TRACTABLE = "tractable"
    NP_HARD = "np-hard"
    OUTSIDE_ASSUMPTIONS = "outside-assumptions"


class PairKind(enum.Enum):
    MINHOM_PAIR = "minhom-pair"
    MIN_PAIR = "min-pair"
    NO_ARC = "no-arc"


@dataclass(frozen=True)
class PairType:
    pair: tuple[int, int]
    kind: PairKind
    arc: tuple[int, int] | None = None  # the single arc of a min-pair


def classify_pairs(g: PreferenceGraph) -> list[PairType]:
    out = []
    for a, b in combinations(range(g.size), 2):
        ab, ba = g.has_arc(a, b), g.has_arc(b, a)
        if ab and ba:
            out.append(PairType((a, b), PairKind.MINHOM_PAIR))
        elif ab or ba:
            out.append(PairType((a, b), PairKind.MIN_PAIR, (a, b) if ab else (b, a)))
        else:
            out.append(PairType((a, b), PairKind.NO_ARC))
    return out


# A query is ("down", a, b) -- some binary polymorphism is down from a to b --
# or ("arith", a, b) -- some ternary polymorphism is arithmetical on {a, b}.
def run_query(lang: ConstraintLanguage, query: tuple) -> bool:
    kind, a, b = query
    if kind == "down":
        return pair_query_down(lang, a, b)
    if kind == "arith":
        return pair_query_arithmetical(lang, a, b)
    raise ValueError(f"unknown query kind {kind!r}")


@dataclass(frozen=True)
class LocalViolation:
    pair: PairType
    failed: tuple[str, ...]  # sub-condition labels, e.g. ("1.a", "1.b")
    queries: tuple[tuple, ...]  # queries that came back negative


def check_local_conditions(lang: ConstraintLanguage, costs: CostSet) -> LocalViolation | None:
    """First pair breaking the necessary local conditions, or None."""
    g = build_preference_graph(costs, lang.size)
    for pt in classify_pairs(g):
        a, b = pt.pair
        if pt.kind is PairKind.MINHOM_PAIR:
            downs = [("down", a, b), ("down", b, a)]
            failed_downs = [q for q in downs if not run_query(lang, q)]
            if not failed_downs:
                continue
            arith = ("arith", a, b)
            if run_query(lang, arith):
                continue
            return LocalViolation(pt, ("1.a", "1.b"), tuple(failed_downs) + (arith,))
        if pt.kind is PairKind.MIN_PAIR:
            x, y = pt.arc
            down = ("down", x, y)
            if run_query(lang, down):
                continue
            arith = ("arith", a, b)
            if run_query(lang, arith):
                continue
            return LocalViolation(pt, ("2.a", "2.b"), (down, arith))
    return None


@dataclass(frozen=True)
class TGraph:
    vertices: tuple[tuple[int, int], ...]
    edges: frozenset  # frozensets of two vertices

    def neighbours(self, v):
        return sorted(u for e in self.edges if v in e for u in e if u != v)


def two_commutative_pairs(lang: ConstraintLanguage) -> list[tuple[int, int]]:
    """Pairs ``{a, b}`` admitting both commutative restrictions."""
    return [(a, b) for a, b in combinations(range(lang.size), 2)
            if pair_query_down(lang, a, b) and pair_query_down(lang, b, a)]


def build_T_graph(lang: ConstraintLanguage, costs: CostSet) -> TGraph:
    g = build_preference_graph(costs, lang.size)
    m = {frozenset(p) for p in two_commutative_pairs(lang)}
    vertices = tuple(sorted(arc for arc in g.arcs if frozenset(arc) in m))
    edges = frozenset(
        frozenset((u, v)) for u, v in combinations(vertices, 2) if not joint_down_query(lang, u, v)
    )
    return TGraph(vertices, edges)


@dataclass(frozen=True)
class Bipartition:
    m1: tuple
    m2: tuple


@dataclass(frozen=True)
class OddCycle:
    vertices: tuple  # v0, v1, ..., v_{k-1}; consecutive and last-first are adjacent


def bipartition(t: TGraph) -> Bipartition | OddCycle:
    """Two-colour by breadth-first search, or return an odd cycle."""
    adj = {v: [] for v in t.vertices}
    for e in t.edges:
        u, v = sorted(e)
        adj[u].append(v)
        adj[v].append(u)
    for v in adj:
        adj[v].sort()
    colour: dict = {}
    parent: dict = {}
    depth: dict = {}
    for root in t.vertices:
        if root in colour:
            continue
        colour[root], parent[root], depth[root] = 0, None, 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in colour:
                    colour[w], parent[w], depth[w] = 1 - colour[u], u, depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return OddCycle(_cycle_through(u, w, parent, depth))
    m1 = tuple(v for v in t.vertices if colour[v] == 0)
    m2 = tuple(v for v in t.vertices if colour[v] == 1)
    return Bipartition(m1, m2)


def _cycle_through(u, w, parent, depth):
    left, right = [u], [w]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return tuple(left + right[-2::-1])


@dataclass
class ClassificationReport:
    verdict: Verdict
    size: int
    arcs: tuple
    violation: LocalViolation | None = None
    t_graph: TGraph | None = None
    odd_cycle: OddCycle | None = None
    bipartition: Bipartition | None = None
    f_max: OperationTable | None = None
    pair: WeakTournamentPair | None = None
    m: OperationTable | None = None
    m_used: bool = False
    notes: list[str] = field(default_factory=list)


def classify(lang: ConstraintLanguage, costs: CostSet) -> ClassificationReport:
    g = build_preference_graph(costs, lang.size)
    arcs = tuple(sorted(g.arcs))
    if not check_ug_complete(g):
        missing = [(a, b) for a, b in combinations(range(lang.size), 2)
                   if not g.has_arc(a, b) and not g.has_arc(b, a)]
        return ClassificationReport(Verdict.OUTSIDE_ASSUMPTIONS, lang.size, arcs,
                                    notes=[f"no preference between {a} and {b}" for a, b in missing])
    violation = check_local_conditions(lang, costs)
    if violation is not None:
        return ClassificationReport(Verdict.NP_HARD, lang.size, arcs, violation=violation)
    t = build_T_graph(lang, costs)
    split = bipartition(t)
    if isinstance(split, OddCycle):
        return ClassificationReport(Verdict.NP_HARD, lang.size, arcs, t_graph=t, odd_cycle=split)
    f_max = compute_f_max(lang)
    wtp = construct_weak_tournament_pair(lang, costs, split.m1, split.m2, f_max)
    complement = [p for p in combinations(range(lang.size), 2) if frozenset(p) not in com_set(f_max)]
    m, used = construct_arithmetical(lang, complement)
    return ClassificationReport(Verdict.TRACTABLE, lang.size, arcs, t_graph=t, bipartition=split,
                                f_max=f_max, pair=wtp, m=m, m_used=used)


def verify_report(lang: ConstraintLanguage, costs: CostSet, report: ClassificationReport) -> list[str]:
    """Re-check every witness in ``report``; returns a list of problems."""
    problems = []
    g = build_preference_graph(costs, lang.size)
    if tuple(sorted(g.arcs)) != tuple(report.arcs):
        problems.append("preference arcs do not match the cost set")
    complete = check_ug_complete(g)
    if report.verdict is Verdict.OUTSIDE_ASSUMPTIONS:
        if complete:
            problems.append("undirected preference graph is complete")
        return problems
    if not complete:
        problems.append("undirected preference graph is incomplete")
    if report.verdict is Verdict.NP_HARD:
        if report.violation is not None:
            v = report.violation
            fresh = classify_pairs(g)
            if v.pair not in fresh:
                problems.append(f"pair {v.pair} is mistyped")
            for q in v.queries:
                if run_query(lang, q):
                    problems.append(f"query {q} succeeds")
            a, b = v.pair.pair
            if v.pair.kind is PairKind.MINHOM_PAIR:
                needed = {("arith", a, b)}
                if not any(q in v.queries for q in (("down", a, b), ("down", b, a))):
                    problems.append("neither commutative query is cited as failing")
            else:
                needed = {("down", *v.pair.arc), ("arith", a, b)}
            if not needed <= set(v.queries):
                problems.append("violation does not cite every required query")
        elif report.odd_cycle is not None:
            cyc = report.odd_cycle.vertices
            if len(cyc) % 2 == 0 or len(cyc) < 3:
                problems.append(f"cycle of length {len(cyc)} is not odd")
            for a, b in cyc:
                if (a, b) not in g.arcs:
                    problems.append(f"cycle vertex {(a, b)} is not a preference arc")
                elif not (pair_query_down(lang, a, b) and pair_query_down(lang, b, a)):
                    problems.append(f"cycle vertex {(a, b)} lacks two commutative restrictions")
            for i, u in enumerate(cyc):
                w = cyc[(i + 1) % len(cyc)]
                if joint_down_query(lang, u, w):
                    problems.append(f"cycle edge {u}-{w} has a joint witness")
        else:
            problems.append("np-hard report without a certificate")
        return problems
    # tractable
    f_max, wtp, m = report.f_max, report.pair, report.m
    for name, op in (("f_max", f_max), ("phi", wtp.phi), ("psi", wtp.psi), ("m", m)):
        if not preserves_language(op, lang):
            problems.append(f"{name} is not a conservative polymorphism")
    if com_set(f_max) != commutative_pairs(lang):
        problems.append("Com(f_max) is not the union of commutative pairs")
    scope = tournament_scope(f_max, costs)
    if scope != wtp.scope:
        problems.append("weak tournament scope mismatch")
    problems += weak_tournament_violations(wtp.phi, wtp.psi, scope)
    com = com_set(f_max)
    for a, b in combinations(range(lang.size), 2):
        if frozenset((a, b)) not in com and not is_arithmetical_on(m, a, b):
            problems.append(f"m is not arithmetical on {{{a},{b}}}")
    bip = report.bipartition
    if bip is not None:
        if report.t_graph is not None:
            for e in report.t_graph.edges:
                u, v = sorted(e)
                if (u in bip.m1) == (v in bip.m1):
                    problems.append(f"edge {u}-{v} inside one side of the bipartition")
        for u in bip.m1:
            if not is_down(wtp.phi, *u):
                problems.append(f"phi is not down on {u}")
        for u in bip.m2:
            if not is_down(wtp.psi, *u):
                problems.append(f"psi is not down on {u}")
    return problems
