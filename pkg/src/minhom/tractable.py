"""Weak tournament pairs, arithmetical operations and the pruning solver.

Solving a tractable instance goes: exact value sets, pruning of dominated
values, restriction of constraint tables, conversion to a multi-sorted
instance, flattening to a single disjoint-union domain, then exact branch
and bound on what is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .engine import branch_and_bound, compute_value_sets
from .model import (
    Constraint,
    ConstraintLanguage,
    CostSet,
    Instance,
    Relation,
    build_preference_graph,
    check_assignment,
    evaluate_measure,
    unary,
)
from .polymorphisms import (
    EntryConstraint,
    InternalInconsistency,
    OperationTable,
    arithmetical_entries,
    arithmetical_witness,
    com_set,
    combine_binary,
    compose,
    down_entries,
    down_witness,
    find_polymorphism,
    is_arithmetical_on,
    is_down,
    joint_down_witness,
)


@dataclass(frozen=True)
class WeakTournamentPair:
    phi: OperationTable
    psi: OperationTable
    scope: frozenset  # ordered pairs: Com°(f_max) restricted to preference arcs


def tournament_scope(f_max: OperationTable, costs: CostSet) -> frozenset:
    arcs = build_preference_graph(costs, f_max.size).arcs
    com = com_set(f_max)
    return frozenset((a, b) for a, b in arcs if frozenset((a, b)) in com)


def weak_tournament_violations(phi: OperationTable, psi: OperationTable, scope: frozenset) -> list[str]:
    """Entry-wise check of the three weak tournament pair clauses."""
    bad = []
    for a, b in combinations(range(phi.size), 2):
        ab, ba = (a, b) in scope, (b, a) in scope
        if ab and ba:
            if not ((is_down(phi, a, b) and is_down(psi, b, a)) or (is_down(phi, b, a) and is_down(psi, a, b))):
                bad.append(f"pair {{{a},{b}}}: needs opposite commutative values")
        elif ab or ba:
            x, y = (a, b) if ab else (b, a)
            ok = ((is_down(phi, x, y) and is_down(psi, y, x))
                  or (is_down(phi, y, x) and is_down(psi, x, y))
                  or (is_down(phi, x, y) and is_down(psi, x, y)))
            if not ok:
                bad.append(f"pair ({x},{y}): no admissible orientation")
        else:
            if not (phi(a, b) == a and phi(b, a) == b and psi(a, b) == b and psi(b, a) == a):
                bad.append(f"pair {{{a},{b}}}: phi/psi must be first/second projection")
    return bad


def _pair_key(p):
    return tuple(sorted(p))


def construct_weak_tournament_pair(
    lang: ConstraintLanguage,
    costs: CostSet,
    m1: Iterable[tuple[int, int]],
    m2: Iterable[tuple[int, int]],
    f_max: OperationTable,
    prefer_double_down: bool = True,
) -> WeakTournamentPair:
    """Find phi, psi by direct search.

    phi must be ``down`` on every vertex of ``m1``, psi on every vertex of
    ``m2``; both are commutative on ``Com(f_max)`` and projections (first
    for phi, second for psi) elsewhere. With ``prefer_double_down`` the
    one-directional pairs are additionally pushed, greedily and in order,
    towards both operations choosing the cheaper value, which lets pruning
    remove more.
    """
    n = lang.size
    com = com_set(f_max)
    scope = tournament_scope(f_max, costs)
    comm = sorted(_pair_key(p) for p in com)
    outside = [(a, b) for a, b in combinations(range(n), 2) if frozenset((a, b)) not in com]
    one_way = sorted((a, b) for a, b in scope if (b, a) not in scope)

    def build(vertices, proj_first):
        entries = {}
        for a, b in vertices:
            for e in down_entries(a, b):
                entries[e.args] = e.value
        for a, b in outside:
            entries[(a, b)] = a if proj_first else b
            entries[(b, a)] = b if proj_first else a
        op = find_polymorphism(lang, 2, entries, commutative=comm)
        if op is None:
            raise InternalInconsistency("weak tournament pair search failed")
        if prefer_double_down:
            for a, b in one_way:
                if is_down(op, a, b):
                    continue
                trial = dict(entries)
                trial[(a, b)] = b
                trial[(b, a)] = b
                better = find_polymorphism(lang, 2, trial, commutative=comm)
                if better is not None:
                    entries, op = trial, better
        return op

    phi = build(sorted(m1), True)
    psi = build(sorted(m2), False)
    bad = weak_tournament_violations(phi, psi, scope)
    if bad:
        raise InternalInconsistency("constructed pair is not a weak tournament pair: " + "; ".join(bad))
    return WeakTournamentPair(phi, psi, scope)


def joint_down_by_induction(lang: ConstraintLanguage, vertices: Sequence[tuple[int, int]]) -> OperationTable:
    """A binary polymorphism ``down`` on all ``vertices``, built from pairwise witnesses.

    For ``n + 1`` vertices it combines witnesses ``f1`` (missing the first),
    ``f2`` (missing the second) and ``f3`` (missing the last) as
    ``f3(f1(x, y), f2(x, y))``.
    """
    vs = tuple(sorted(vertices))
    n = lang.size

    @lru_cache(maxsize=None)
    def witness(sub):
        if len(sub) == 0:
            return OperationTable.projection(n, 2, 0)
        if len(sub) == 1:
            op = down_witness(lang, *sub[0])
        elif len(sub) == 2:
            op = joint_down_witness(lang, *sub)
        else:
            f1 = witness(sub[1:])
            f2 = witness(sub[:1] + sub[2:])
            f3 = witness(sub[:-1])
            op = compose(f3, f1, f2)
        if op is None:
            raise InternalInconsistency(f"no joint down witness for {sub}")
        return op

    return witness(vs)


def weak_tournament_pair_by_combinators(
    lang: ConstraintLanguage,
    costs: CostSet,
    m1: Iterable[tuple[int, int]],
    m2: Iterable[tuple[int, int]],
    f_max: OperationTable,
) -> WeakTournamentPair:
    phi1 = joint_down_by_induction(lang, list(m1))
    psi1 = joint_down_by_induction(lang, list(m2))
    phi2 = combine_binary(f_max, phi1)
    psi2 = combine_binary(f_max, psi1)
    n = lang.size
    phi = OperationTable.from_function(n, 2, lambda x, y: phi2(x, phi2(y, x)))
    psi = OperationTable.from_function(n, 2, lambda x, y: psi2(psi2(y, x), y))
    scope = tournament_scope(f_max, costs)
    bad = weak_tournament_violations(phi, psi, scope)
    if bad:
        raise InternalInconsistency("combinator pair is not a weak tournament pair: " + "; ".join(bad))
    return WeakTournamentPair(phi, psi, scope)


def construct_arithmetical(lang: ConstraintLanguage, pairs: Iterable[Iterable[int]]) -> tuple[OperationTable, bool]:
    """Ternary polymorphism arithmetical on every pair; ``(op, used)``.

    With no pairs the first projection is returned and ``used`` is False.
    """
    pairs = sorted(_pair_key(p) for p in pairs)
    if not pairs:
        return OperationTable.projection(lang.size, 3, 0), False
    entries: list[EntryConstraint] = []
    for a, b in pairs:
        entries += arithmetical_entries(a, b)
    m = find_polymorphism(lang, 3, entries)
    if m is None:
        raise InternalInconsistency(f"no polymorphism is arithmetical on {pairs}")
    return m, True


def fold_arithmetical(m: OperationTable, n: OperationTable, a: int, b: int) -> OperationTable:
    """Extend ``m`` to be arithmetical on ``{a, b}`` using a per-pair witness ``n``.

    Assumes every binary polymorphism is a projection on ``{a, b}``.
    """
    for _ in range(3):
        if is_arithmetical_on(m, a, b):
            return m
        if any(m(x, x, y) != y for x, y in ((a, b), (b, a))):
            m = compose(m, n, n, m)
        elif any(m(y, x, x) != y for x, y in ((a, b), (b, a))):
            m = compose(m, m, n, n)
        else:
            m = compose(m, m, n, m)
    if not is_arithmetical_on(m, a, b):
        raise InternalInconsistency(f"folding did not reach an arithmetical operation on {{{a},{b}}}")
    return m


def arithmetical_by_combinators(lang: ConstraintLanguage, pairs: Iterable[Iterable[int]]) -> tuple[OperationTable, bool]:
    pairs = sorted(_pair_key(p) for p in pairs)
    if not pairs:
        return OperationTable.projection(lang.size, 3, 0), False
    m = None
    for a, b in pairs:
        w = arithmetical_witness(lang, a, b)
        if w is None:
            raise InternalInconsistency(f"no arithmetical witness on {{{a},{b}}}")
        m = w if m is None else fold_arithmetical(m, w, a, b)
    return m, True


# pruning pipeline ------------------------------------------------------------

def dominated(wtp: WeakTournamentPair, a: int, b: int) -> bool:
    """Both phi and psi are ``down`` from ``a`` to ``b``."""
    return is_down(wtp.phi, a, b) and is_down(wtp.psi, a, b)


def prune_domains(inst: Instance, wtp: WeakTournamentPair, vsets: Sequence[frozenset] | None = None) -> list[frozenset]:
    """Delete dominated values to a fixpoint without losing the optimum.

    After each deletion the value sets are recomputed exactly, so every
    deletion is justified against the current solution set.
    """
    if vsets is None:
        vsets = compute_value_sets(inst)
    vsets = list(vsets)
    if any(not s for s in vsets):
        return [frozenset()] * len(vsets)
    cur = inst
    changed = True
    while changed:
        changed = False
        for v, dom in enumerate(vsets):
            for a in sorted(dom):
                if any(b != a and dominated(wtp, a, b) for b in dom):
                    cur = cur.with_constraints([Constraint((v,), unary(dom - {a}))])
                    vsets = compute_value_sets(cur)
                    changed = True
                    break
            if changed:
                break
    return vsets


def restrict_constraints(inst: Instance, vsets: Sequence[frozenset]) -> Instance:
    new_rels: list[Relation] = []
    cons = []
    for k, c in enumerate(inst.constraints):
        keep = frozenset(t for t in c.relation.tuples if all(x in vsets[v] for x, v in zip(t, c.scope)))
        if keep == c.relation.tuples:
            cons.append(c)
            continue
        rel = Relation(f"{c.relation.name}|{k}", c.relation.arity, keep)
        if rel.arity > 1:
            new_rels.append(rel)
        cons.append(Constraint(c.scope, rel))
    return Instance(inst.language.extend(*new_rels), inst.costs, inst.variables, tuple(cons), inst.weights)


@dataclass(frozen=True)
class MultiSortedInstance:
    sorts: tuple[tuple[int, ...], ...]
    sort_of: tuple[int, ...]
    constraints: tuple[tuple[tuple[int, ...], frozenset], ...]
    variables: tuple[str, ...]
    weights: tuple[tuple[int, ...], ...]
    costs: CostSet

    def signature(self, k: int) -> tuple[int, ...]:
        return tuple(self.sort_of[v] for v in self.constraints[k][0])

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for s in self.sorts:
            out.append(acc)
            acc += len(s)
        return out

    def encode(self, sort: int, a: int) -> int:
        return self.offsets()[sort] + self.sorts[sort].index(a)

    def decode(self, g: int) -> int:
        for s in self.sorts:
            if g < len(s):
                return s[g]
            g -= len(s)
        raise ValueError("element outside the flattened domain")

    def measure(self, f: Sequence[int]) -> int:
        return sum(w * r[a] for v, a in enumerate(f) for w, r in zip(self.weights[v], self.costs.functions))

    def is_solution(self, f: Sequence[int]) -> bool:
        if any(a not in self.sorts[self.sort_of[v]] for v, a in enumerate(f)):
            return False
        return all(tuple(f[v] for v in scope) in rel for scope, rel in self.constraints)


def to_multi_sorted(inst: Instance, vsets: Sequence[frozenset]) -> MultiSortedInstance:
    sorts: list[tuple[int, ...]] = []
    sort_of = []
    for s in vsets:
        key = tuple(sorted(s))
        if key not in sorts:
            sorts.append(key)
        sort_of.append(sorts.index(key))
    cons = tuple((c.scope, c.relation.tuples) for c in inst.constraints)
    return MultiSortedInstance(tuple(sorts), tuple(sort_of), cons, inst.variables, inst.weights, inst.costs)


def flatten_multi_sorted(ms: MultiSortedInstance) -> Instance:
    """Single-sorted instance over the disjoint union of the sorts."""
    offsets = ms.offsets()
    size = sum(len(s) for s in ms.sorts)
    index = [{a: offsets[i] + j for j, a in enumerate(s)} for i, s in enumerate(ms.sorts)]
    decode = [a for s in ms.sorts for a in s]
    rels = []
    cons = []
    for k, (scope, tuples) in enumerate(ms.constraints):
        sig = [ms.sort_of[v] for v in scope]
        enc = []
        for t in tuples:
            if all(a in index[s] for a, s in zip(t, sig)):
                enc.append(tuple(index[s][a] for a, s in zip(t, sig)))
        rel = Relation(f"c{k}", len(scope), frozenset(enc))
        rels.append(rel)
        cons.append(Constraint(scope, rel))
    for v, s in enumerate(ms.sort_of):
        cons.append(Constraint((v,), unary(index[s].values())))
    if size:
        costs = CostSet(tuple(tuple(r[a] for a in decode) for r in ms.costs.functions))
    else:
        # no variables at all: a one-element placeholder domain
        costs = CostSet(tuple((0,) for _ in ms.costs.functions))
    lang = ConstraintLanguage(max(size, 1), tuple(rels))
    return Instance(lang, costs, ms.variables, tuple(cons), ms.weights)


def solve_tractable(inst: Instance, report) -> tuple[tuple[int, ...], int] | None:
    """Optimal solution and measure for an instance over a tractable language."""
    if report.verdict.name != "TRACTABLE":
        raise ValueError(f"language is not classified tractable ({report.verdict.name})")
    vsets = compute_value_sets(inst)
    if any(not s for s in vsets):
        return None
    vsets = prune_domains(inst, report.pair, vsets)
    if any(not s for s in vsets):
        raise InternalInconsistency("pruning emptied a value set")
    restricted = restrict_constraints(inst, vsets)
    ms = to_multi_sorted(restricted, vsets)
    flat = flatten_multi_sorted(ms)
    res = branch_and_bound(flat)
    if res is None:
        return None
    g, _ = res
    f = tuple(ms.decode(x) for x in g)
    if not check_assignment(inst, f):
        raise InternalInconsistency("decoded assignment violates the original instance")
    return f, evaluate_measure(inst, f)


@dataclass(frozen=True)
class MultimorphismCheck:
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def apply_pointwise(op: OperationTable, f: Sequence[int], g: Sequence[int]) -> tuple[int, ...]:
    return tuple(op(a, b) for a, b in zip(f, g))


def verify_multimorphism(inst: Instance, phi: OperationTable, psi: OperationTable,
                         f: Sequence[int], g: Sequence[int]) -> MultimorphismCheck:
    h1, h2 = apply_pointwise(phi, f, g), apply_pointwise(psi, f, g)
    if not check_assignment(inst, h1):
        return MultimorphismCheck(False, f"phi(f, g) = {h1} is not a solution")
    if not check_assignment(inst, h2):
        return MultimorphismCheck(False, f"psi(f, g) = {h2} is not a solution")
    lhs = evaluate_measure(inst, h1) + evaluate_measure(inst, h2)
    rhs = evaluate_measure(inst, f) + evaluate_measure(inst, g)
    if lhs <= rhs:
        return MultimorphismCheck(True)
    vc = inst.value_costs()
    for v, (a, b) in enumerate(zip(f, g)):
        if vc[v][h1[v]] + vc[v][h2[v]] > vc[v][a] + vc[v][b]:
            return MultimorphismCheck(False, f"variable {inst.variables[v]!r} with values ({a}, {b})")
    return MultimorphismCheck(False, f"measure {lhs} > {rhs}")
