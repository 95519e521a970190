"""Backtracking search over explicit tuple sets.

The workhorse is :class:`Problem`: integer variables with bitmask domains and
table constraints, solved by depth-first search in a fixed variable order
with generalised arc consistency maintained after every choice. Because the
order is static and values are tried ascending, the first solution found is
the lexicographically least one.

:func:`enumerate_solutions` and :func:`brute_force_optimum` deliberately do
not use :class:`Problem`; they walk the full product space and serve as the
independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

from .model import Constraint, Instance, Relation, check_assignment, evaluate_measure, unary

DESK_LIMIT = 10**7


class SearchSpaceTooLarge(RuntimeError):
    pass


def _bits(values: Iterable[int]) -> int:
    m = 0
    for v in values:
        m |= 1 << v
    return m


def _values(mask: int) -> list[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


class Problem:
    """A finite CSP with table constraints.

    ``domains[i]`` is a bitmask of the values still allowed for variable
    ``i``. Constraints may repeat a variable in their scope; they are
    normalised to distinct scopes on insertion.
    """

    def __init__(self, domains: Sequence[int]):
        self.domains = list(domains)
        self.scopes: list[tuple[int, ...]] = []
        self.tables: list[tuple[tuple[int, ...], ...]] = []
        self.watch: list[list[int]] = [[] for _ in self.domains]

    @classmethod
    def from_instance(cls, inst: Instance, extra: Mapping[int, Iterable[int]] | None = None) -> Problem:
        full = (1 << inst.size) - 1
        p = cls([full] * len(inst.variables))
        for v, allowed in (extra or {}).items():
            p.domains[v] &= _bits(allowed)
        for c in inst.constraints:
            p.add(c.scope, c.relation.tuples)
        return p

    def add(self, scope: Sequence[int], tuples: Iterable[Sequence[int]]) -> None:
        scope = tuple(scope)
        first = {}
        for i, v in enumerate(scope):
            first.setdefault(v, i)
        if len(first) == len(scope):
            rows = {tuple(t) for t in tuples}
            vars_ = scope
        else:
            keep = sorted(first.values())
            rows = set()
            for t in tuples:
                if all(t[i] == t[first[v]] for i, v in enumerate(scope)):
                    rows.add(tuple(t[i] for i in keep))
            vars_ = tuple(scope[i] for i in keep)
        if len(vars_) == 1:
            self.domains[vars_[0]] &= _bits(t[0] for t in rows)
            return
        idx = len(self.scopes)
        self.scopes.append(vars_)
        self.tables.append(tuple(sorted(rows)))
        for v in vars_:
            self.watch[v].append(idx)

    def restrict(self, var: int, values: Iterable[int]) -> None:
        self.domains[var] &= _bits(values)

    # propagation -------------------------------------------------------

    def _propagate(self, doms: list[int], queue: Iterable[int]) -> bool:
        scopes, tables, watch = self.scopes, self.tables, self.watch
        pending = list(dict.fromkeys(queue))
        queued = set(pending)
        while pending:
            ci = pending.pop()
            queued.discard(ci)
            scope = scopes[ci]
            k = len(scope)
            cur = [doms[v] for v in scope]
            sup = [0] * k
            for t in tables[ci]:
                for i in range(k):
                    if not (cur[i] >> t[i]) & 1:
                        break
                else:
                    for i in range(k):
                        sup[i] |= 1 << t[i]
            for i in range(k):
                if sup[i] != cur[i]:
                    if not sup[i]:
                        return False
                    v = scope[i]
                    doms[v] = sup[i]
                    for cj in watch[v]:
                        if cj != ci and cj not in queued:
                            queued.add(cj)
                            pending.append(cj)
        return True

    def initial(self) -> list[int] | None:
        doms = list(self.domains)
        if any(d == 0 for d in doms):
            return None
        if not self._propagate(doms, range(len(self.scopes))):
            return None
        return doms

    def _assign(self, doms: list[int], var: int, val: int) -> list[int] | None:
        new = list(doms)
        new[var] = 1 << val
        if not self._propagate(new, self.watch[var]):
            return None
        return new

    # search ------------------------------------------------------------

    def solutions(self, doms: list[int] | None = None) -> Iterator[tuple[int, ...]]:
        """Yield all solutions in lexicographic order.

        ``doms`` may supply already-propagated starting domains.
        """
        if doms is None:
            doms = self.initial()
        if doms is None:
            return
        n = len(doms)
        if n == 0:
            yield ()
            return
        stack = [(doms, 0)]
        while stack:
            doms, var = stack.pop()
            if var == n:
                yield tuple(d.bit_length() - 1 for d in doms)
                continue
            children = []
            for val in _values(doms[var]):
                new = doms if doms[var] == 1 << val else self._assign(doms, var, val)
                if new is not None:
                    children.append((new, var + 1))
            stack.extend(reversed(children))

    def solve(self, doms: list[int] | None = None) -> tuple[int, ...] | None:
        return next(self.solutions(doms), None)

    def minimize(self, cost: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], int] | None:
        """Branch and bound on a separable objective ``sum cost[v][x_v]``.

        Returns the lexicographically least optimal solution and its value.
        """
        doms = self.initial()
        if doms is None:
            return None
        n = len(doms)
        best: list = [None, None]

        def bound(ds):
            return sum(min(cost[v][a] for a in _values(ds[v])) for v in range(n))

        def rec(ds, var):
            if best[1] is not None and bound(ds) >= best[1]:
                return
            if var == n:
                sol = tuple(d.bit_length() - 1 for d in ds)
                best[0], best[1] = sol, sum(cost[v][a] for v, a in enumerate(sol))
                return
            for val in _values(ds[var]):
                new = ds if ds[var] == 1 << val else self._assign(ds, var, val)
                if new is not None:
                    rec(new, var + 1)

        rec(doms, 0)
        return None if best[0] is None else (best[0], best[1])


# instance-level operations ------------------------------------------------

def solve_decision(inst: Instance, extra_unary: Mapping[int, Iterable[int]] | None = None) -> tuple[int, ...] | None:
    """Lexicographically least satisfying assignment, or ``None`` when UNSAT.

    ``extra_unary`` maps variable indices to additional allowed value sets.
    """
    return Problem.from_instance(inst, extra_unary).solve()


def compute_value_sets(inst: Instance) -> list[frozenset]:
    """Exact per-variable projections of the solution set."""
    p = Problem.from_instance(inst)
    doms = p.initial()
    n = len(inst.variables)
    if doms is None:
        return [frozenset()] * n
    known = [set() for _ in range(n)]
    for v in range(n):
        for a in _values(doms[v]):
            if a in known[v]:
                continue
            q = Problem.from_instance(inst, {v: (a,)})
            sol = q.solve()
            if sol is not None:
                for u, b in enumerate(sol):
                    known[u].add(b)
    return [frozenset(s) for s in known]


def enumerate_solutions(inst: Instance, cap: int | None = None, limit: int = DESK_LIMIT) -> list[tuple[int, ...]]:
    """All satisfying assignments in lexicographic order, by exhaustive scan."""
    space = inst.size ** len(inst.variables)
    if cap is None and space > limit:
        raise SearchSpaceTooLarge(
            f"{inst.size}^{len(inst.variables)} = {space} candidate assignments exceeds the limit {limit}")
    out = []
    for f in product(range(inst.size), repeat=len(inst.variables)):
        if check_assignment(inst, f):
            out.append(f)
            if cap is not None and len(out) >= cap:
                break
    return out


def brute_force_optimum(inst: Instance, limit: int = DESK_LIMIT) -> tuple[tuple[int, ...], int] | None:
    """Minimum-measure solution by exhaustive scan; ``None`` when UNSAT."""
    best = None
    for f in enumerate_solutions(inst, limit=limit):
        m = evaluate_measure(inst, f)
        if best is None or m < best[1]:
            best = (f, m)
    return best


def branch_and_bound(inst: Instance) -> tuple[tuple[int, ...], int] | None:
    return Problem.from_instance(inst).minimize(inst.value_costs())


# (2,3)-consistency ----------------------------------------------------------

@dataclass
class _PathState:
    doms: list[set]
    rel: dict


def _path_consistency(inst: Instance) -> tuple[_PathState, list] | None:
    n = len(inst.variables)
    A = range(inst.size)
    doms = [set(A) for _ in range(n)]
    rel: dict[tuple[int, int], set] = {}
    cons = [(c.scope, set(c.relation.tuples)) for c in inst.constraints]

    def pair(u, v):
        if u < v:
            return rel.setdefault((u, v), {(a, b) for a in doms[u] for b in doms[v]})
        return {(b, a) for a, b in pair(v, u)}

    def set_pair(u, v, allowed):
        if u < v:
            rel[(u, v)] = allowed
        else:
            rel[(v, u)] = {(b, a) for a, b in allowed}

    changed = True
    while changed:
        changed = False
        # filter constraint tuples against domains and pairwise relations
        for k, (scope, tuples) in enumerate(cons):
            keep = set()
            for t in tuples:
                ok = all(t[i] in doms[v] for i, v in enumerate(scope))
                if ok:
                    for i in range(len(scope)):
                        for j in range(i + 1, len(scope)):
                            u, v = scope[i], scope[j]
                            if u == v:
                                if t[i] != t[j]:
                                    ok = False
                            elif (t[i], t[j]) not in pair(u, v):
                                ok = False
                            if not ok:
                                break
                        if not ok:
                            break
                if ok:
                    keep.add(t)
            if keep != tuples:
                cons[k] = (scope, keep)
                changed = True
            if not keep:
                return None
            for i, v in enumerate(scope):
                proj = {t[i] for t in keep}
                if not doms[v] <= proj:
                    doms[v] &= proj
                    changed = True
            for i in range(len(scope)):
                for j in range(i + 1, len(scope)):
                    u, v = scope[i], scope[j]
                    if u == v:
                        continue
                    proj = {(t[i], t[j]) for t in keep}
                    cur = pair(u, v)
                    if not cur <= proj:
                        set_pair(u, v, cur & proj)
                        changed = True
        # domains into pairwise relations and back
        for (u, v), r in list(rel.items()):
            new = {(a, b) for a, b in r if a in doms[u] and b in doms[v]}
            if new != r:
                rel[(u, v)] = new
                changed = True
            du, dv = {a for a, _ in new}, {b for _, b in new}
            if not doms[u] <= du or not doms[v] <= dv:
                doms[u] &= du
                doms[v] &= dv
                changed = True
        if any(not d for d in doms):
            return None
        # compose through every third variable
        for u in range(n):
            for v in range(u + 1, n):
                for w in range(n):
                    if w == u or w == v:
                        continue
                    ruw, rwv = pair(u, w), pair(w, v)
                    via = {}
                    for a, c in ruw:
                        via.setdefault(a, set()).add(c)
                    cur = pair(u, v)
                    new = {(a, b) for a, b in cur if any((c, b) in rwv for c in via.get(a, ()))}
                    if new != cur:
                        rel[(u, v)] = new
                        changed = True
                        if not new:
                            return None
    return _PathState(doms, rel), cons


def three_consistency(inst: Instance) -> Instance | None:
    """Sound (2,3)-consistency closure.

    Returns an equivalent instance carrying the tightened constraint tables,
    a unary constraint per variable and the nontrivial implied binary
    relations, or ``None`` when some domain empties. Derived relations are
    added to the instance's language under fresh names.
    """
    res = _path_consistency(inst)
    if res is None:
        return None
    state, cons = res
    derived: list[Relation] = []
    out: list[Constraint] = []
    for k, ((scope, tuples), c) in enumerate(zip(cons, inst.constraints)):
        if tuples == set(c.relation.tuples):
            out.append(c)
        else:
            rel = Relation(f"{c.relation.name}#c{k}", c.relation.arity, frozenset(tuples))
            if rel.arity > 1:
                derived.append(rel)
            out.append(Constraint(scope, rel))
    for v, d in enumerate(state.doms):
        out.append(Constraint((v,), unary(d)))
    for (u, v), r in sorted(state.rel.items()):
        if len(r) < len(state.doms[u]) * len(state.doms[v]):
            rel = Relation(f"#p{u}_{v}", 2, frozenset(r))
            derived.append(rel)
            out.append(Constraint((u, v), rel))
    return Instance(inst.language.extend(*derived), inst.costs, inst.variables,
                    tuple(out), inst.weights)
