"""Seeded random languages, cost sets, instances and graphs for testing.

Every function takes a ``random.Random`` so corpora are reproducible from
one integer seed.
"""

from __future__ import annotations

import random
from itertools import combinations, product
from typing import Callable

from .classify import Verdict, classify
from .engine import solve_decision
from .model import (
    ConstraintLanguage,
    CostSet,
    Instance,
    Relation,
    build_preference_graph,
    characteristic_costs,
    check_ug_complete,
    unary,
)

DEFAULT_SEED = 20240501


def random_relation(rng: random.Random, size: int, arity: int, name: str, density: float = 0.5) -> Relation:
    rows = [t for t in product(range(size), repeat=arity) if rng.random() < density]
    if not rows:
        rows = [tuple(rng.randrange(size) for _ in range(arity))]
    return Relation.from_tuples(name, arity, rows)


def random_boolean_language(rng: random.Random, max_arity: int = 3, max_relations: int = 3) -> ConstraintLanguage:
    rels = []
    for i in range(rng.randint(1, max_relations)):
        rels.append(random_relation(rng, 2, rng.randint(1, max_arity), f"R{i}", rng.choice((0.3, 0.5, 0.7))))
    return ConstraintLanguage(2, tuple(rels))


# closure operators used to plant tractable structure ---------------------------

def chain_ops(rng: random.Random, size: int) -> list[Callable]:
    order = list(range(size))
    rng.shuffle(order)
    rank = {a: i for i, a in enumerate(order)}
    lo = lambda x, y: x if rank[x] <= rank[y] else y  # noqa: E731
    hi = lambda x, y: y if rank[x] <= rank[y] else x  # noqa: E731
    return [lo, hi]


def semilattice_op(rng: random.Random, size: int) -> list[Callable]:
    return chain_ops(rng, size)[:1]


def tournament_op(rng: random.Random, size: int) -> list[Callable]:
    win = {}
    for a, b in combinations(range(size), 2):
        w = rng.choice((a, b))
        win[a, b] = win[b, a] = w
    return [lambda x, y: x if x == y else win[x, y]]


def arithmetical_op(rng: random.Random, size: int) -> list[Callable]:
    def m(x, y, z):
        if y == z:
            return x
        if x == y:
            return z
        return x
    return [m]


OP_FAMILIES = (chain_ops, semilattice_op, tournament_op, arithmetical_op)


def close_relation(rel: Relation, ops: list[Callable], max_size: int) -> Relation | None:
    """Smallest superset closed under ``ops``; None once it exceeds ``max_size``."""
    rows = set(rel.tuples)
    while True:
        fresh = set()
        for op in ops:
            k = op.__code__.co_argcount
            for pick in product(sorted(rows), repeat=k):
                t = tuple(op(*col) for col in zip(*pick))
                if t not in rows:
                    fresh.add(t)
        if not fresh:
            return Relation(rel.name, rel.arity, frozenset(rows))
        rows |= fresh
        if len(rows) > max_size:
            return None


def random_closed_language(rng: random.Random, size: int, max_relations: int = 2,
                           max_tuples: int = 10) -> ConstraintLanguage:
    family = rng.choice(OP_FAMILIES)
    ops = family(rng, size)
    rels = []
    if family is arithmetical_op and rng.random() < 0.5:
        # a permutation graph is closed under the ternary and forbids
        # commutative binary polymorphisms on every pair it swaps
        perm = list(range(size))
        while perm == sorted(perm):
            rng.shuffle(perm)
        rels.append(Relation.from_tuples("P", 2, [(a, perm[a]) for a in range(size)]))
    for i in range(rng.randint(1, max_relations)):
        for _ in range(20):
            arity = rng.choice((1, 2, 2, 2, 3)) if size <= 3 else rng.choice((1, 2, 2))
            seed_rows = [tuple(rng.randrange(size) for _ in range(arity)) for _ in range(rng.randint(1, 3))]
            closed = close_relation(Relation.from_tuples(f"R{i}", arity, set(seed_rows)), ops, max_tuples)
            if closed is not None:
                rels.append(closed)
                break
    return ConstraintLanguage(size, tuple(rels))


def random_costs(rng: random.Random, size: int, max_functions: int = 3, top: int = 4) -> CostSet:
    """A cost set whose undirected preference graph is complete."""
    if rng.random() < 0.25:
        return characteristic_costs(size)
    while True:
        funcs = [tuple(rng.randint(0, top) for _ in range(size)) for _ in range(rng.randint(1, max_functions))]
        costs = CostSet(tuple(funcs))
        if check_ug_complete(build_preference_graph(costs, size)):
            return costs


def random_tractable_pair(rng: random.Random, max_size: int = 4, tries: int = 200):
    """A (language, costs, report) triple whose verdict is TRACTABLE."""
    for _ in range(tries):
        size = rng.randint(2, max_size)
        lang = random_closed_language(rng, size)
        costs = random_costs(rng, size)
        report = classify(lang, costs)
        if report.verdict is Verdict.TRACTABLE:
            return lang, costs, report
    raise RuntimeError("no tractable language found; widen the generator")


def random_instance(rng: random.Random, lang: ConstraintLanguage, costs: CostSet,
                    max_vars: int = 6, max_constraints: int = 5, max_weight: int = 5,
                    satisfiable: bool = True, tries: int = 30) -> Instance:
    inst = None
    for _ in range(tries):
        names = [f"v{i}" for i in range(rng.randint(1, max_vars))]
        cons = []
        for _ in range(rng.randint(0, max_constraints)):
            if lang.relations and rng.random() < 0.8:
                rel = rng.choice(lang.relations)
            else:
                rel = unary(rng.sample(range(lang.size), rng.randint(1, lang.size)))
            cons.append(([rng.choice(names) for _ in range(rel.arity)], rel))
        weights = [[rng.randint(0, max_weight) for _ in costs.functions] for _ in names]
        inst = Instance.build(lang, costs, names, cons, weights)
        if not satisfiable or solve_decision(inst) is not None:
            return inst
    return inst


def random_graph(rng: random.Random, max_vertices: int = 6) -> tuple[int, list[tuple[int, int]]]:
    n = rng.randint(1, max_vertices)
    p = rng.choice((0.2, 0.4, 0.6, 0.8))
    return n, [e for e in combinations(range(n), 2) if rng.random() < p]
