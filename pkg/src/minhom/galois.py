"""Bounded check of the correspondence between polymorphisms and pp-definitions.

Relations over ``{0,1}`` of small arity are compared two ways: as the
relations preserved by every binary and ternary polymorphism found by
exhaustive table enumeration, and as the projections of conjunctions of
atoms over a fixed number of variables.
"""

from __future__ import annotations

from itertools import product

from .model import ConstraintLanguage, Relation, equality, unary
from .polymorphisms import OperationTable, all_polymorphisms, preserves


def all_relations(size: int, arity: int) -> list[frozenset]:
    points = list(product(range(size), repeat=arity))
    return [frozenset(p for p, keep in zip(points, bits) if keep)
            for bits in product((0, 1), repeat=len(points))]


def invariant_relations(ops: list[OperationTable], size: int, arity: int) -> set[frozenset]:
    return {r for r in all_relations(size, arity) if all(preserves(op, Relation("r", arity, r)) for op in ops)}


def pp_definable(lang: ConstraintLanguage, arity: int, existentials: int) -> set[frozenset]:
    """Relations ``exists y . conj(atoms)`` with ``arity`` free and ``existentials`` bound variables.

    Atoms range over the language, the unary constants and equality. Sets of
    assignments are bitmasks over all points, so conjunction is ``&`` and
    the closure under it enumerates every formula at once.
    """
    nvars = arity + existentials
    points = list(product(range(lang.size), repeat=nvars))
    rels = list(lang.relations) + [unary([a]) for a in range(lang.size)] + [equality(lang.size)]
    full = (1 << len(points)) - 1
    atoms = set()
    for rel in rels:
        for args in product(range(nvars), repeat=rel.arity):
            mask = sum(1 << i for i, p in enumerate(points) if tuple(p[a] for a in args) in rel.tuples)
            atoms.add(mask)
    atoms.discard(full)
    seen = {full}
    frontier = [full]
    while frontier:
        fresh = []
        for s in frontier:
            for a in atoms:
                t = s & a
                if t not in seen:
                    seen.add(t)
                    fresh.append(t)
        frontier = fresh
    return {frozenset(p[:arity] for i, p in enumerate(points) if s >> i & 1) for s in seen}


def galois_disagreements(lang: ConstraintLanguage, max_arity: int = 2, existentials: int = 2) -> list[tuple]:
    """``(arity, relation, side)`` for every relation found on one side only."""
    ops = all_polymorphisms(lang, 2) + all_polymorphisms(lang, 3)
    out = []
    for k in range(1, max_arity + 1):
        inv = invariant_relations(ops, lang.size, k)
        pp = pp_definable(lang, k, existentials)
        out += [(k, sorted(r), "invariant only") for r in sorted(inv - pp, key=sorted)]
        out += [(k, sorted(r), "pp only") for r in sorted(pp - inv, key=sorted)]
    return out
