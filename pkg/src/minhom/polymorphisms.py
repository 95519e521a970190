"""Conservative operations, preservation, and indicator-problem searches.

Whether a polymorphism with some prescribed entries exists is decided by
solving the indicator problem: one CSP variable per table entry, the entry
at ``(x1, ..., xk)`` ranging over ``{x1, ..., xk}``, and one table
constraint per relation and per choice of ``k`` rows of that relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .engine import Problem, _bits
from .model import ConstraintLanguage, Relation, is_cartesian_product


class InternalInconsistency(RuntimeError):
    """A search that must succeed on a classified language came back empty."""


@dataclass(frozen=True)
class OperationTable:
    """A ``k``-ary operation on ``0..size-1`` stored row-major."""

    size: int
    arity: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.size ** self.arity:
            raise ValueError("table length does not match size**arity")

    @classmethod
    def from_function(cls, size: int, arity: int, fn: Callable[..., int]) -> OperationTable:
        return cls(size, arity, tuple(fn(*args) for args in product(range(size), repeat=arity)))

    @classmethod
    def projection(cls, size: int, arity: int, i: int) -> OperationTable:
        return cls.from_function(size, arity, lambda *xs: xs[i])

    def index(self, args: Sequence[int]) -> int:
        i = 0
        for x in args:
            i = i * self.size + x
        return i

    def __call__(self, *args: int) -> int:
        return self.table[self.index(args)]

    def is_conservative(self) -> bool:
        return all(out in args for args, out in zip(product(range(self.size), repeat=self.arity), self.table))

    def rows(self) -> list[list[int]]:
        """Table as nested lists, one row per leading argument prefix."""
        n = self.size
        return [list(self.table[i:i + n]) for i in range(0, len(self.table), n)]


@dataclass(frozen=True)
class EntryConstraint:
    args: tuple[int, ...]
    value: int

    def __post_init__(self):
        if self.value not in self.args:
            raise ValueError(f"entry {self.args} -> {self.value} is not conservative")


# a few boolean operations used throughout
def meet(size: int = 2) -> OperationTable:
    return OperationTable.from_function(size, 2, min)


def join(size: int = 2) -> OperationTable:
    return OperationTable.from_function(size, 2, max)


def boolean_p() -> OperationTable:
    """``(x and not y) or (not y and z) or (x and z)`` on {0,1}."""
    return OperationTable.from_function(
        2, 3, lambda x, y, z: int((x and not y) or (not y and z) or (x and z)))


def preserves(op: OperationTable, rel: Relation) -> bool:
    rows = rel.sorted_tuples()
    tuples = rel.tuples
    for pick in product(rows, repeat=op.arity):
        image = tuple(op(*col) for col in zip(*pick))
        if image not in tuples:
            return False
    return True


def preserves_language(op: OperationTable, lang: ConstraintLanguage) -> bool:
    return op.is_conservative() and all(preserves(op, r) for r in lang.relations)


def com_set(f: OperationTable) -> frozenset:
    n = f.size
    return frozenset(frozenset((a, b)) for a, b in combinations(range(n), 2) if f(a, b) == f(b, a))


def is_down(f: OperationTable, a: int, b: int) -> bool:
    """``f`` is commutative on ``{a, b}`` with value ``b``."""
    return a != b and f(a, b) == b and f(b, a) == b


def is_arithmetical_on(m: OperationTable, a: int, b: int) -> bool:
    return all(m(x, x, y) == y and m(y, x, x) == y and m(y, x, y) == y for x, y in ((a, b), (b, a)))


def arithmetical_entries(a: int, b: int) -> list[EntryConstraint]:
    out = []
    for x, y in ((a, b), (b, a)):
        out += [EntryConstraint((x, x, y), y), EntryConstraint((y, x, x), y), EntryConstraint((y, x, y), y)]
    return out


def down_entries(a: int, b: int) -> list[EntryConstraint]:
    return [EntryConstraint((a, b), b), EntryConstraint((b, a), b)]


# combinators -----------------------------------------------------------------

def combine_binary(f: OperationTable, g: OperationTable) -> OperationTable:
    """``h(x, y) = f(g(x, y), g(y, x))``; ``Com(h)`` is ``Com(f) | Com(g)``."""
    return OperationTable.from_function(f.size, 2, lambda x, y: f(g(x, y), g(y, x)))


def compose(outer: OperationTable, *inner: OperationTable) -> OperationTable:
    """``outer(inner_1(xs), ..., inner_j(xs))`` where all inner ops share an arity."""
    k = inner[0].arity
    return OperationTable.from_function(outer.size, k, lambda *xs: outer(*(g(*xs) for g in inner)))


# indicator problems ----------------------------------------------------------

@dataclass
class _Indicator:
    problem: Problem
    base: list[int] | None
    size: int
    arity: int

    def var(self, args: Sequence[int]) -> int:
        i = 0
        for x in args:
            i = i * self.size + x
        return i


@lru_cache(maxsize=256)
def _indicator(lang: ConstraintLanguage, arity: int) -> _Indicator:
    n = lang.size
    cells = list(product(range(n), repeat=arity))
    p = Problem([_bits(args) for args in cells])

    def var(args):
        i = 0
        for x in args:
            i = i * n + x
        return i

    for rel in lang.relations:
        if is_cartesian_product(rel):
            continue
        rows = rel.sorted_tuples()
        for pick in product(rows, repeat=arity):
            if all(t == pick[0] for t in pick):
                continue
            p.add([var(col) for col in zip(*pick)], rows)
    return _Indicator(p, p.initial(), n, arity)


def _search(
    lang: ConstraintLanguage,
    arity: int,
    entries: Iterable[EntryConstraint] = (),
    same: Iterable[tuple[Sequence[int], Sequence[int]]] = (),
) -> OperationTable | None:
    ind = _indicator(lang, arity)
    if ind.base is None:
        return None
    doms = list(ind.base)
    touched = []
    for e in entries:
        if len(e.args) != arity:
            raise ValueError(f"entry {e.args} does not have arity {arity}")
        v = ind.var(e.args)
        doms[v] &= 1 << e.value
        if not doms[v]:
            return None
        touched.append(v)
    base = ind.problem
    eq = [(ind.var(x), ind.var(y)) for x, y in same]
    if eq:
        p = Problem(doms)
        p.scopes = list(base.scopes)
        p.tables = list(base.tables)
        p.watch = [list(w) for w in base.watch]
        full = tuple((a, a) for a in range(lang.size))
        for u, v in eq:
            p.add((u, v), full)
            touched += [u, v]
    else:
        p = Problem(doms)
        p.scopes, p.tables, p.watch = base.scopes, base.tables, base.watch
    queue = {ci for v in touched for ci in p.watch[v]}
    if not p._propagate(p.domains, queue):
        return None
    sol = p.solve(p.domains)
    if sol is None:
        return None
    return OperationTable(lang.size, arity, sol)


def find_polymorphism(
    lang: ConstraintLanguage,
    arity: int,
    constraints: Iterable[EntryConstraint] | Mapping[tuple[int, ...], int] = (),
    commutative: Iterable[tuple[int, int]] = (),
) -> OperationTable | None:
    """Lexicographically least conservative polymorphism meeting the entries.

    ``commutative`` lists pairs ``(a, b)`` on which a binary result must
    satisfy ``f(a, b) == f(b, a)`` without fixing the value.
    """
    if isinstance(constraints, Mapping):
        constraints = [EntryConstraint(tuple(k), v) for k, v in constraints.items()]
    same = [((a, b), (b, a)) for a, b in commutative]
    if same and arity != 2:
        raise ValueError("commutativity constraints apply to binary operations only")
    op = _search(lang, arity, list(constraints), same)
    if op is not None and not preserves_language(op, lang):
        raise InternalInconsistency("indicator search returned a non-polymorphism")
    return op


def down_witness(lang: ConstraintLanguage, a: int, b: int) -> OperationTable | None:
    return find_polymorphism(lang, 2, down_entries(a, b))


def pair_query_down(lang: ConstraintLanguage, a: int, b: int) -> bool:
    return down_witness(lang, a, b) is not None


def arithmetical_witness(lang: ConstraintLanguage, a: int, b: int) -> OperationTable | None:
    return find_polymorphism(lang, 3, arithmetical_entries(a, b))


def pair_query_arithmetical(lang: ConstraintLanguage, a: int, b: int) -> bool:
    return arithmetical_witness(lang, a, b) is not None


def joint_down_witness(lang: ConstraintLanguage, *pairs: tuple[int, int]) -> OperationTable | None:
    """A binary polymorphism that is ``down`` on every listed ordered pair."""
    want: dict[tuple[int, int], int] = {}
    for a, b in pairs:
        for e in down_entries(a, b):
            if want.setdefault(e.args, e.value) != e.value:
                return None
    return find_polymorphism(lang, 2, want)


def joint_down_query(lang: ConstraintLanguage, ab: tuple[int, int], cd: tuple[int, int]) -> bool:
    return joint_down_witness(lang, ab, cd) is not None


def commutative_pairs(lang: ConstraintLanguage) -> frozenset:
    """Union of ``Com(f)`` over all binary polymorphisms, pair by pair."""
    return frozenset(
        frozenset((a, b))
        for a, b in combinations(range(lang.size), 2)
        if pair_query_down(lang, a, b) or pair_query_down(lang, b, a)
    )


def compute_f_max(lang: ConstraintLanguage) -> OperationTable:
    pairs = commutative_pairs(lang)
    op = find_polymorphism(lang, 2, commutative=[tuple(sorted(p)) for p in sorted(pairs, key=sorted)])
    if op is None or com_set(op) != pairs:
        raise InternalInconsistency("no binary polymorphism is commutative on the union of Com sets")
    return op


# exhaustive oracle -------------------------------------------------------------

def conservative_tables(size: int, arity: int) -> Iterator[OperationTable]:
    """Every conservative table, in lexicographic order."""
    choices = [sorted(set(args)) for args in product(range(size), repeat=arity)]
    for table in product(*choices):
        yield OperationTable(size, arity, table)


def all_polymorphisms(lang: ConstraintLanguage, arity: int) -> list[OperationTable]:
    rels = [r for r in lang.relations if not is_cartesian_product(r)]
    return [op for op in conservative_tables(lang.size, arity) if all(preserves(op, r) for r in rels)]


def satisfies_entries(op: OperationTable, entries: Iterable[EntryConstraint]) -> bool:
    return all(op(*e.args) == e.value for e in entries)
