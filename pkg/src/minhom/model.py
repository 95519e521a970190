"""Domains, relations, constraint languages, cost sets and instances.

Domain elements are the integers ``0..n-1``. A language is always read as
conservative: every unary relation and the equality relation are usable in
constraints without being listed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

EQUALITY = "="
_UNARY_NAME = re.compile(r"^U\[([0-9, ]*)\]$")


class ModelError(ValueError):
    """Malformed relation, language, cost set or instance."""


@dataclass(frozen=True)
class Relation:
    name: str
    arity: int
    tuples: frozenset

    def __post_init__(self):
        if self.arity < 1:
            raise ModelError(f"relation {self.name!r}: arity must be positive")
        for t in self.tuples:
            if len(t) != self.arity:
                raise ModelError(f"relation {self.name!r}: tuple {t} has wrong length")

    @classmethod
    def from_tuples(cls, name: str, arity: int, tuples: Iterable[Sequence[int]]) -> Relation:
        rows = [tuple(int(x) for x in t) for t in tuples]
        if len(set(rows)) != len(rows):
            dup = next(t for t in rows if rows.count(t) > 1)
            raise ModelError(f"relation {name!r}: duplicate tuple {dup}")
        return cls(name, arity, frozenset(rows))

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)

    def sorted_tuples(self) -> list[tuple[int, ...]]:
        return sorted(self.tuples)

    def max_value(self) -> int:
        return max((max(t) for t in self.tuples), default=-1)


def unary(values: Iterable[int]) -> Relation:
    vals = sorted(set(int(v) for v in values))
    return Relation("U[" + ",".join(map(str, vals)) + "]", 1, frozenset((v,) for v in vals))


def equality(n: int) -> Relation:
    return Relation(EQUALITY, 2, frozenset((a, a) for a in range(n)))


def is_cartesian_product(rel: Relation) -> bool:
    """True when ``rel`` equals the product of its coordinate projections."""
    sizes = 1
    for i in range(rel.arity):
        sizes *= len({t[i] for t in rel.tuples})
    return sizes == len(rel.tuples)


@dataclass(frozen=True)
class ConstraintLanguage:
    size: int
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        if self.size < 1:
            raise ModelError("domain size must be at least 1")
        seen = set()
        for rel in self.relations:
            if rel.name in seen:
                raise ModelError(f"duplicate relation name {rel.name!r}")
            if rel.name == EQUALITY or _UNARY_NAME.match(rel.name):
                raise ModelError(f"relation name {rel.name!r} is reserved")
            seen.add(rel.name)
            if rel.max_value() >= self.size:
                raise ModelError(f"relation {rel.name!r} uses a value outside 0..{self.size - 1}")

    @classmethod
    def of(cls, size: int, *relations: Relation) -> ConstraintLanguage:
        return cls(size, tuple(relations))

    @property
    def domain(self) -> range:
        return range(self.size)

    def names(self) -> list[str]:
        return [r.name for r in self.relations]

    def relation(self, name: str) -> Relation:
        """Resolve a relation name, including ``=`` and unary ``U[...]`` names."""
        for rel in self.relations:
            if rel.name == name:
                return rel
        if name == EQUALITY:
            return equality(self.size)
        m = _UNARY_NAME.match(name)
        if m:
            body = m.group(1).strip()
            vals = [int(x) for x in body.split(",") if x.strip()] if body else []
            if any(v >= self.size for v in vals):
                raise ModelError(f"unary relation {name!r} leaves the domain")
            return unary(vals)
        raise ModelError(f"unknown relation {name!r}")

    def admits(self, rel: Relation) -> bool:
        """Whether ``rel`` may appear in a constraint over this language."""
        if rel.arity == 1:
            return rel.max_value() < self.size
        if rel == equality(self.size):
            return True
        return rel in self.relations

    def extend(self, *relations: Relation) -> ConstraintLanguage:
        return ConstraintLanguage(self.size, self.relations + tuple(relations))


@dataclass(frozen=True)
class CostSet:
    functions: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.functions:
            raise ModelError("a cost set needs at least one function")
        n = len(self.functions[0])
        for r in self.functions:
            if len(r) != n:
                raise ModelError("cost functions have different lengths")
            if any(v < 0 for v in r):
                raise ModelError("cost values must be non-negative")

    @classmethod
    def of(cls, *functions: Sequence[int]) -> CostSet:
        return cls(tuple(tuple(int(v) for v in r) for r in functions))

    @property
    def size(self) -> int:
        return len(self.functions[0])

    def __len__(self) -> int:
        return len(self.functions)


def characteristic_costs(n: int) -> CostSet:
    """The cost set ``{e_i}`` of characteristic vectors (plain MinHom)."""
    return CostSet(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def maxsol_cost_set(labels: Sequence[int]) -> CostSet:
    """Single cost function ``top - x`` with ``top = max(labels) + 1``.

    ``labels[i]`` is the numeric value of domain element ``i``. Minimising
    the resulting measure is maximising the weighted sum of labels.
    """
    if not labels:
        raise ModelError("need at least one label")
    top = max(labels) + 1
    return CostSet(((tuple(top - x for x in labels)),))


@dataclass(frozen=True)
class PreferenceGraph:
    size: int
    arcs: frozenset

    def has_arc(self, a: int, b: int) -> bool:
        return (a, b) in self.arcs


def build_preference_graph(costs: CostSet, size: int | None = None) -> PreferenceGraph:
    n = costs.size if size is None else size
    if costs.size != n:
        raise ModelError(f"cost vectors have length {costs.size}, domain has {n}")
    arcs = frozenset(
        (a, b)
        for a in range(n)
        for b in range(n)
        if a != b and any(r[a] > r[b] for r in costs.functions)
    )
    return PreferenceGraph(n, arcs)


def check_ug_complete(g: PreferenceGraph) -> bool:
    return all(g.has_arc(a, b) or g.has_arc(b, a) for a, b in combinations(range(g.size), 2))


@dataclass(frozen=True)
class Constraint:
    scope: tuple[int, ...]
    relation: Relation


@dataclass(frozen=True)
class Instance:
    """A weighted instance ``(V, C, W)``; scopes hold variable indices."""

    language: ConstraintLanguage
    costs: CostSet
    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    weights: tuple[tuple[int, ...], ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        lang = self.language
        if self.costs.size != lang.size:
            raise ModelError("cost vectors do not match the domain size")
        if len(set(self.variables)) != len(self.variables):
            raise ModelError("duplicate variable names")
        for c in self.constraints:
            if len(c.scope) != c.relation.arity:
                raise ModelError(f"scope {c.scope} does not match arity of {c.relation.name!r}")
            if any(not 0 <= v < len(self.variables) for v in c.scope):
                raise ModelError(f"scope {c.scope} refers to an unknown variable")
            if not lang.admits(c.relation):
                raise ModelError(f"relation {c.relation.name!r} is not in the language")
        if len(self.weights) != len(self.variables):
            raise ModelError("weight matrix needs one row per variable")
        for row in self.weights:
            if len(row) != len(self.costs) or any(w < 0 for w in row):
                raise ModelError("weight rows need one non-negative entry per cost function")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.variables)})

    @classmethod
    def build(
        cls,
        language: ConstraintLanguage,
        costs: CostSet,
        variables: Sequence[str],
        constraints: Iterable[tuple[Sequence[str], str | Relation]] = (),
        weights: Sequence[Sequence[int]] | Mapping[str, Sequence[int]] | None = None,
    ) -> Instance:
        """Build an instance from variable names.

        Relations may be given by name (resolved through the language) or
        directly. Missing weights default to all zeros.
        """
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        cons = []
        for scope, rel in constraints:
            if isinstance(rel, str):
                rel = language.relation(rel)
            try:
                cons.append(Constraint(tuple(index[v] for v in scope), rel))
            except KeyError as exc:
                raise ModelError(f"unknown variable {exc.args[0]!r}") from None
        if weights is None:
            rows = [(0,) * len(costs)] * len(variables)
        elif isinstance(weights, Mapping):
            rows = [weights.get(v, (0,) * len(costs)) for v in variables]
        else:
            rows = weights
        return cls(language, costs, variables, tuple(cons),
                   tuple(tuple(int(w) for w in row) for row in rows))

    @property
    def size(self) -> int:
        return self.language.size

    def index(self, name: str) -> int:
        return self._index[name]

    def with_constraints(self, extra: Iterable[Constraint]) -> Instance:
        return Instance(self.language, self.costs, self.variables,
                        self.constraints + tuple(extra), self.weights)

    def value_costs(self) -> list[list[int]]:
        """``cost[v][a]`` = sum over r of ``w[v][r] * r(a)``."""
        fs = self.costs.functions
        return [[sum(w * r[a] for w, r in zip(row, fs)) for a in range(self.size)]
                for row in self.weights]


def check_assignment(inst: Instance, f: Sequence[int]) -> bool:
    """True iff ``f`` (values in variable order) satisfies every constraint."""
    if len(f) != len(inst.variables):
        raise ModelError("assignment must be total")
    return all(tuple(f[v] for v in c.scope) in c.relation.tuples for c in inst.constraints)


def evaluate_measure(inst: Instance, f: Sequence[int]) -> int:
    # python ints never wrap, so the sum is exact however large
    total = 0
    for v, row in enumerate(inst.weights):
        a = f[v]
        if not 0 <= a < inst.size:
            raise ModelError(f"value {a} for {inst.variables[v]!r} is outside the domain")
        for w, r in zip(row, inst.costs.functions):
            total += w * r[a]
    return total


def as_mapping(inst: Instance, f: Sequence[int]) -> dict[str, int]:
    return {v: int(a) for v, a in zip(inst.variables, f)}
