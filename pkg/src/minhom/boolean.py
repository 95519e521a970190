"""The two-element case: the conservative clone table, the closed-form
tractability rule, pp-formula evaluation, and the two hardness gadgets."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .engine import DESK_LIMIT, SearchSpaceTooLarge
from .model import ConstraintLanguage, CostSet, Instance, ModelError, Relation
from .polymorphisms import boolean_p, join, meet, preserves_language


def boolean_relation(name: str, arity: int, pred) -> Relation:
    return Relation(name, arity, frozenset(t for t in product((0, 1), repeat=arity) if pred(*t)))


ZERO = boolean_relation("x=0", 1, lambda x: x == 0)
ONE = boolean_relation("x=1", 1, lambda x: x == 1)
LE = boolean_relation("x1<=x2", 2, lambda x, y: x <= y)
NE = boolean_relation("x1!=x2", 2, lambda x, y: x != y)
OR = boolean_relation("x1|x2", 2, lambda x, y: x or y)
NAND = boolean_relation("~x1|~x2", 2, lambda x, y: not (x and y))
XOR3_0 = boolean_relation("x1^x2^x3=0", 3, lambda x, y, z: x ^ y ^ z == 0)
XOR3_1 = boolean_relation("x1^x2^x3=1", 3, lambda x, y, z: x ^ y ^ z == 1)
EQ_OR_EQ = boolean_relation("x1=x2|x1=x3", 3, lambda x, y, z: x == y or x == z)
AND3 = boolean_relation("x1=x2x3", 3, lambda x, y, z: x == (y and z))
OR3 = boolean_relation("x1=x2|x3", 3, lambda x, y, z: x == (y or z))


def nand_m(m: int) -> Relation:
    return boolean_relation(f"x1..x{m}=0", m, lambda *xs: not all(xs))


def or_m(m: int) -> Relation:
    return boolean_relation(f"x1|..|x{m}=1", m, lambda *xs: any(xs))


@dataclass(frozen=True)
class CloneEntry:
    name: str
    generators: tuple[Relation, ...]

    def language(self) -> ConstraintLanguage:
        return ConstraintLanguage(2, self.generators)


def clone_table(ms: Iterable[int] = (2, 3)) -> list[CloneEntry]:
    """Rows of the conservative boolean clone table; parametrised rows per ``m``."""
    rows = [
        CloneEntry("T01", (ZERO, ONE)),
        CloneEntry("M01", (ZERO, ONE, LE)),
        CloneEntry("S01", (ZERO, NE)),
        CloneEntry("SM", (NE, LE)),
        CloneEntry("L01", (ONE, XOR3_0)),
        CloneEntry("U01", (ZERO, ONE, EQ_OR_EQ)),
        CloneEntry("K01", (ZERO, ONE, AND3)),
        CloneEntry("D01", (ZERO, ONE, OR3)),
    ]
    for m in ms:
        rows += [
            CloneEntry(f"I1^{m}", (ONE, nand_m(m))),
            CloneEntry(f"MI1^{m}", (ONE, LE, nand_m(m))),
            CloneEntry(f"O0^{m}", (ZERO, or_m(m))),
            CloneEntry(f"MO0^{m}", (ZERO, LE, or_m(m))),
        ]
    return rows


# pp-formulas -------------------------------------------------------------------

@dataclass(frozen=True)
class PPFormula:
    """``exists exists_vars . AND atoms`` with the free variables in order."""

    free: tuple[str, ...]
    exists: tuple[str, ...]
    atoms: tuple[tuple[str, tuple[str, ...]], ...]

    def __post_init__(self):
        if set(self.free) & set(self.exists):
            raise ModelError("a variable cannot be both free and quantified")
        used = {x for _, args in self.atoms for x in args}
        unknown = used - set(self.free) - set(self.exists)
        if unknown:
            raise ModelError(f"atoms use undeclared variables {sorted(unknown)}")
        idle = set(self.exists) - used
        if idle:
            raise ModelError(f"quantified variables {sorted(idle)} occur in no atom")


def eval_pp_formula(formula: PPFormula, lang: ConstraintLanguage, name: str = "pp",
                    limit: int = DESK_LIMIT) -> Relation:
    names = formula.free + formula.exists
    pos = {v: i for i, v in enumerate(names)}
    atoms = []
    for rel_name, args in formula.atoms:
        rel = lang.relation(rel_name)
        if rel.arity != len(args):
            raise ModelError(f"atom {rel_name}{args} has the wrong arity")
        atoms.append((rel.tuples, [pos[a] for a in args]))
    space = lang.size ** len(names)
    if space > limit:
        raise SearchSpaceTooLarge(f"pp-formula over {len(names)} variables: {space} candidates")
    k = len(formula.free)
    out = set()
    for t in product(range(lang.size), repeat=len(names)):
        if t[:k] in out:
            continue
        if all(tuple(t[i] for i in idx) in tuples for tuples, idx in atoms):
            out.add(t[:k])
    return Relation(name, max(k, 1), frozenset(out)) if k else Relation(name, 1, frozenset())


def or_nand_definitions(m: int = 3) -> list[tuple[str, PPFormula, ConstraintLanguage, Relation]]:
    """Six pp-definitions of OR or NAND, each with its defining language."""
    xs = tuple(f"x{i}" for i in range(1, m + 1))
    chain = tuple(("=", (xs[i], xs[i + 1])) for i in range(1, m - 1))
    L = ConstraintLanguage
    return [
        ("or-from-ne-le",
         PPFormula(("x1", "x2"), ("x3",), ((NE.name, ("x1", "x3")), (LE.name, ("x3", "x2")))),
         L(2, (NE, LE)), OR),
        ("or-from-eq-or-eq",
         PPFormula(("x1", "x2"), ("x3",), ((ONE.name, ("x3",)), (EQ_OR_EQ.name, ("x3", "x1", "x2")))),
         L(2, (ONE, EQ_OR_EQ)), OR),
        ("nand-from-and",
         PPFormula(("x1", "x2"), ("x3",), ((ZERO.name, ("x3",)), (AND3.name, ("x3", "x1", "x2")))),
         L(2, (ZERO, AND3)), NAND),
        ("or-from-disjunction",
         PPFormula(("x1", "x2"), ("x3",), ((ONE.name, ("x3",)), (OR3.name, ("x3", "x1", "x2")))),
         L(2, (ONE, OR3)), OR),
        (f"nand-from-nand{m}",
         PPFormula(("x1", "x2"), xs[2:], ((nand_m(m).name, xs),) + chain),
         L(2, (nand_m(m),)), NAND),
        (f"or-from-or{m}",
         PPFormula(("x1", "x2"), xs[2:], ((or_m(m).name, xs),) + chain),
         L(2, (or_m(m),)), OR),
    ]


# closed-form rule ----------------------------------------------------------------

class BooleanMode(enum.Enum):
    MINHOM = "minhom"
    MIN = "min"


def classify_boolean(lang: ConstraintLanguage, mode: BooleanMode = BooleanMode.MINHOM) -> bool:
    """True when tractable: by meet and join (MINHOM) or meet (MIN), or by p."""
    if lang.size != 2:
        raise ModelError("the closed-form rule applies to the domain {0,1} only")
    if preserves_language(boolean_p(), lang):
        return True
    if mode is BooleanMode.MIN:
        return preserves_language(meet(), lang)
    return preserves_language(meet(), lang) and preserves_language(join(), lang)


MIN_COSTS = CostSet(((0, 1),))


# gadgets -------------------------------------------------------------------------

def _check_graph(n: int, edges: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    out = []
    seen = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise ModelError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ModelError(f"edge {(u, v)} leaves the vertex set 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ModelError(f"duplicate edge {key}")
        seen.add(key)
        out.append(key)
    return out


def reduce_mis(n: int, edges: Sequence[Sequence[int]]) -> Instance:
    """Vertex variables, OR on every edge, unit weight on the cost ``x``.

    The optimum is ``n`` minus the independence number.
    """
    edges = _check_graph(n, edges)
    names = [f"y_{i}" for i in range(n)]
    return Instance.build(ConstraintLanguage(2, (OR,)), MIN_COSTS, names,
                          [((names[u], names[v]), OR.name) for u, v in edges],
                          [(1,)] * n)


def reduce_maxcut(n: int, edges: Sequence[Sequence[int]]) -> Instance:
    """``x_i_j ^ y_i ^ y_j = 1`` for both orientations of every edge.

    Only the ``x`` variables carry weight, so the optimum is
    ``2|E| - 2 * maxcut``.
    """
    edges = _check_graph(n, edges)
    ys = [f"y_{i}" for i in range(n)]
    xs = []
    cons = []
    for u, v in edges:
        for i, j in ((u, v), (v, u)):
            x = f"x_{i}_{j}"
            xs.append(x)
            cons.append(((x, ys[i], ys[j]), XOR3_1.name))
    return Instance.build(ConstraintLanguage(2, (XOR3_1,)), MIN_COSTS, ys + xs, cons,
                          [(0,)] * n + [(1,)] * len(xs))
