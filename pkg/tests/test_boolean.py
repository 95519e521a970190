import random

import pytest

from helpers import E01, X, boolean_corpus, independence_number, max_cut
from minhom.boolean import (
    AND3,
    LE,
    NAND,
    NE,
    ONE,
    OR,
    XOR3_0,
    ZERO,
    BooleanMode,
    PPFormula,
    classify_boolean,
    clone_table,
    eval_pp_formula,
    or_nand_definitions,
    reduce_maxcut,
    reduce_mis,
)
from minhom.classify import Verdict, classify
from minhom.engine import branch_and_bound, brute_force_optimum
from minhom.generators import random_graph
from minhom.model import ConstraintLanguage, ModelError
from minhom.polymorphisms import boolean_p, join, meet, preserves

L2 = ConstraintLanguage(2, (NE, LE, ZERO, AND3))


def test_pp_examples():
    f = PPFormula(("x1", "x2"), ("x3",), ((NE.name, ("x1", "x3")), (LE.name, ("x3", "x2"))))
    assert eval_pp_formula(f, L2).tuples == OR.tuples
    g = PPFormula(("x1", "x2"), ("x3",), ((ZERO.name, ("x3",)), (AND3.name, ("x3", "x1", "x2"))))
    assert eval_pp_formula(g, L2).tuples == NAND.tuples
    h = PPFormula(("x1", "x2"), (), ((LE.name, ("x1", "x2")),))
    assert eval_pp_formula(h, L2).tuples == LE.tuples


def test_pp_formula_accepts_equality_and_rejects_bad_shapes():
    eq = PPFormula(("a", "b"), (), (("=", ("a", "b")),))
    assert eval_pp_formula(eq, L2).tuples == {(0, 0), (1, 1)}
    with pytest.raises(ModelError):
        PPFormula(("a",), ("a",), ())
    with pytest.raises(ModelError):
        PPFormula(("a",), (), ((LE.name, ("a", "z")),))
    with pytest.raises(ModelError):
        eval_pp_formula(PPFormula(("a",), (), ((LE.name, ("a",)),)), L2)


@pytest.mark.parametrize("m", [2, 3])
def test_identity_suite(m):
    for name, formula, lang, expected in or_nand_definitions(m):
        assert eval_pp_formula(formula, lang).tuples == expected.tuples, name


def test_rule_examples():
    assert classify_boolean(ConstraintLanguage(2, (LE,)), BooleanMode.MINHOM)
    k01 = ConstraintLanguage(2, (ZERO, ONE, AND3))
    assert not classify_boolean(k01, BooleanMode.MINHOM)
    assert classify_boolean(k01, BooleanMode.MIN)
    assert not classify_boolean(ConstraintLanguage(2, (XOR3_0, ONE)), BooleanMode.MIN)


def test_rule_needs_boolean_domain():
    with pytest.raises(ModelError):
        classify_boolean(ConstraintLanguage(3, ()))


GENERATING_OPS = {
    "T01": [meet(), join(), boolean_p()],
    "M01": [meet(), join()],
    "S01": [boolean_p()],
    "K01": [meet()],
    "D01": [join()],
}


def test_table_generators_are_preserved():
    for entry in clone_table():
        for op in GENERATING_OPS.get(entry.name, []):
            assert all(preserves(op, r) for r in entry.generators), entry.name
        if entry.name.startswith(("I1^", "MI1^")):
            assert all(preserves(meet(), r) for r in entry.generators), entry.name
        if entry.name.startswith(("O0^", "MO0^")):
            assert all(preserves(join(), r) for r in entry.generators), entry.name


def test_table_rows_agree_with_general_classifier():
    for entry in clone_table():
        lang = entry.language()
        assert (classify(lang, E01).verdict is Verdict.TRACTABLE) == classify_boolean(lang, BooleanMode.MINHOM)
        assert (classify(lang, X).verdict is Verdict.TRACTABLE) == classify_boolean(lang, BooleanMode.MIN)


def test_random_languages_agree(seed):
    for lang in boolean_corpus(seed + 1, 30):
        assert (classify(lang, E01).verdict is Verdict.TRACTABLE) == classify_boolean(lang, BooleanMode.MINHOM)
        assert (classify(lang, X).verdict is Verdict.TRACTABLE) == classify_boolean(lang, BooleanMode.MIN)


K3 = [(0, 1), (1, 2), (0, 2)]


def test_gadget_examples():
    assert brute_force_optimum(reduce_mis(3, K3))[1] == 2
    assert brute_force_optimum(reduce_mis(2, [(0, 1)]))[1] == 1
    assert brute_force_optimum(reduce_mis(3, []))[1] == 0
    assert brute_force_optimum(reduce_maxcut(2, [(0, 1)]))[1] == 0
    assert brute_force_optimum(reduce_maxcut(3, K3))[1] == 2
    assert brute_force_optimum(reduce_maxcut(3, []))[1] == 0


def test_gadget_naming_is_deterministic():
    inst = reduce_maxcut(3, [(0, 1), (1, 2)])
    assert inst.variables == ("y_0", "y_1", "y_2", "x_0_1", "x_1_0", "x_1_2", "x_2_1")
    assert reduce_mis(3, K3).variables == ("y_0", "y_1", "y_2")


def test_gadgets_reject_malformed_graphs():
    for bad in ([(0, 0)], [(0, 3)], [(0, 1), (1, 0)]):
        with pytest.raises(ModelError):
            reduce_mis(3, bad)


def test_random_gadgets(seed):
    rng = random.Random(seed)
    for _ in range(15):
        n, edges = random_graph(rng, 5)
        assert branch_and_bound(reduce_mis(n, edges))[1] == n - independence_number(n, edges)
        assert branch_and_bound(reduce_maxcut(n, edges))[1] == 2 * len(edges) - 2 * max_cut(n, edges)
