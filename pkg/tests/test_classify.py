import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from helpers import E01, LE_LANG, MAXSOL2, NE_LANG, OR_LANG, X, boolean_corpus, empty
from minhom.boolean import AND3, ONE, ZERO
from minhom.classify import (
    Bipartition,
    OddCycle,
    PairKind,
    PairType,
    TGraph,
    Verdict,
    bipartition,
    build_T_graph,
    check_local_conditions,
    classify,
    classify_pairs,
    verify_report,
)
from minhom.generators import random_closed_language, random_costs, random_relation
from minhom.model import ConstraintLanguage, CostSet, Relation, build_preference_graph, characteristic_costs
from minhom.polymorphisms import all_polymorphisms, down_entries, join, meet, satisfies_entries

K01 = ConstraintLanguage(2, (ZERO, ONE, AND3))


def test_pair_types():
    assert classify_pairs(build_preference_graph(E01)) == [PairType((0, 1), PairKind.MINHOM_PAIR)]
    assert classify_pairs(build_preference_graph(MAXSOL2)) == [PairType((0, 1), PairKind.MIN_PAIR, (0, 1))]
    assert classify_pairs(build_preference_graph(CostSet.of((0, 0)))) == [PairType((0, 1), PairKind.NO_ARC)]


def test_local_conditions():
    assert check_local_conditions(LE_LANG, E01) is None
    assert check_local_conditions(NE_LANG, E01) is None
    v = check_local_conditions(OR_LANG, X)
    assert v is not None
    assert v.pair.kind is PairKind.MIN_PAIR and v.pair.arc == (1, 0)
    assert set(v.queries) == {("down", 1, 0), ("arith", 0, 1)}


def test_t_graph_examples():
    t = build_T_graph(LE_LANG, E01)
    assert t.vertices == ((0, 1), (1, 0))
    assert t.edges == {frozenset({(0, 1), (1, 0)})}
    assert build_T_graph(NE_LANG, E01).vertices == ()
    t3 = build_T_graph(empty(3), characteristic_costs(3))
    assert len(t3.vertices) == 6
    assert t3.edges == {frozenset({(a, b), (b, a)}) for a, b in combinations(range(3), 2)}


def test_bipartition_examples():
    single = TGraph(((0, 1), (1, 0)), frozenset({frozenset({(0, 1), (1, 0)})}))
    assert bipartition(single) == Bipartition(((0, 1),), ((1, 0),))
    isolated = TGraph(((0, 1), (0, 2)), frozenset())
    assert bipartition(isolated) == Bipartition(((0, 1), (0, 2)), ())
    a, b, c = (0, 1), (1, 2), (0, 2)
    tri = TGraph((a, b, c), frozenset({frozenset({a, b}), frozenset({b, c}), frozenset({a, c})}))
    cyc = bipartition(tri)
    assert isinstance(cyc, OddCycle) and sorted(cyc.vertices) == sorted((a, b, c))


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_bipartition_certificates(seed):
    rng = random.Random(seed)
    verts = [(i, i + 1) for i in range(rng.randint(1, 8))]
    edges = frozenset(frozenset(e) for e in combinations(verts, 2) if rng.random() < 0.3)
    out = bipartition(TGraph(tuple(verts), edges))
    if isinstance(out, Bipartition):
        assert set(out.m1) | set(out.m2) == set(verts)
        assert all((u in out.m1) != (v in out.m1) for u, v in map(tuple, edges))
    else:
        cyc = out.vertices
        assert len(cyc) % 2 == 1 and len(set(cyc)) == len(cyc)
        assert all(frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) in edges for i in range(len(cyc)))


def test_classify_examples():
    le = classify(LE_LANG, E01)
    assert le.verdict is Verdict.TRACTABLE
    assert le.bipartition.m1 == ((0, 1),)
    assert {le.pair.phi, le.pair.psi} == {meet(), join()}
    assert classify(OR_LANG, X).verdict is Verdict.NP_HARD
    assert classify(K01, X).verdict is Verdict.TRACTABLE
    assert classify(K01, E01).verdict is Verdict.NP_HARD
    outside = classify(empty(3), CostSet.of((0, 0, 1)))
    assert outside.verdict is Verdict.OUTSIDE_ASSUMPTIONS
    ne = classify(NE_LANG, E01)
    assert ne.verdict is Verdict.TRACTABLE and ne.m_used


def test_odd_cycle_verdict():
    lang = ConstraintLanguage(3, (
        Relation.from_tuples("A", 2, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)]),
        Relation.from_tuples("B", 2, [(0, 1), (0, 2), (2, 1)]),
    ))
    costs = characteristic_costs(3)
    rep = classify(lang, costs)
    assert rep.verdict is Verdict.NP_HARD and rep.violation is None
    cyc = rep.odd_cycle.vertices
    assert len(cyc) == 3
    assert verify_report(lang, costs, rep) == []
    binary = all_polymorphisms(lang, 2)
    for i, u in enumerate(cyc):
        w = cyc[(i + 1) % 3]
        entries = down_entries(*u) + down_entries(*w)
        assert not any(satisfies_entries(op, entries) for op in binary)


def test_verify_report_catches_tampering():
    rep = classify(LE_LANG, E01)
    assert verify_report(LE_LANG, E01, rep) == []
    rep.pair = type(rep.pair)(join(), join(), rep.pair.scope)
    assert verify_report(LE_LANG, E01, rep)
    hard = classify(OR_LANG, X)
    assert verify_report(OR_LANG, X, hard) == []
    assert verify_report(ConstraintLanguage(2, ()), X, hard)


def test_classify_is_deterministic():
    for lang in boolean_corpus(3, 15):
        assert classify(lang, E01) == classify(lang, E01)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_monotone_hardness(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 3)
    small = random_closed_language(rng, n)
    extra = random_relation(rng, n, rng.randint(1, 2), "Extra", 0.5)
    big = small.extend(extra)
    costs = random_costs(rng, n)
    if classify(small, costs).verdict is Verdict.NP_HARD:
        assert classify(big, costs).verdict is Verdict.NP_HARD


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_every_report_verifies(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 4)
    lang = random_closed_language(rng, n)
    costs = random_costs(rng, n)
    rep = classify(lang, costs)
    assert verify_report(lang, costs, rep) == []
