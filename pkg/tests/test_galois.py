from minhom.boolean import AND3, LE, NE, ONE, OR, ZERO
from minhom.galois import all_relations, galois_disagreements, invariant_relations, pp_definable
from minhom.model import ConstraintLanguage, Relation
from minhom.polymorphisms import all_polymorphisms, join, meet


def test_relation_enumeration_counts():
    assert len(all_relations(2, 1)) == 4
    assert len(all_relations(2, 2)) == 16


def test_invariants_of_lattice_operations():
    inv = invariant_relations([meet(), join()], 2, 2)
    assert LE.tuples in inv and NE.tuples not in inv and OR.tuples not in inv


def test_pp_closure_contains_known_definitions():
    defs = pp_definable(ConstraintLanguage(2, (NE, LE)), 2, 1)
    assert OR.tuples in defs
    defs = pp_definable(ConstraintLanguage(2, (ZERO, AND3)), 2, 1)
    assert frozenset({(0, 0), (0, 1), (1, 0)}) in defs


def test_agreement_on_small_languages():
    for lang in (ConstraintLanguage(2, (LE,)), ConstraintLanguage(2, (NE,)), ConstraintLanguage(2, (ONE, AND3))):
        assert galois_disagreements(lang) == []


def test_two_existentials_do_not_always_suffice():
    # OR is invariant under every binary and ternary polymorphism of this
    # language, but its shortest definition needs three quantified variables
    lang = ConstraintLanguage(2, (Relation.from_tuples("R", 3, [(0, 0, 0), (1, 0, 1), (1, 1, 0)]),))
    ops = all_polymorphisms(lang, 2) + all_polymorphisms(lang, 3)
    assert OR.tuples in invariant_relations(ops, 2, 2)
    assert OR.tuples not in pp_definable(lang, 2, 2)
    assert OR.tuples in pp_definable(lang, 2, 3)
    assert galois_disagreements(lang) == [(2, sorted(OR.tuples), "invariant only")]
