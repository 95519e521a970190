# Deciding tractability and reading the certificates.
from minhom.boolean import AND3, LE, ONE, OR, ZERO
from minhom.classify import classify, verify_report
from minhom.model import ConstraintLanguage, CostSet, Relation, characteristic_costs

e01 = characteristic_costs(2)
x = CostSet.of((0, 1))  # r(x) = x, so 0 is the cheap value

rep = classify(ConstraintLanguage(2, (LE,)), e01)
print(rep.verdict, rep.bipartition, rep.pair.phi.table, rep.pair.psi.table)

rep = classify(ConstraintLanguage(2, (OR,)), x)
print(rep.verdict, rep.violation)  # fails the local conditions

k01 = ConstraintLanguage(2, (ZERO, ONE, AND3))
print(classify(k01, x).verdict, classify(k01, e01).verdict)

# a hard language whose certificate is an odd cycle in the conflict graph
lang = ConstraintLanguage(3, (
    Relation.from_tuples("A", 2, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)]),
    Relation.from_tuples("B", 2, [(0, 1), (0, 2), (2, 1)]),
))
rep = classify(lang, characteristic_costs(3))
print(rep.verdict, rep.odd_cycle)
print("witness problems:", verify_report(lang, characteristic_costs(3), rep))

print(classify(ConstraintLanguage(3, ()), CostSet.of((0, 0, 1))).verdict)  # 0 vs 1 never compared
