# The two-element domain: clone table, closed-form rule, pp-definitions, gadgets.
from minhom.boolean import BooleanMode, classify_boolean, clone_table, eval_pp_formula, or_nand_definitions
from minhom.boolean import reduce_maxcut, reduce_mis
from minhom.engine import branch_and_bound

for entry in clone_table():
    lang = entry.language()
    print(f"{entry.name:8} minhom={classify_boolean(lang, BooleanMode.MINHOM)!s:5} "
          f"min={classify_boolean(lang, BooleanMode.MIN)}")

for name, formula, lang, expected in or_nand_definitions(3):
    print(name, sorted(eval_pp_formula(formula, lang).tuples) == sorted(expected.tuples))

# the 5-cycle: independence number 2, max cut 4
c5 = [(i, (i + 1) % 5) for i in range(5)]
print("mis gadget optimum", branch_and_bound(reduce_mis(5, c5))[1])  # 5 - 2
print("maxcut gadget optimum", branch_and_bound(reduce_maxcut(5, c5))[1])  # 2*5 - 2*4
