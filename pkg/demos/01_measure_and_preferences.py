# Instances, the measure, and which values the costs prefer.
from minhom.boolean import LE
from minhom.engine import brute_force_optimum, enumerate_solutions
from minhom.model import (ConstraintLanguage, Instance, build_preference_graph, characteristic_costs,
                          check_ug_complete, evaluate_measure, maxsol_cost_set)

lang = ConstraintLanguage(2, (LE,))
costs = characteristic_costs(2)  # e_0 and e_1: plain minimum cost homomorphism

# u <= v, with u paying 5 for value 0 and 1 for value 1, v paying 0 and 3
inst = Instance.build(lang, costs, ["u", "v"], [(("u", "v"), "x1<=x2")], [(5, 1), (0, 3)])

for f in enumerate_solutions(inst):
    print(f, evaluate_measure(inst, f))
print("optimum:", brute_force_optimum(inst))

# an arc (a, b) means some cost function strictly prefers b to a
print(sorted(build_preference_graph(costs).arcs))
ms = maxsol_cost_set([0, 1, 2])
print(ms.functions, sorted(build_preference_graph(ms).arcs))
print("every pair comparable:", check_ug_complete(build_preference_graph(ms)))
