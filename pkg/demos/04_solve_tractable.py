# The pruning solver on a random tractable language, checked against brute force.
import random

from minhom.engine import brute_force_optimum, compute_value_sets
from minhom.generators import random_instance, random_tractable_pair
from minhom.tractable import flatten_multi_sorted, prune_domains, restrict_constraints, solve_tractable, to_multi_sorted

rng = random.Random(19)
lang, costs, report = random_tractable_pair(rng, max_size=4)
inst = random_instance(rng, lang, costs)
print([(r.name, sorted(r.tuples)) for r in lang.relations])
print("costs", costs.functions)

vsets = compute_value_sets(inst)
pruned = prune_domains(inst, report.pair, vsets)
print("value sets", [sorted(s) for s in vsets])
print("after pruning", [sorted(s) for s in pruned])

ms = to_multi_sorted(restrict_constraints(inst, pruned), pruned)
flat = flatten_multi_sorted(ms)
print("sorts", ms.sorts, "flattened domain size", flat.size)

print("solver", solve_tractable(inst, report))
print("oracle", brute_force_optimum(inst))
