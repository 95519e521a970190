"""Small fixed languages and seeded corpora shared by the test modules."""

import random
from functools import lru_cache
from itertools import combinations, product

from minhom.boolean import LE, NE, OR
from minhom.classify import classify
from minhom.generators import random_boolean_language, random_instance, random_tractable_pair
from minhom.model import ConstraintLanguage, CostSet, Instance, characteristic_costs

E01 = characteristic_costs(2)  # e_0, e_1
X = CostSet(((0, 1),))  # r(x) = x: arc (1, 0)
MAXSOL2 = CostSet(((2, 1),))  # arc (0, 1)

LE_LANG = ConstraintLanguage(2, (LE,))
NE_LANG = ConstraintLanguage(2, (NE,))
OR_LANG = ConstraintLanguage(2, (OR,))


def empty(n):
    return ConstraintLanguage(n, ())


def le_instance(weights=((5, 1), (0, 3)), costs=E01, extra=()):
    return Instance.build(LE_LANG, costs, ["u", "v"], [(("u", "v"), "x1<=x2"), *extra], list(weights))


@lru_cache(maxsize=None)
def tractable_corpus(seed, count=200):
    """``count`` (language, costs, report, instance) tuples over TRACTABLE languages."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        lang, costs, report = random_tractable_pair(rng)
        out.append((lang, costs, report, random_instance(rng, lang, costs)))
    return tuple(out)


@lru_cache(maxsize=None)
def boolean_corpus(seed, count=100):
    rng = random.Random(seed)
    return tuple(random_boolean_language(rng) for _ in range(count))


def independence_number(n, edges):
    best = 0
    for bits in product((0, 1), repeat=n):
        if all(not (bits[u] and bits[v]) for u, v in edges):
            best = max(best, sum(bits))
    return best


def max_cut(n, edges):
    return max((sum(bits[u] != bits[v] for u, v in edges) for bits in product((0, 1), repeat=n)), default=0)


def all_pairs(n):
    return list(combinations(range(n), 2))


def classified(lang, costs):
    return classify(lang, costs)
