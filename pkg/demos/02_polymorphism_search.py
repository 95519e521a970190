# Looking for polymorphisms with some entries fixed.
from minhom.boolean import NE, OR
from minhom.model import ConstraintLanguage
from minhom.polymorphisms import (arithmetical_witness, compute_f_max, com_set, down_witness,
                                  find_polymorphism, joint_down_witness)

or_lang = ConstraintLanguage(2, (OR,))
print(find_polymorphism(or_lang, 2, {(0, 1): 1, (1, 0): 1}).rows())  # join
print(find_polymorphism(or_lang, 2, {(0, 1): 0, (1, 0): 0}))  # meet breaks OR: None

ne_lang = ConstraintLanguage(2, (NE,))
print(down_witness(ne_lang, 0, 1))  # nothing commutative preserves !=
m = arithmetical_witness(ne_lang, 0, 1)
print(m.table)  # the ternary that rescues it

# three elements, no relations: everything is allowed
free = ConstraintLanguage(3, ())
print(joint_down_witness(free, (0, 1), (0, 2)).rows())
print(joint_down_witness(free, (0, 1), (1, 0)))  # contradictory entries
print(sorted(sorted(p) for p in com_set(compute_f_max(free))))
