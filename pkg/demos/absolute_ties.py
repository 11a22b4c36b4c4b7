"""Congruences cutting out Z C_{p^n} inside the product of Z[zeta_{p^i}], with a membership check."""

import random

from cyclowed.absolute import (
    AbsoluteTuple,
    FinSuppSeq,
    absolute_apply,
    absolute_image_membership_oracle,
    absolute_index,
    km_ties_check,
    km_ties_render,
)

for n in (1, 2, 3):
    print(f"Z C_{3**n}:")
    for line in km_ties_render(3, n):
        print("   ", line)
    print(f"    index = {absolute_index(3, n)}")

r = random.Random(0)
t = absolute_apply(3, 2, [r.randint(-4, 4) for _ in range(9)])
print("\nimage of a random group element passes:", km_ties_check(t).ok)

bump = AbsoluteTuple(3, 2, (FinSuppSeq({0: 1}), FinSuppSeq(), FinSuppSeq()))
bad = t + bump
rep = km_ties_check(bad)
print("after adding 1 at x_{0,0}:", rep.ok, "| oracle agrees:", rep.ok == absolute_image_membership_oracle(bad))
for v in rep.violations:
    print(f"    violated at l={v.l}, j={v.j}: {v.lhs_residue} != {v.rhs_residue} mod {v.modulus}")
