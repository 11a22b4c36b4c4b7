"""Elementary divisors and a triangular image basis for Z_(3)[zeta_9] (x) Z_(3)[zeta_9]."""

from cyclowed.cyclotomic import t_valuation
from cyclowed.dedekind import (
    dedekind_eldiv_closed_form,
    dedekind_eldiv_oracle,
    dedekind_image_basis,
    dedekind_membership,
    dedekind_unit_indices,
    hochschild,
)

p, n = 3, 2
units = dedekind_unit_indices(p, n)
print("unit indices      :", units)
print("closed form       :", [dedekind_eldiv_closed_form(p, n, u) for u in units])
print("Smith form oracle :", dedekind_eldiv_oracle(p, n))

print("\ntriangular basis (theta = zeta), diagonal t-valuations:")
for i, row in enumerate(dedekind_image_basis(p, n, "zeta")):
    print(f"  row {i}: v_t = {t_valuation(row[i], p, n)}   last entry = {row[-1]}")

print("\n(1, 0, ..., 0) in image?", bool(dedekind_membership(p, n, [1, 0, 0, 0, 0, 0])))

print("\nHochschild homology, untwisted, degrees 0..4:")
print("  ", [str(hochschild(p, n, 1, j)) for j in range(5)])
