"""Radical layer dimensions of W1 at 81, and the first-order tie structure it comes from."""

from cyclowed.wedderburn import (
    w1_radical_closure_check,
    w1_radical_layer_dim,
    w1_radical_layer_dim_by_count,
    w2_subring_experiment,
)

seq = [w1_radical_layer_dim(3, 4, i) for i in range(10)]
print("l_{81,i}, i = 0..9 :", ", ".join(map(str, seq)))
print("digit-sum count    :", seq == [w1_radical_layer_dim_by_count(3, 4, i) for i in range(10)])
print("r * r^i in r^{i+1} at 9:", all(w1_radical_closure_check(3, 2, i) for i in range(5)))

rep = w2_subring_experiment(3, 2)
print(f"W2 at 9: {rep.products_in_w2}/{rep.pairs_tested} basis products stay in W2")
