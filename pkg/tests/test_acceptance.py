"""The eleven exit criteria of the package, one group of tests per criterion.

Run with ``pytest tests/test_acceptance.py``; a per-criterion PASS/FAIL
table is printed at the end of the session.
"""

import random
from fractions import Fraction
from math import comb, prod

import pytest

from cyclowed.absolute import (
    absolute_eldiv_z,
    absolute_eldiv_z_oracle,
    absolute_image_membership_oracle,
    absolute_index,
    absolute_index_m,
    composite_apply,
    composite_checks,
    composite_membership,
    discriminant_magnitude,
    km_ties_check,
    km_ties_render,
    s_value,
)
from cyclowed.arith import divisors, euler_phi, p_part, units
from cyclowed.cyclotomic import CycElement, t_valuation
from cyclowed.dedekind import (
    HochschildDescriptor,
    dedekind_eldiv_closed_form,
    dedekind_eldiv_oracle,
    dedekind_matrix,
    dedekind_points,
    dedekind_unit_indices,
    different_exponent,
    hochschild,
    hochschild_phi,
)
from cyclowed.linalg import ExactMatrix, determinant
from cyclowed.vandermonde import PointTuple, verify_identities
from cyclowed.verify import (
    random_points,
    random_sequence,
    toperator_composition_i,
    toperator_composition_ii,
    toperator_telescoping,
)
from cyclowed.wedderburn import (
    q_polynomial_identities,
    same_lattice,
    w1_basis,
    w1_membership,
    w1_radical_layer_dim,
    w2_basis,
    w2_eldiv_in_w0,
    w2_tuple_membership,
    wedderburn_diagonalize,
    wedderburn_eldiv_closed_form,
    wedderburn_eldiv_oracle,
    wedderburn_image_basis,
    wedderburn_membership,
    vandermonde_det_square,
    vandermonde_zeta,
    wedderburn_vandermonde_basis,
)
from helpers import combo, cyc, rand_absolute

PRIME_POWERS = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)]


def crit(num, title):
    return pytest.mark.acceptance(num, title)


# ---------------------------------------------------------------- 1

C1 = crit(1, "Dedekind elementary divisors at p=3, n=2")


@C1
def test_c1_dedekind_3_2_closed_form_and_oracle():
    closed = sorted(dedekind_eldiv_closed_form(3, 2, u) for u in dedekind_unit_indices(3, 2))
    assert closed == [0, 1, 4, 5, 8, 9]
    assert dedekind_eldiv_oracle(3, 2) == [0, 1, 4, 5, 8, 9]


@C1
def test_c1_dedekind_3_2_determinant_valuation():
    assert t_valuation(determinant(dedekind_matrix(3, 2)), 3, 2) == 27


# ---------------------------------------------------------------- 2

C2 = crit(2, "closed form = oracle for Dedekind and Wedderburn divisors")


@C2
@pytest.mark.parametrize("p,n", PRIME_POWERS)
def test_c2_dedekind_closed_form_equals_oracle(p, n):
    closed = sorted(dedekind_eldiv_closed_form(p, n, u) for u in dedekind_unit_indices(p, n))
    assert dedekind_eldiv_oracle(p, n) == closed


@C2
@pytest.mark.parametrize("p,n", PRIME_POWERS)
def test_c2_wedderburn_closed_form_equals_oracle(p, n):
    closed = sorted(wedderburn_eldiv_closed_form(p, n, j) for j in range(p**n))
    assert wedderburn_eldiv_oracle(p, n) == closed


# ---------------------------------------------------------------- 3

C3 = crit(3, "Vandermonde factorization identities")


@C3
@pytest.mark.parametrize("m", range(1, 8))
def test_c3_identities_on_random_rational_tuples(m):
    r = random.Random(1000 + m)
    for _ in range(50):
        rep = verify_identities(random_points(r, m))
        assert rep.all_pass(), rep.as_dict()


@C3
@pytest.mark.parametrize("p,n", PRIME_POWERS)
def test_c3_identities_on_cyclotomic_tuples(p, n):
    q = p**n
    full = PointTuple([1 - CycElement.zeta(q, j) for j in range(q)])
    for pts in (dedekind_points(p, n), full):
        rep = verify_identities(pts)
        assert rep.all_pass(), rep.as_dict()


# ---------------------------------------------------------------- 4

C4 = crit(4, "q-Pascal identities, diagonalization, det(V)^2")


@C4
@pytest.mark.parametrize("m", range(1, 9))
def test_c4_q_pascal_inverse_polynomial_identity(m):
    ids = q_polynomial_identities(m)
    assert ids["G*Ginv = I"] and ids["Ginv*G = I"]


@C4
@pytest.mark.parametrize("m", range(1, 17))
def test_c4_diagonalization(m):
    dg = wedderburn_diagonalize(m)
    diag = list(dg.diagonal)
    prodm = dg.left @ vandermonde_zeta(m) @ dg.right
    assert prodm == ExactMatrix.diagonal(diag, m)
    assert diag[-1] == CycElement.zeta(m)
    assert diag[0] == m
    assert all(d.is_integral() for d in diag)


def _det_square_sign(m: int) -> int:
    # disc(X^m - 1) = (-1)^{C(m,2)} prod_j m zeta^{-j}, and prod_j zeta^{-j} = (-1)^{m-1}
    return (-1) ** comb(m, 2) * (-1) ** (m - 1)


@C4
@pytest.mark.parametrize("m", range(1, 13))
def test_c4_vandermonde_determinant_square(m):
    got, _ = vandermonde_det_square(m)
    assert got == _det_square_sign(m) * m**m


# ---------------------------------------------------------------- 5

C5 = crit(5, "m=5 three-method basis comparison")

# the q-Pascal basis as printed in the worked example for m = 5
PRINTED_QPASCAL_5 = [
    ["5", "0", "0", "0", "0"],
    ["4 + 3z + 2z^2 + z^3", "-4 - 3z - 2z^2 - z^3", "0", "0", "0"],
    ["2 + z + 2z^2", "-1 - z + 2z^3", "2z + z^2 + 2z^3", "0", "0"],
    ["2 + z + z^2 + z^3", "-2 - z^2 - 2z^3", "3 + 3z + 2z^2 + 2z^3", "z^2 - z^3", "0"],
    ["1", "-1 + z + z^3", "-2 - z - 2z^2 + z^3", "-3z^2 - z^3", "z"],
]


def _printed_qpascal():
    return [[cyc(5, e) for e in row] for row in PRINTED_QPASCAL_5]


@C5
def test_c5_three_bases_span_same_lattice():
    z = lambda k: CycElement.zeta(5, k)  # noqa: E731
    vdm_printed = [
        [prod((z(j) - z(k) for k in range(i)), start=CycElement.one(5)) if j >= i else CycElement.zero(5)
         for j in range(5)]
        for i in range(5)
    ]
    t = 1 - z(1)
    pascal_printed = [[(-1) ** i * comb(j, i) * t**i for j in range(5)] for i in range(5)]
    qp = wedderburn_image_basis(5)
    vdm = wedderburn_vandermonde_basis(5)
    pas = w1_basis(5)
    assert vdm == vdm_printed
    assert pas == pascal_printed
    assert same_lattice(qp, vdm)
    assert same_lattice(qp, pas)
    assert same_lattice(vdm, pas)


@C5
def test_c5_q_pascal_basis_matches_printed_matrix():
    # Known to fail: printed rows 2 to 4 are not in the image lattice (see
    # test_wedderburn.py::test_printed_m5_rows_outside_image), so no correct
    # basis can reproduce them entry for entry.
    assert wedderburn_image_basis(5) == _printed_qpascal()


# ---------------------------------------------------------------- 6

C6 = crit(6, "W1 = image at p, W2 = image at p^2")


def _agree_on(r, m, rows, member_a, member_b, trials=200):
    hits = {True: 0, False: 0}
    for _ in range(trials):
        y = combo(r, rows, m)
        a = member_a(y)
        assert a == member_b(y), y
        hits[a] += 1
    return hits


@C6
@pytest.mark.parametrize("p", [3, 5, 7])
def test_c6_w1_equals_image_at_prime(p):
    r = random.Random(600 + p)
    img = lambda y: wedderburn_membership(p, y)[0]  # noqa: E731
    w1 = lambda y: w1_membership(p, y)  # noqa: E731
    h1 = _agree_on(r, p, wedderburn_image_basis(p), img, w1)
    h2 = _agree_on(r, p, w1_basis(p), w1, img)
    assert h1[True] and h1[False] and h2[True] and h2[False]


@C6
def test_c6_w2_equals_image_at_9():
    r = random.Random(69)
    img = lambda y: wedderburn_membership(9, y, local_prime=3)[0]  # noqa: E731
    w2 = lambda y: w2_tuple_membership(3, 2, y)  # noqa: E731
    h1 = _agree_on(r, 9, wedderburn_image_basis(9), img, w2)
    h2 = _agree_on(r, 9, w2_basis(3, 2, "tuple"), w2, img)
    assert h1[True] and h1[False] and h2[True] and h2[False]


@C6
def test_c6_w2_determinant_valuation_54():
    oracle, closed = w2_eldiv_in_w0(3, 2)
    assert oracle == closed
    assert sum(oracle) == 54 == 3**3 * (3 - 1)
    assert sum(wedderburn_eldiv_oracle(3, 2)) == 54


# ---------------------------------------------------------------- 7

C7 = crit(7, "radical series of W1")


@C7
def test_c7_sequence_l81():
    seq = [w1_radical_layer_dim(3, 4, i) for i in range(14)]
    assert seq == [1, 5, 15, 31, 50, 66, 76, 80, 81, 81, 81, 81, 81, 81]


@C7
@pytest.mark.parametrize("p,n", [(3, 2), (3, 3), (3, 4), (2, 3)])
def test_c7_submultiplicativity(p, n):
    l1 = w1_radical_layer_dim(p, n, 1)
    for i in range(2 * n * (p - 1) + 1):
        assert l1 * w1_radical_layer_dim(p, n, i) >= w1_radical_layer_dim(p, n, i + 1)


# ---------------------------------------------------------------- 8

C8 = crit(8, "Hochschild descriptors")


def _expected(p, n, twist, j, variant):
    """The case table, with the twisted quotient exponent from v_t(zeta^i - zeta) = (i-1)[p]."""
    q = p**n
    if twist % q == 1 % q:
        phi = sum(p_part(k - 1, p) for k in units(q) if k != 1)
        if j == 0:
            return HochschildDescriptor.free()
        nonzero_parity = 1 if variant == "homology" else 0
        return HochschildDescriptor.torsion(phi) if j % 2 == nonzero_parity else HochschildDescriptor.zero()
    k = p_part(twist - 1, p)
    nonzero_parity = 0 if variant == "homology" else 1
    return HochschildDescriptor.torsion(k) if j % 2 == nonzero_parity else HochschildDescriptor.zero()


@C8
@pytest.mark.parametrize("p,n", [(3, 1), (3, 2)])
@pytest.mark.parametrize("variant", ["homology", "cohomology"])
def test_c8_case_table(p, n, variant):
    for twist in units(p**n):
        for j in range(6):
            assert hochschild(p, n, twist, j, variant) == _expected(p, n, twist, j, variant), (twist, j)


@C8
def test_c8_phi_at_9():
    assert hochschild_phi(3, 2) == 9
    assert different_exponent(3, 2) == 9
    twisted = [hochschild(3, 2, i, 0, "homology").k for i in units(9) if i != 1]
    assert sum(twisted) == 9


# ---------------------------------------------------------------- 9

C9 = crit(9, "absolute embedding: ties, printed systems, divisors")


@C9
@pytest.mark.parametrize("p,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_c9_ties_equal_inversion_oracle(p, n):
    r = random.Random(900 + 10 * p + n)
    seen = {True: 0, False: 0}
    for _ in range(500):
        t = rand_absolute(r, p, n)
        a = km_ties_check(t).ok
        assert a == absolute_image_membership_oracle(t), t.to_json()
        seen[a] += 1
    assert seen[True] > 100 and seen[False] > 100


PRINTED_ZC3 = ["x_{0,0} ≡_3 x_{1,0} + x_{1,1}"]
PRINTED_ZC9 = [
    "x_{1,0} ≡_3 x_{2,0} + x_{2,3} - x_{2,2} - x_{2,5}",
    "x_{1,1} ≡_3 x_{2,1} + x_{2,4} - x_{2,2} - x_{2,5}",
    "x_{0,0} ≡_9 3(x_{2,2} + x_{2,5}) + (x_{1,0} + x_{1,1})",
]
PRINTED_ZC27 = [
    "x_{2,0} ≡_3 x_{3,0} + x_{3,9} - x_{3,6} - x_{3,15}",
    "x_{2,1} ≡_3 x_{3,1} + x_{3,10} - x_{3,7} - x_{3,16}",
    "x_{2,2} ≡_3 x_{3,2} + x_{3,11} - x_{3,8} - x_{3,17}",
    "x_{2,3} ≡_3 x_{3,3} + x_{3,12} - x_{3,6} - x_{3,15}",
    "x_{2,4} ≡_3 x_{3,4} + x_{3,13} - x_{3,7} - x_{3,16}",
    "x_{2,5} ≡_3 x_{3,5} + x_{3,14} - x_{3,8} - x_{3,17}",
    "x_{1,0} ≡_9 3(x_{3,6} + x_{3,15} - x_{3,8} - x_{3,17}) + (x_{2,0} + x_{2,3} - x_{2,2} - x_{2,5})",
    "x_{1,1} ≡_9 3(x_{3,7} + x_{3,16} - x_{3,8} - x_{3,17}) + (x_{2,1} + x_{2,4} - x_{2,2} - x_{2,5})",
    "x_{0,0} ≡_27 9(x_{3,8} + x_{3,17}) + 3(x_{2,2} + x_{2,5}) + (x_{1,0} + x_{1,1})",
]


@C9
@pytest.mark.parametrize("n,printed", [(1, PRINTED_ZC3), (2, PRINTED_ZC9), (3, PRINTED_ZC27)])
def test_c9_printed_systems_verbatim(n, printed):
    assert km_ties_render(3, n) == printed


@C9
@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1)])
def test_c9_divisor_multiset_and_index(p, n):
    expected = sorted(p**i for i in range(n + 1) for _ in range(euler_phi(p ** (n - i))))
    assert absolute_eldiv_z(p, n) == expected
    assert absolute_eldiv_z_oracle(p, n) == expected
    assert prod(expected) == absolute_index(p, n) == p ** ((p**n - 1) // (p - 1))


# ---------------------------------------------------------------- 10

C10 = crit(10, "composite m: m=12 decomposition and index/discriminant consistency")


@C10
def test_c10_s_values_at_12():
    assert (s_value(6, 2), s_value(6, 3), s_value(12, 2), s_value(12, 3)) == (1, 2, 3, 1)


@C10
def test_c10_m12_seven_delegated_checks():
    checks = composite_checks(12)
    assert checks == [
        (2, 1, ()),
        (2, 3, ((3, 0),)),
        (2, 3, ((3, 1),)),
        (3, 1, ()),
        (3, 2, ((2, 0),)),
        (3, 4, ((2, 0),)),
        (3, 4, ((2, 1),)),
    ]
    x = [0] * 12
    x[5] = 1
    ok, results = composite_membership(composite_apply(12, x))
    assert ok
    assert [r.tuple_.p ** r.tuple_.n for r in results] == [4, 4, 4, 3, 3, 3, 3]


@C10
@pytest.mark.parametrize("m", range(1, 13))
def test_c10_index_squared_times_discriminants(m):
    lhs = absolute_index_m(m) ** 2 * prod(discriminant_magnitude(d) for d in divisors(m))
    assert lhs == Fraction(m) ** m


# ---------------------------------------------------------------- 11

C11 = crit(11, "T-operator composition and telescoping laws")


def _sequences(p):
    r = random.Random(1100 + p)
    return [random_sequence(r, -(p**4), 2 * p**4, size=8) for _ in range(100)]


@C11
@pytest.mark.parametrize("p", [2, 3])
def test_c11_composition_i(p):
    r = range(5)
    cells = [(a, b, c, d, s) for a in r for b in r for c in r for d in r for s in r if b - a <= d - c <= b + s <= d]
    for i, x in enumerate(_sequences(p)):
        for a, b, c, d, s in cells[i % 7 :: 7]:
            for t in (0, 2):
                assert toperator_composition_i(p, a, b, c, d, s, t, x), (a, b, c, d, s, t)


@C11
@pytest.mark.parametrize("p", [2, 3])
def test_c11_composition_ii(p):
    for x in _sequences(p):
        for a in range(3):
            for b in range(4):
                for s in range(3):
                    for d in range(b + s, 5):
                        assert toperator_composition_ii(p, a, b, d, s, x)


@C11
@pytest.mark.parametrize("p", [2, 3])
def test_c11_telescoping(p):
    for x in _sequences(p):
        for m in range(1, 5):
            for l in range(1, m + 1):
                for a in range(3):
                    assert toperator_telescoping(p, m, l, a, x), (m, l, a)
