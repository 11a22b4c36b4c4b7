"""The cyclic Wedderburn embedding ``Z[zeta_m] C_m -> prod_j Z[zeta_m]``, ``c_m -> (zeta_m^j)_j``.

Three descriptions of its image are provided and cross-checked:

* the q-Pascal diagonalization ``G^T V G = m D^{-1}`` at ``q = zeta_m^{-1}``,
  with its tie system and triangular basis;
* the Vandermonde method at ``tau = (1 - zeta^j)_j``, giving elementary
  divisors over ``Z_(p)[zeta_{p^n}]``;
* Pascal ties: ``W1`` (first order) and, for prime powers, ``W2`` (second order).

Tuples ``y = (y_j)_j`` are plain lists of :class:`CycElement`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .arith import binomial, digit_sum, digits, is_prime, p_part
from .cyclotomic import (
    CycElement,
    GaussPoly,
    gauss_binomial,
    gauss_eval,
    q_factorial,
    t_valuation,
)
from .linalg import ExactMatrix, determinant, inverse, smith_valuations_dvr
from .ties import Congruence, IdealModulus, TieSystem
from .vandermonde import PointTuple, build_V, triangular_rows

__all__ = [
    "GroupRingElement",
    "XiBasisVector",
    "coefficient_criterion",
    "d_matrix",
    "fourier_inversion_holds",
    "lattice_change_of_basis",
    "omega_in_xi",
    "q_pascal",
    "q_pascal_inverse",
    "q_polynomial_identities",
    "same_lattice",
    "vandermonde_det_square",
    "vandermonde_zeta",
    "w1_basis",
    "w1_coordinates",
    "w1_eldiv_oracle",
    "w1_membership",
    "w1_radical_closure_check",
    "w1_radical_layer_dim",
    "w1_radical_layer_dim_by_count",
    "w1_radical_power_basis",
    "w1_radical_power_exponents",
    "w1_ties",
    "w2_basis",
    "w2_condition_matrix",
    "w2_eldiv_in_w0",
    "w2_eldiv_in_w1",
    "w2_membership",
    "w2_subring_experiment",
    "wedderburn_apply",
    "wedderburn_diagonalize",
    "wedderburn_eldiv_closed_form",
    "wedderburn_eldiv_oracle",
    "wedderburn_eldiv_sum_form",
    "wedderburn_image_basis",
    "wedderburn_matrix",
    "wedderburn_membership",
    "wedderburn_ties",
    "wedderburn_vandermonde_basis",
    "xi_product",
]


def _z(m: int, k: int = 1) -> CycElement:
    return CycElement.zeta(m, k)


def _as_cyc(m: int, x) -> CycElement:
    return x if isinstance(x, CycElement) else CycElement.rational(m, x)


# --------------------------------------------------------------------------
# group ring


@dataclass(frozen=True)
class GroupRingElement:
    """``sum_j coeffs[j] c_m^j`` with rational or Q(zeta_m) coefficients."""

    m: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(x if isinstance(x, CycElement) else Fraction(x) for x in self.coeffs)
        if len(c) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(c)}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def generator_power(cls, m: int, k: int) -> "GroupRingElement":
        c = [0] * m
        c[k % m] = 1
        return cls(m, tuple(c))

    def is_integral(self) -> bool:
        return all(x.is_integral() if isinstance(x, CycElement) else x.denominator == 1 for x in self.coeffs)

    def is_p_integral(self, p: int) -> bool:
        return all(
            x.is_p_integral(p) if isinstance(x, CycElement) else x.denominator % p != 0 for x in self.coeffs
        )

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        if other.m != self.m:
            raise ValueError("group orders differ")
        m = self.m
        out = [Fraction(0)] * m
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % m] = out[(i + j) % m] + a * b
        return GroupRingElement(m, tuple(out))

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.m, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))


def wedderburn_apply(x: GroupRingElement) -> list[CycElement]:
    """``(sum_i x_i zeta_m^{ij})_j``."""
    m = x.m
    out = []
    for j in range(m):
        acc = CycElement.zero(m)
        for i, c in enumerate(x.coeffs):
            if c:
                acc = acc + _as_cyc(m, c) * _z(m, i * j)
        out.append(acc)
    return out


# --------------------------------------------------------------------------
# q-Pascal matrices


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


def _qpow(q, k: int):
    if k >= 0:
        return q**k
    return (1 / q) ** (-k)


def _domain_of(q):
    return q.m if isinstance(q, CycElement) else "Q"


def q_pascal(m: int, q) -> ExactMatrix:
    """``G_q = ([i choose j]_q)`` of size m, evaluated at a number q."""
    return ExactMatrix.build(m, m, lambda i, j: gauss_eval(gauss_binomial(i, j), q), _domain_of(q))


def q_pascal_inverse(m: int, q) -> ExactMatrix:
    """``((-1)^{j+k} q^{C(j-k,2)} [j choose k]_q)``."""

    def f(j, k):
        if k > j:
            return 0
        s = -1 if (j + k) % 2 else 1
        return s * _qpow(q, _binom2(j - k)) * gauss_eval(gauss_binomial(j, k), q)

    return ExactMatrix.build(m, m, f, _domain_of(q))


def vandermonde_zeta(m: int, k: int = 1) -> ExactMatrix:
    """``V_{zeta^k} = (zeta_m^{k i j})``."""
    return ExactMatrix.build(m, m, lambda i, j: _z(m, k * i * j), m)


def d_matrix(m: int, q) -> ExactMatrix:
    """``D_q = diag([i]! (q-1)^i q^{C(i,2)})``."""
    entries = [gauss_eval(q_factorial(i), q) * (q - 1) ** i * _qpow(q, _binom2(i)) for i in range(m)]
    return ExactMatrix.diagonal(entries, _domain_of(q))


# polynomial versions, as lists of GaussPoly


def _pmat_mul(A, B):
    n, k, l = len(A), len(B), len(B[0]) if B else 0
    out = []
    for i in range(n):
        row = []
        for j in range(l):
            acc = GaussPoly()
            for s in range(k):
                if not A[i][s].is_zero() and not B[s][j].is_zero():
                    acc = acc + A[i][s] * B[s][j]
            row.append(acc)
        out.append(row)
    return out


def _ptranspose(A):
    return [list(r) for r in zip(*A)]


def _poly_G(m):
    return [[gauss_binomial(i, j) for j in range(m)] for i in range(m)]


def _poly_Ginv(m):
    def f(j, k):
        if k > j:
            return GaussPoly()
        return GaussPoly.monomial(_binom2(j - k), -1 if (j + k) % 2 else 1) * gauss_binomial(j, k)

    return [[f(j, k) for k in range(m)] for j in range(m)]


def _poly_V(m):
    return [[GaussPoly.monomial(i * j) for j in range(m)] for i in range(m)]


def _poly_D(m):
    qm1 = GaussPoly((-1, 1))
    return [
        [q_factorial(i) * qm1**i * GaussPoly.monomial(_binom2(i)) if i == j else GaussPoly() for j in range(m)]
        for i in range(m)
    ]


def q_polynomial_identities(m: int) -> dict[str, bool]:
    """Check the q-Pascal identities in Z[q] for size m.

    ``G G^{-1} = I``, ``V (G^{-1})^T = G D`` and ``V = G D G^T``.
    """
    G, Gi, V, D = _poly_G(m), _poly_Ginv(m), _poly_V(m), _poly_D(m)
    I = [[GaussPoly((1,)) if i == j else GaussPoly() for j in range(m)] for i in range(m)]
    GD = _pmat_mul(G, D)
    return {
        "G*Ginv = I": _pmat_mul(G, Gi) == I,
        "Ginv*G = I": _pmat_mul(Gi, G) == I,
        "V*Ginv^T = G*D": _pmat_mul(V, _ptranspose(Gi)) == GD,
        "V = G*D*G^T": V == _pmat_mul(GD, _ptranspose(G)),
    }


@dataclass(frozen=True)
class Diagonalization:
    left: ExactMatrix
    right: ExactMatrix
    diagonal: tuple


def _diag_entry(m: int, i: int) -> CycElement:
    """``m zeta^{i^2} / prod_{j in [1,i]} (1 - zeta^j)``."""
    den = CycElement.one(m)
    for j in range(1, i + 1):
        den = den * (1 - _z(m, j))
    return m * _z(m, i * i) / den


def wedderburn_diagonalize(m: int) -> Diagonalization:
    """``G^T V_zeta G = m D^{-1}`` with ``G = G_{zeta^{-1}}``, ``D = D_{zeta^{-1}}``.

    Both sides are computed and compared; a mismatch raises AssertionError.
    """
    if m < 1:
        raise ValueError("m must be positive")
    qi = _z(m, -1)
    G = q_pascal(m, qi)
    lhs = G.T @ vandermonde_zeta(m) @ G
    D = d_matrix(m, qi)
    rhs = ExactMatrix.diagonal([m / d for d in D.diagonal_entries()], m)
    if lhs != rhs:
        raise AssertionError(f"diagonalization fails at m={m}")
    diag = tuple(lhs.diagonal_entries())
    for i, d in enumerate(diag):
        if d != _diag_entry(m, i):
            raise AssertionError(f"diagonal entry {i} disagrees with the closed form at m={m}")
        if not d.is_integral():
            raise AssertionError(f"diagonal entry {i} is not integral at m={m}")
    return Diagonalization(G.T, G, diag)


def fourier_inversion_holds(m: int) -> bool:
    return vandermonde_zeta(m) @ vandermonde_zeta(m, -1) == ExactMatrix.identity(m, m).scale(m)


def vandermonde_det_square(m: int) -> tuple[Fraction, int]:
    """``(det(V_zeta)^2, expected)``, expected being ``(-1)^{(m-1)/2} m^m`` or ``(-1)^{(m-2)/2} m^m``."""
    d = determinant(vandermonde_zeta(m))
    sq = (d * d).to_rational()
    e = (m - 1) // 2 if m % 2 else (m - 2) // 2
    return sq, (-1) ** e * m**m


# --------------------------------------------------------------------------
# image: ties, basis, membership


def _tie_generator(m: int, i: int) -> CycElement:
    den = CycElement.one(m)
    for j in range(1, i + 1):
        den = den * (1 - _z(m, j))
    return m / den


def _ynames(m: int) -> list[str]:
    return [f"y_{j}" for j in range(m)]


@lru_cache(maxsize=32)
def wedderburn_ties(m: int, local_prime: int | None = None) -> TieSystem:
    """``sum_{j>=i} y_j [j choose i]_{zeta^{-1}}`` lies in ``m / prod_{j<=i}(1 - zeta^j)``.

    Ordered from ``y_{m-1}`` down to ``y_0`` so each tie is triangular.
    """
    if m < 1:
        raise ValueError("m must be positive")
    qi = _z(m, -1)
    names = _ynames(m)
    congs = []
    for i in range(m - 1, -1, -1):
        form = tuple((names[j], -gauss_eval(gauss_binomial(j, i), qi)) for j in range(i + 1, m))
        congs.append(Congruence(names[i], IdealModulus(_tie_generator(m, i), local_prime), form))
    return TieSystem(tuple(reversed(names)), tuple(congs))


def wedderburn_image_basis(m: int) -> list[list[CycElement]]:
    """Rows ``((-1)^k zeta^{C(k,2)} (m / prod_{l<=j}(1 - zeta^l)) [j choose k]_zeta)_k``."""
    z = _z(m)
    rows = []
    for j in range(m):
        g = _tie_generator(m, j)
        row = []
        for k in range(m):
            e = gauss_eval(gauss_binomial(j, k), z)
            row.append((-1) ** k * _z(m, _binom2(k)) * g * e if e else CycElement.zero(m))
        rows.append(row)
    return rows


def wedderburn_vandermonde_basis(m: int) -> list[list[CycElement]]:
    """Rows ``(prod_{k<i} (zeta^j - zeta^k))_j``."""
    return triangular_rows(PointTuple([_z(m, j) for j in range(m)]))


@lru_cache(maxsize=32)
def _character_inverse(m: int) -> ExactMatrix:
    return inverse(vandermonde_zeta(m))


def wedderburn_membership(m: int, y: Sequence, local_prime: int | None = None):
    """Rational-preimage oracle: solve ``x V = y`` and test integrality of x.

    Returns ``(member, x)``.
    """
    if len(y) != m:
        raise ValueError(f"expected {m} entries, got {len(y)}")
    Vi = _character_inverse(m)
    y = [_as_cyc(m, v) for v in y]
    x = []
    for c in range(m):
        acc = CycElement.zero(m)
        for r in range(m):
            if y[r] and Vi[r, c]:
                acc = acc + y[r] * Vi[r, c]
        x.append(acc)
    if local_prime is None:
        ok = all(v.is_integral() for v in x)
    else:
        ok = all(v.is_p_integral(local_prime) for v in x)
    return ok, x


def lattice_change_of_basis(B1: Sequence[Sequence], B2: Sequence[Sequence]) -> ExactMatrix:
    """The matrix C with ``B1 = C B2``."""
    A1, A2 = ExactMatrix.from_rows(B1), ExactMatrix.from_rows(B2)
    return A1 @ inverse(A2)


def same_lattice(B1: Sequence[Sequence], B2: Sequence[Sequence]) -> bool:
    """Rows of B1 and B2 span the same ``Z[zeta]``-lattice.

    Both change-of-basis matrices must be integral; their determinants are
    then integral units, which is checked via the norm.
    """
    for X, Y in ((B1, B2), (B2, B1)):
        C = lattice_change_of_basis(X, Y)
        if not all(e.is_integral() for r in C.tolist() for e in r):
            return False
        if abs(determinant(C).norm()) != 1:
            return False
    return True


# --------------------------------------------------------------------------
# elementary divisors over Z_(p)[zeta_{p^n}]


def _check_pn(p: int, n: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be positive")


def wedderburn_eldiv_closed_form(p: int, n: int, j: int) -> int:
    """Valuation of the (j+1)st elementary divisor: ``sum_k (a_k - a_{k+1})(k+1) p^k``."""
    _check_pn(p, n)
    if not 0 <= j < p**n:
        raise ValueError(f"index {j} outside [0, {p**n - 1}]")
    a = digits(j, p, n) + [0]
    return sum((a[k] - a[k + 1]) * (k + 1) * p**k for k in range(n))


def wedderburn_eldiv_sum_form(p: int, n: int, j: int) -> int:
    """``sum_{i in [1,j]} i[p]``, i[p] the p-part of i."""
    return sum(p_part(i, p) for i in range(1, j + 1))


@lru_cache(maxsize=16)
def wedderburn_matrix(p: int, n: int) -> ExactMatrix:
    """``V_tau`` at ``tau = (1 - zeta^j)_{j in [0, p^n - 1]}``."""
    _check_pn(p, n)
    q = p**n
    return build_V(PointTuple([1 - _z(q, j) for j in range(q)]))


def wedderburn_eldiv_oracle(p: int, n: int) -> list[int]:
    return smith_valuations_dvr(wedderburn_matrix(p, n), p, n)


# --------------------------------------------------------------------------
# first order Pascal ties


@dataclass(frozen=True)
class XiBasisVector:
    """Coordinates ``(z_i)`` over the basis ``xi_{m,i}`` of W1."""

    m: int
    coords: tuple

    def __post_init__(self):
        c = tuple(_as_cyc(self.m, x) for x in self.coords)
        if len(c) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(c)}")
        object.__setattr__(self, "coords", c)

    def to_tuple(self) -> list[CycElement]:
        """``sum_i z_i xi_{m,i}`` as an element of ``prod_j Z[zeta_m]``."""
        basis = w1_basis(self.m)
        out = [CycElement.zero(self.m) for _ in range(self.m)]
        for z, row in zip(self.coords, basis):
            if z:
                out = [o + z * r if r else o for o, r in zip(out, row)]
        return out


def _t(m: int) -> CycElement:
    return 1 - _z(m)


@lru_cache(maxsize=32)
def _w1_basis(m: int) -> tuple:
    t = _t(m)
    return tuple(
        tuple((-1) ** i * t**i * binomial(j, i) if j >= i else CycElement.zero(m) for j in range(m))
        for i in range(m)
    )


def w1_basis(m: int) -> list[list[CycElement]]:
    """Rows ``xi_{m,i} = ((-1)^i t^i C(j,i))_j``."""
    return [list(r) for r in _w1_basis(m)]


def w1_coordinates(m: int, y: Sequence) -> XiBasisVector:
    """``z_k = t^{-k} sum_j (-1)^j C(k,j) y_j``, so that ``y = sum_k z_k xi_{m,k}``."""
    if len(y) != m:
        raise ValueError(f"expected {m} entries, got {len(y)}")
    y = [_as_cyc(m, v) for v in y]
    tinv = (1 / _t(m)) if m > 1 else CycElement.one(m)
    z = []
    tk = CycElement.one(m)
    for k in range(m):
        acc = CycElement.zero(m)
        for j in range(k + 1):
            if y[j]:
                acc = acc + (-1) ** j * binomial(k, j) * y[j]
        z.append(acc * tk)
        tk = tk * tinv
    return XiBasisVector(m, tuple(z))


def w1_membership(m: int, y: Sequence, local_prime: int | None = None) -> bool:
    z = w1_coordinates(m, y).coords
    if local_prime is None:
        return all(v.is_integral() for v in z)
    return all(v.is_p_integral(local_prime) for v in z)


def w1_ties(m: int, local_prime: int | None = None) -> TieSystem:
    """``sum_{j<=i} (-1)^j C(i,j) y_j = 0`` modulo ``t^i``, solved for ``y_i``."""
    names = _ynames(m)
    t = _t(m)
    congs = []
    for i in range(m):
        s = (-1) ** i
        form = tuple((names[j], -s * (-1) ** j * binomial(i, j)) for j in range(i))
        gen = t**i if i else CycElement.one(m)
        congs.append(Congruence(names[i], IdealModulus(gen, local_prime), form))
    return TieSystem(tuple(names), tuple(congs))


def xi_product(m: int, j: int, i: int) -> list[CycElement]:
    """Coordinates of ``xi_{m,j} xi_{m,i}`` over the xi basis, ``j <= i``."""
    if j > i:
        raise ValueError("xi_product expects j <= i; swap the arguments")
    if not 0 <= j <= i < m:
        raise ValueError("indices out of range")
    t = _t(m)
    out = [CycElement.zero(m) for _ in range(m)]
    for k in range(j + 1):
        if i + k < m:
            c = binomial(j, k) * binomial(i + k, j) * (-1) ** (j - k)
            out[i + k] = c * t ** (j - k) if j - k else CycElement.rational(m, c)
    return out


def omega_in_xi(m: int, i: int) -> XiBasisVector:
    """Coordinates ``(((1 - zeta^i)/t)^k)_k`` of the image of ``c_m^i``."""
    if m == 1:
        return XiBasisVector(1, (1,))
    u = (1 - _z(m, i)) / _t(m)
    return XiBasisVector(m, tuple(u**k for k in range(m)))


def coefficient_criterion(p: int, y: Sequence[CycElement]) -> bool:
    """Membership in W1 for m = p prime, read off integer coefficients modulo p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if len(y) != p:
        raise ValueError(f"expected {p} entries, got {len(y)}")
    Y = []
    for v in y:
        v = _as_cyc(p, v)
        if not v.is_integral():
            raise ValueError("coefficient criterion needs integral entries")
        Y.append([int(c) for c in v.coeffs])
    for u in range(1, p):
        for v in range(u):
            s = sum(
                (-1) ** i * binomial(u, i) * binomial(j, v) * Y[i][j] for i in range(p) for j in range(p - 1)
            )
            if s % p:
                return False
    return True


def w1_eldiv_oracle(p: int, n: int) -> list[int]:
    """Valuations of the elementary divisors of W1 in W0 at m = p^n."""
    return smith_valuations_dvr(ExactMatrix.from_rows(w1_basis(p**n)), p, n)


# --------------------------------------------------------------------------
# second order Pascal ties


def _polymul(a: list, b: list, m: int) -> list:
    out = [CycElement.zero(m) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def w2_gamma(p: int, n: int) -> CycElement:
    """``gamma = sum_{k in [1,p-1]} t^{k-1}/k``."""
    q = p**n
    t = _t(q)
    return sum((t ** (k - 1) / k for k in range(1, p)), CycElement.zero(q))


def w2_f(p: int, n: int) -> list[CycElement]:
    """Coefficients of ``f = gamma X^p - sum_{k in [1,p-1]} (t^{k-1}/k) X^k``, low degree first."""
    q = p**n
    t = _t(q)
    f = [CycElement.zero(q) for _ in range(p + 1)]
    for k in range(1, p):
        f[k] = -(t ** (k - 1)) / k
    f[p] = w2_gamma(p, n)
    return f


@lru_cache(maxsize=8)
def w2_condition_matrix(p: int, n: int) -> tuple[ExactMatrix, tuple[int, ...]]:
    """``(M, moduli)``: ``M[k, i + jp] = coeff_k(X^i f^j)`` and column i+jp carries ``t^{j(p-1)}``."""
    _check_pn(p, n)
    q = p**n
    f = w2_f(p, n)
    cols, moduli = [], []
    fj = [CycElement.one(q)]
    for j in range(p ** (n - 1)):
        for i in range(p):
            col = [CycElement.zero(q)] * i + fj
            col = (col + [CycElement.zero(q)] * q)[:q]
            cols.append(col)
            moduli.append(j * (p - 1))
        fj = _polymul(fj, f, q)
    M = ExactMatrix.from_rows([[cols[c][k] for c in range(q)] for k in range(q)], q)
    return M, tuple(moduli)


def w2_membership(p: int, n: int, z: Sequence) -> bool:
    """Second order Pascal ties on xi-coordinates z, read in ``Z_(p)[zeta_{p^n}]``."""
    q = p**n
    if isinstance(z, XiBasisVector):
        z = z.coords
    z = [_as_cyc(q, v) for v in z]
    if len(z) != q:
        raise ValueError(f"expected {q} coordinates, got {len(z)}")
    if not all(v.is_p_integral(p) for v in z):
        return False
    M, moduli = w2_condition_matrix(p, n)
    for c in range(q):
        acc = CycElement.zero(q)
        for k in range(q):
            if z[k] and M[k, c]:
                acc = acc + z[k] * M[k, c]
        if t_valuation(acc, p, n) < moduli[c]:
            return False
    return True


def w2_tuple_membership(p: int, n: int, y: Sequence) -> bool:
    return w2_membership(p, n, w1_coordinates(p**n, y))


@lru_cache(maxsize=8)
def _w2_basis_xi(p: int, n: int) -> ExactMatrix:
    q = p**n
    M, moduli = w2_condition_matrix(p, n)
    tinv = 1 / _t(q)
    C = M @ ExactMatrix.diagonal([tinv**e for e in moduli], q)
    return inverse(C)


def w2_basis(p: int, n: int, coordinates: str = "xi") -> list[list[CycElement]]:
    """A ``Z_(p)[zeta]``-basis of W2, over the xi basis or as tuples (``coordinates="tuple"``)."""
    B = _w2_basis_xi(p, n)
    if coordinates == "xi":
        return B.tolist()
    if coordinates == "tuple":
        return (B @ ExactMatrix.from_rows(w1_basis(p**n))).tolist()
    raise ValueError("coordinates must be 'xi' or 'tuple'")


def w2_eldiv_in_w1(p: int, n: int) -> tuple[list[int], list[int]]:
    """``(oracle, closed form)`` for W2 in W1; the closed form is ``j(p-1)`` at index i + jp."""
    oracle = smith_valuations_dvr(_w2_basis_xi(p, n), p, n)
    closed = sorted(j * (p - 1) for j in range(p ** (n - 1)) for _ in range(p))
    return oracle, closed


def w2_eldiv_in_w0(p: int, n: int) -> tuple[list[int], list[int]]:
    """``(oracle, closed form)`` for W2 in W0; closed form ``(i + jp) + j(p-1)``."""
    oracle = smith_valuations_dvr(ExactMatrix.from_rows(w2_basis(p, n, "tuple")), p, n)
    closed = sorted((i + j * p) + j * (p - 1) for j in range(p ** (n - 1)) for i in range(p))
    return oracle, closed


@dataclass(frozen=True)
class SubringReport:
    p: int
    n: int
    pairs_tested: int
    products_in_w2: int
    failures: tuple

    @property
    def closed(self) -> bool:
        return self.pairs_tested == self.products_in_w2

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "pairs_tested": self.pairs_tested,
            "products_in_w2": self.products_in_w2,
            "closed_on_sample": self.closed,
            "failures": [list(f) for f in self.failures],
        }


def w2_subring_experiment(p: int, n: int, max_pairs: int | None = None, seed: int = 0) -> SubringReport:
    """Test whether pointwise products of W2 basis vectors stay in W2.

    Evidence only: closure on all basis pairs implies closure of the
    ``Z_(p)[zeta]``-module, but nothing is claimed beyond the tested (p, n).
    With ``max_pairs`` a seeded random sample of pairs is used.
    """
    q = p**n
    B = w2_basis(p, n, "tuple")
    pairs = [(a, b) for a in range(q) for b in range(a, q)]
    if max_pairs is not None and max_pairs < len(pairs):
        pairs = sorted(random.Random(seed).sample(pairs, max_pairs))
    ok, bad = 0, []
    for a, b in pairs:
        prod = [x * y for x, y in zip(B[a], B[b])]
        if w2_tuple_membership(p, n, prod):
            ok += 1
        else:
            bad.append((a, b))
    return SubringReport(p, n, len(pairs), ok, tuple(bad))


# --------------------------------------------------------------------------
# radical series of W1 at p^n


def _generalized_binomials(n: int, r: int) -> list[int]:
    """Coefficients of ``(1 + T + ... + T^r)^n``."""
    poly = [1]
    for _ in range(n):
        new = [0] * (len(poly) + r)
        for i, c in enumerate(poly):
            for k in range(r + 1):
                new[i + k] += c
        poly = new
    return poly


def w1_radical_layer_dim(p: int, n: int, i: int) -> int:
    """``l_{p^n,i} = sum_{j<=i} C(n,j)_{p-1}``."""
    _check_pn(p, n)
    if i < 0:
        raise ValueError("i must be nonnegative")
    c = _generalized_binomials(n, p - 1)
    return sum(c[: i + 1])


def w1_radical_layer_dim_by_count(p: int, n: int, i: int) -> int:
    """``#{k in [0, p^n - 1] : digit sum of k <= i}``."""
    return sum(1 for k in range(p**n) if digit_sum(k, p) <= i)


def w1_radical_power_exponents(p: int, n: int, i: int) -> list[int]:
    return [max(i - digit_sum(j, p), 0) for j in range(p**n)]


def w1_radical_power_basis(p: int, n: int, i: int) -> list[list[CycElement]]:
    """Generators ``t^{max(i - q_p(j), 0)} xi_j`` of the i-th radical power."""
    q = p**n
    t = _t(q)
    B = _w1_basis(q)
    out = []
    for e, row in zip(w1_radical_power_exponents(p, n, i), B):
        s = t**e
        out.append([s * x if x else x for x in row])
    return out


def w1_radical_closure_check(p: int, n: int, i: int) -> bool:
    """Products of generators of the first and the i-th radical power lie in the (i+1)st.

    Uses the xi structure constants; membership in a power is a valuation
    bound on each xi-coordinate.
    """
    q = p**n
    e1 = w1_radical_power_exponents(p, n, 1)
    ei = w1_radical_power_exponents(p, n, i)
    target = w1_radical_power_exponents(p, n, i + 1)
    for a in range(q):
        for b in range(q):
            j, k = min(a, b), max(a, b)
            coords = xi_product(q, j, k)
            shift = e1[a] + ei[b]
            for c, v in enumerate(coords):
                if v and t_valuation(v, p, n) + shift < target[c]:
                    return False
    return True


def radical_layer_count_identity(p: int, n: int, i: int) -> bool:
    """For ``i >= 1``: ``#{j : q_p(j) >= i} = p^n - l_{p^n, i-1}``."""
    return sum(1 for j in range(p**n) if digit_sum(j, p) >= i) == p**n - w1_radical_layer_dim(p, n, i - 1)

