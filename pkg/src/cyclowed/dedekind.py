"""The cyclotomic Dedekind embedding of Z_(p)[zeta] (x) Z_(p)[zeta], zeta = zeta_{p^n}.

With ``t = 1 - zeta`` and the basis ``1 (x) t^i`` on the left, the embedding
into the product over units ``j`` of ``(Z/p^n)^*`` is the Vandermonde matrix
at ``tau = (1 - zeta^j)_j``.  Everything here is local at ``p``: integrality
means ``p``-integrality of coefficients, i.e. nonnegative ``t``-valuation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .arith import digits, euler_phi, is_prime, units
from .cyclotomic import CycElement, t_valuation
from .linalg import ExactMatrix, inverse, smith_valuations_dvr
from .ties import Congruence, TAdicModulus, TieSystem
from .vandermonde import PointTuple, build_L, build_V, triangular_rows

__all__ = [
    "HochschildDescriptor",
    "HochschildKind",
    "MembershipResult",
    "dedekind_eldiv_closed_form",
    "dedekind_eldiv_oracle",
    "dedekind_image_basis",
    "dedekind_matrix",
    "dedekind_membership",
    "dedekind_points",
    "dedekind_ties",
    "dedekind_unit_indices",
    "different_exponent",
    "hochschild",
    "hochschild_phi",
    "lambda_radical_layers",
]


def _check(p: int, n: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"level must be positive, got {n}")


def dedekind_unit_indices(p: int, n: int) -> list[int]:
    """``[0, p^n - 1]`` minus the multiples of p, increasing."""
    _check(p, n)
    return [j for j in range(p**n) if j % p]


def dedekind_points(p: int, n: int) -> PointTuple:
    q = p**n
    return PointTuple([1 - CycElement.zeta(q, j) for j in dedekind_unit_indices(p, n)])


@lru_cache(maxsize=32)
def dedekind_matrix(p: int, n: int) -> ExactMatrix:
    """``V_tau``: row i holds ``(1 - zeta^j)^i`` over the unit indices j."""
    return build_V(dedekind_points(p, n))


def dedekind_eldiv_closed_form(p: int, n: int, j: int) -> int:
    """Valuation of the N(j)-th elementary divisor, ``N(j) = #([0, j] minus (p))``."""
    _check(p, n)
    if not 0 <= j < p**n:
        raise ValueError(f"index {j} outside [0, {p**n - 1}]")
    if j % p == 0:
        raise ValueError(f"index {j} is divisible by {p}")
    a = digits(j, p, n + 1) + [0]
    return -1 + sum((a[s] * (s + 1) - a[s + 1] * (s + 2)) * p**s for s in range(n + 1))


def dedekind_eldiv_oracle(p: int, n: int) -> list[int]:
    return smith_valuations_dvr(dedekind_matrix(p, n), p, n)


def different_exponent(p: int, n: int) -> int:
    """t-valuation of the different of Z_(p)[zeta_{p^n}], ``p^{n-1}(n(p-1) - 1)``."""
    _check(p, n)
    return p ** (n - 1) * (n * (p - 1) - 1)


def _names(p: int, n: int) -> list[str]:
    return [f"eta_{j}" for j in dedekind_unit_indices(p, n)]


@lru_cache(maxsize=16)
def dedekind_ties(p: int, n: int) -> TieSystem:
    """``eta_i - sum_{j<i} eta_j L_{j,i}(tau)`` lies in ``t^{phi_i}``, one congruence per unit."""
    pts = dedekind_points(p, n)
    L = build_L(pts)
    names = _names(p, n)
    units_ = dedekind_unit_indices(p, n)
    congs = []
    for i, u in enumerate(units_):
        form = tuple((names[j], L[j, i]) for j in range(i) if L[j, i])
        congs.append(Congruence(names[i], TAdicModulus(p, n, dedekind_eldiv_closed_form(p, n, u)), form))
    return TieSystem(tuple(names), tuple(congs))


def dedekind_image_basis(p: int, n: int, theta: str = "t") -> list[list[CycElement]]:
    """Triangular basis: row i is ``(prod_{k<i} (theta_j - theta_k))_j``.

    ``theta="t"`` uses the points ``1 - zeta^j``; ``theta="zeta"`` uses
    ``zeta^j``, which multiplies row i by ``(-1)^i``.
    """
    if theta == "t":
        return triangular_rows(dedekind_points(p, n))
    if theta == "zeta":
        q = p**n
        return triangular_rows(PointTuple([CycElement.zeta(q, j) for j in dedekind_unit_indices(p, n)]))
    raise ValueError(f"theta must be 't' or 'zeta', got {theta!r}")


@lru_cache(maxsize=16)
def _dedekind_inverse(p: int, n: int) -> ExactMatrix:
    return inverse(dedekind_matrix(p, n))


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.member


def dedekind_membership(p: int, n: int, eta) -> MembershipResult:
    """Solve ``eta = x V_tau``; member iff x is p-integral.

    The witness is x, the coordinates over the basis ``1 (x) t^i``.
    """
    q = p**n
    k = euler_phi(q)
    if len(eta) != k:
        raise ValueError(f"expected {k} entries, got {len(eta)}")
    eta = [e if isinstance(e, CycElement) else CycElement.rational(q, e) for e in eta]
    Vinv = _dedekind_inverse(p, n)
    x = []
    for c in range(k):
        acc = CycElement.zero(q)
        for r in range(k):
            if eta[r]:
                acc = acc + eta[r] * Vinv[r, c]
        x.append(acc)
    ok = all(v.is_p_integral(p) for v in x)
    return MembershipResult(ok, tuple(x) if ok else None)


def dedekind_tensor_image(p: int, n: int, k: int, l: int) -> list[CycElement]:
    """Image of ``zeta^k (x) zeta^l``: ``(zeta^{k + j l})_j`` over the units j."""
    q = p**n
    return [CycElement.zeta(q, k + j * l) for j in dedekind_unit_indices(p, n)]


class HochschildKind(enum.Enum):
    FREE_RANK_ONE = "free"
    ZERO = "zero"
    T_MOD_T_POWER = "torsion"


@dataclass(frozen=True)
class HochschildDescriptor:
    """``T``, ``0`` or ``T / t^k T``; ``T / t^0 T`` is normalized to ``0``."""

    kind: HochschildKind
    k: int = 0

    def __post_init__(self):
        if self.kind is HochschildKind.T_MOD_T_POWER:
            if self.k < 0:
                raise ValueError("negative exponent")
            if self.k == 0:
                object.__setattr__(self, "kind", HochschildKind.ZERO)
        elif self.k:
            object.__setattr__(self, "k", 0)

    @classmethod
    def free(cls):
        return cls(HochschildKind.FREE_RANK_ONE)

    @classmethod
    def zero(cls):
        return cls(HochschildKind.ZERO)

    @classmethod
    def torsion(cls, k: int):
        return cls(HochschildKind.T_MOD_T_POWER, k)

    def __str__(self):
        if self.kind is HochschildKind.FREE_RANK_ONE:
            return "T"
        if self.kind is HochschildKind.ZERO:
            return "0"
        return f"T/t^{self.k}T"

    def to_json(self) -> dict:
        out = {"kind": self.kind.value}
        if self.kind is HochschildKind.T_MOD_T_POWER:
            out["k"] = self.k
        return out


def _twist_exponent(p: int, n: int, i: int) -> int:
    q = p**n
    t = 1 - CycElement.zeta(q)
    return t_valuation(t.galois(i) - t, p, n)


def hochschild_phi(p: int, n: int) -> int:
    """``sum_{k != 1} v_t(theta - theta^{sigma_k})`` with ``theta = t``."""
    _check(p, n)
    return sum(_twist_exponent(p, n, k) for k in units(p**n) if k != 1)


def hochschild(p: int, n: int, twist: int, degree: int, variant: str = "homology") -> HochschildDescriptor:
    """Hochschild (co)homology of T over Z_(p) with coefficients twisted by ``sigma_twist``."""
    _check(p, n)
    q = p**n
    if gcd(twist, q) != 1:
        raise ValueError(f"twist {twist} is not a unit modulo {q}")
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if variant not in ("homology", "cohomology"):
        raise ValueError(f"unknown variant {variant!r}")
    twist %= q
    odd = degree % 2 == 1
    if twist == 1 % q:
        if degree == 0:
            return HochschildDescriptor.free()
        phi = hochschild_phi(p, n)
        if (variant == "homology") == odd:
            return HochschildDescriptor.torsion(phi)
        return HochschildDescriptor.zero()
    k = _twist_exponent(p, n, twist)
    if (variant == "homology") != odd:
        return HochschildDescriptor.torsion(k)
    return HochschildDescriptor.zero()


def lambda_radical_layers(p: int, n: int, i: int) -> int:
    """``dim r^i Lambda / r^{i+1} Lambda`` over ``T/tT``."""
    _check(p, n)
    if i < 0:
        raise ValueError("layer index must be nonnegative")
    return min(i + 1, euler_phi(p**n))


def lambda_radical_layers_by_basis(p: int, n: int, i: int) -> int:
    """Same count from the basis ``t^{max(i-k,0)} (x) t^k`` of the i-th radical power."""
    m = euler_phi(p**n)
    ex = lambda r, k: max(r - k, 0)  # noqa: E731
    return sum(1 for k in range(m) if ex(i + 1, k) - ex(i, k) == 1)
