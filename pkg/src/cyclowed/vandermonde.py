"""Triangular factorizations of Vandermonde matrices at concrete points.

For pairwise distinct points ``x_0, ..., x_{m-1}`` in Q or Q(zeta_m) this
module builds

* ``V = (x_j^i)``, the Vandermonde matrix,
* ``L``, the strictly upper triangular Lagrange matrix,
* ``M``, its unipotent variant with ``M (I - L) = I``,
* ``P = (P_{i-j,[0,j]})`` from complete homogeneous sums,
* ``E = ((-1)^{i-j} E_{i-j,[0,i[})`` from elementary symmetric sums,
* ``Y = diag(prod_{k<i} (x_i - x_k))``,

and checks the five identities relating them.  Over Z_(p)[zeta_{p^n}] it also
orders points minimally and reads elementary divisors off the ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycElement, t_valuation
from .linalg import ExactMatrix

__all__ = [
    "PointTuple",
    "build_E",
    "build_L",
    "build_M",
    "build_P",
    "build_V",
    "build_Y",
    "triangular_rows",
    "complete_sums",
    "elementary_sums",
    "eldiv_valuations_by_ordering",
    "is_minimally_ordered",
    "minimal_order",
    "prefix_valuations",
    "verify_identities",
]


class PointTuple:
    """Pairwise distinct points, all rational or all in one cyclotomic field."""

    __slots__ = ("values", "domain")

    def __init__(self, values: Sequence):
        vals = list(values)
        domain = next((v.m for v in vals if isinstance(v, CycElement)), "Q")
        if domain == "Q":
            vals = [Fraction(v) for v in vals]
        else:
            vals = [v if isinstance(v, CycElement) else CycElement.rational(domain, v) for v in vals]
            if any(v.m != domain for v in vals):
                raise ValueError("points lie in different cyclotomic fields")
        if len(set(vals)) != len(vals):
            seen = {}
            for i, v in enumerate(vals):
                if v in seen:
                    raise ValueError(f"points {seen[v]} and {i} coincide")
                seen[v] = i
        self.values = tuple(vals)
        self.domain = domain

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def permuted(self, perm: Sequence[int]) -> "PointTuple":
        return PointTuple([self.values[i] for i in perm])

    def __repr__(self):
        return f"PointTuple({[str(v) for v in self.values]})"


def _zero(pts: PointTuple):
    return Fraction(0) if pts.domain == "Q" else CycElement.zero(pts.domain)


def _one(pts: PointTuple):
    return Fraction(1) if pts.domain == "Q" else CycElement.one(pts.domain)


def elementary_sums(pts: PointTuple) -> dict[tuple[int, int, int], object]:
    """Table of ``E_{d,[a,b[}`` at the points, for ``0 <= a <= b <= m`` and ``0 <= d <= b - a``.

    Filled by ``E_{d,[a,b[} = E_{d,[a+1,b[} + x_a E_{d-1,[a+1,b[}``; entries
    missing from the table vanish.
    """
    x = pts.values
    m = len(x)
    one = _one(pts)
    tab: dict = {}
    for b in range(m + 1):
        tab[(0, b, b)] = one
        for a in range(b - 1, -1, -1):
            for d in range(b - a + 1):
                v = tab.get((d, a + 1, b))
                w = tab.get((d - 1, a + 1, b)) if d else None
                acc = v if v is not None else _zero(pts)
                if w is not None:
                    acc = acc + x[a] * w
                tab[(d, a, b)] = acc
    return tab


def complete_sums(pts: PointTuple, max_degree: int | None = None) -> dict[tuple[int, int, int], object]:
    """Table of ``P_{d,[a,b]}`` at the points, for ``0 <= a <= b < m`` and ``0 <= d <= max_degree``.

    Filled by ``P_{d,[a,b]} = P_{d,[a+1,b]} + x_a P_{d-1,[a,b]}`` with
    ``P_{d,[b+1,b]} = delta_{d,0}``.
    """
    x = pts.values
    m = len(x)
    D = m - 1 if max_degree is None else max_degree
    zero, one = _zero(pts), _one(pts)
    tab: dict = {}
    for b in range(m):
        for a in range(b, -1, -1):
            for d in range(D + 1):
                upper = tab[(d, a + 1, b)] if a < b else (one if d == 0 else zero)
                lower = tab[(d - 1, a, b)] if d else zero
                tab[(d, a, b)] = upper + x[a] * lower if d else upper
    return tab


def _mat(pts: PointTuple, rows) -> ExactMatrix:
    return ExactMatrix.from_rows(rows, pts.domain)


def build_V(pts: PointTuple) -> ExactMatrix:
    m = len(pts)
    one = _one(pts)
    cols = []
    for x in pts:
        col, acc = [], one
        for _ in range(m):
            col.append(acc)
            acc = acc * x
        cols.append(col)
    return _mat(pts, [[cols[j][i] for j in range(m)] for i in range(m)] if m else [])


def _prod(factors, one):
    acc = one
    for f in factors:
        acc = acc * f
    return acc


def build_L(pts: PointTuple) -> ExactMatrix:
    x = pts.values
    m = len(x)
    zero, one = _zero(pts), _one(pts)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i >= j:
                row.append(zero)
                continue
            ks = [k for k in range(j) if k != i]
            num = _prod([x[j] - x[k] for k in ks], one)
            den = _prod([x[i] - x[k] for k in ks], one)
            row.append(num / den)
        rows.append(row)
    return _mat(pts, rows)


def build_M(pts: PointTuple) -> ExactMatrix:
    x = pts.values
    m = len(x)
    one = _one(pts)
    rows = []
    for i in range(m):
        den_inv = 1 / _prod([x[i] - x[k] for k in range(i)], one)
        rows.append([_prod([x[j] - x[k] for k in range(i)], one) * den_inv for j in range(m)])
    return _mat(pts, rows)


def build_P(pts: PointTuple) -> ExactMatrix:
    m = len(pts)
    zero = _zero(pts)
    tab = complete_sums(pts)
    return _mat(pts, [[tab[(i - j, 0, j)] if i >= j else zero for j in range(m)] for i in range(m)])


def build_E(pts: PointTuple) -> ExactMatrix:
    m = len(pts)
    zero = _zero(pts)
    tab = elementary_sums(pts)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if j > i:
                row.append(zero)
            else:
                e = tab[(i - j, 0, i)]
                row.append(e if (i - j) % 2 == 0 else -e)
        rows.append(row)
    return _mat(pts, rows)


def build_Y(pts: PointTuple) -> ExactMatrix:
    x = pts.values
    one = _one(pts)
    return ExactMatrix.diagonal(
        [_prod([x[i] - x[k] for k in range(i)], one) for i in range(len(x))], pts.domain
    )


def triangular_rows(pts: PointTuple) -> list[list]:
    """Rows ``(prod_{k<i} (x_j - x_k))_j``; these are the rows of ``Y M``."""
    x = pts.values
    one = _one(pts)
    return [[_prod([x[j] - x[k] for k in range(i)], one) for j in range(len(x))] for i in range(len(x))]


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of each factorization identity at one point tuple."""

    EP_eq_I: bool
    M_I_minus_L_eq_I: bool
    EV_eq_YM: bool
    EV_I_minus_L_eq_Y: bool
    V_eq_PYM: bool

    def all_pass(self) -> bool:
        return all(self.as_dict().values())

    def as_dict(self) -> dict[str, bool]:
        return {
            "E*P = I": self.EP_eq_I,
            "M*(I-L) = I": self.M_I_minus_L_eq_I,
            "E*V = Y*M": self.EV_eq_YM,
            "E*V*(I-L) = Y": self.EV_I_minus_L_eq_Y,
            "V = P*Y*M": self.V_eq_PYM,
        }


def verify_identities(pts: PointTuple) -> IdentityReport:
    m = len(pts)
    if m == 0:
        return IdentityReport(True, True, True, True, True)
    V, L, M = build_V(pts), build_L(pts), build_M(pts)
    P, E, Y = build_P(pts), build_E(pts), build_Y(pts)
    I = ExactMatrix.identity(m, pts.domain)
    IL = I - L
    EV = E @ V
    return IdentityReport(
        EP_eq_I=(E @ P) == I,
        M_I_minus_L_eq_I=(M @ IL) == I,
        EV_eq_YM=EV == (Y @ M),
        EV_I_minus_L_eq_Y=(EV @ IL) == Y,
        V_eq_PYM=V == (P @ (Y @ M)),
    )


def _diff_valuations(pts: PointTuple, p: int, n: int) -> list[list[int]]:
    x = pts.values
    k = len(x)
    vals = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i):
            v = t_valuation(x[i] - x[j], p, n)
            vals[i][j] = vals[j][i] = v
    return vals


def prefix_valuations(pts: PointTuple, p: int, n: int) -> list[int]:
    """``(sum_{j<i} v_t(x_i - x_j))_i`` in the given order."""
    dv = _diff_valuations(pts, p, n)
    return [sum(dv[i][:i]) for i in range(len(pts))]


def is_minimally_ordered(pts: PointTuple, p: int, n: int) -> bool:
    dv = _diff_valuations(pts, p, n)
    k = len(pts)
    for j in range(k):
        own = sum(dv[j][:j])
        for c in range(j + 1, k):
            if sum(dv[c][:j]) < own:
                return False
    return True


class OrderingError(AssertionError):
    """The greedy reordering failed the minimality inequality."""


def minimal_order(pts: PointTuple, p: int, n: int) -> list[int]:
    """Greedy permutation making the tuple minimally ordered.

    At each step the remaining point with the least summed valuation against
    the points already placed is appended; ties go to the lower original
    index.  The result is checked against the defining inequality.
    """
    dv = _diff_valuations(pts, p, n)
    k = len(pts)
    remaining = list(range(k))
    score = [0] * k
    perm: list[int] = []
    while remaining:
        best = min(remaining, key=lambda c: (score[c], c))
        remaining.remove(best)
        perm.append(best)
        for c in remaining:
            score[c] += dv[c][best]
    if not is_minimally_ordered(pts.permuted(perm), p, n):
        raise OrderingError("greedy ordering is not minimally ordered")
    return perm


def eldiv_valuations_by_ordering(pts: PointTuple, p: int, n: int) -> list[int]:
    """Elementary divisor valuations of ``V`` read off a minimally ordered tuple."""
    if not is_minimally_ordered(pts, p, n):
        raise ValueError("point tuple is not minimally ordered; apply minimal_order first")
    return prefix_valuations(pts, p, n)
