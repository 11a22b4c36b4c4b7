"""Dense exact matrices, determinants and elementary divisors.

Entries live either in Q (``Fraction``) or in a fixed cyclotomic field
Q(zeta_m) (:class:`CycElement`).  Elementary divisors are available over Z
(Smith normal form) and over the discrete valuation ring Z_(p)[zeta_{p^n}],
where they are reported by their t-adic valuations.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .cyclotomic import INFINITY, CycElement, element_from_json, t_valuation

Domain = Union[str, int]  # "Q" or a conductor m

__all__ = [
    "ExactMatrix",
    "SingularMatrixError",
    "determinant",
    "inverse",
    "matrix_from_json",
    "matrix_to_json",
    "smith_divisors_z",
    "smith_valuations_dvr",
    "solve_left",
]


class SingularMatrixError(ArithmeticError):
    pass


def _coerce(domain: Domain, x):
    if domain == "Q":
        if isinstance(x, CycElement):
            return x.to_rational()
        return Fraction(x)
    if isinstance(x, CycElement):
        if x.m != domain:
            raise ValueError(f"entry has conductor {x.m}, matrix domain is Q(zeta_{domain})")
        return x
    return CycElement.rational(domain, x)


def _zero(domain: Domain):
    return Fraction(0) if domain == "Q" else CycElement.zero(domain)


def _one(domain: Domain):
    return Fraction(1) if domain == "Q" else CycElement.one(domain)


def _inv(x):
    if isinstance(x, CycElement):
        return x.inverse()
    return 1 / x


class ExactMatrix:
    """A dense ``rows x cols`` matrix over Q or Q(zeta_m).

    Construct with :meth:`from_rows`; instances are treated as immutable.
    """

    __slots__ = ("rows", "cols", "domain", "_data")

    def __init__(self, rows: int, cols: int, domain: Domain, entries: Sequence):
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        if domain != "Q" and not (isinstance(domain, int) and domain >= 1):
            raise ValueError(f"unknown coefficient domain {domain!r}")
        self.rows = rows
        self.cols = cols
        self.domain = domain
        self._data = [
            [_coerce(domain, entries[i * cols + j]) for j in range(cols)] for i in range(rows)
        ]

    @classmethod
    def _wrap(cls, domain: Domain, data: list[list]) -> "ExactMatrix":
        obj = cls.__new__(cls)
        obj.rows = len(data)
        obj.cols = len(data[0]) if data else 0
        obj.domain = domain
        obj._data = data
        return obj

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], domain: Domain | None = None) -> "ExactMatrix":
        data = [list(r) for r in rows]
        if domain is None:
            domain = "Q"
            for r in data:
                for x in r:
                    if isinstance(x, CycElement):
                        domain = x.m
                        break
                if domain != "Q":
                    break
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise ValueError("ragged rows")
        return cls._wrap(domain, [[_coerce(domain, x) for x in r] for r in data])

    @classmethod
    def identity(cls, k: int, domain: Domain = "Q") -> "ExactMatrix":
        z, o = _zero(domain), _one(domain)
        return cls._wrap(domain, [[o if i == j else z for j in range(k)] for i in range(k)])

    @classmethod
    def zeros(cls, rows: int, cols: int, domain: Domain = "Q") -> "ExactMatrix":
        z = _zero(domain)
        return cls._wrap(domain, [[z] * cols for _ in range(rows)])

    @classmethod
    def diagonal(cls, diag: Sequence, domain: Domain | None = None) -> "ExactMatrix":
        k = len(diag)
        if domain is None:
            domain = next((x.m for x in diag if isinstance(x, CycElement)), "Q")
        z = _zero(domain)
        return cls._wrap(
            domain,
            [[_coerce(domain, diag[i]) if i == j else z for j in range(k)] for i in range(k)],
        )

    @classmethod
    def build(cls, rows: int, cols: int, f: Callable[[int, int], object], domain: Domain = "Q"):
        return cls._wrap(domain, [[_coerce(domain, f(i, j)) for j in range(cols)] for i in range(rows)])

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> list:
        return list(self._data[i])

    def col(self, j: int) -> list:
        return [r[j] for r in self._data]

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def diagonal_entries(self) -> list:
        return [self._data[i][i] for i in range(min(self.rows, self.cols))]

    def map(self, f: Callable, domain: Domain | None = None) -> "ExactMatrix":
        d = self.domain if domain is None else domain
        return ExactMatrix._wrap(d, [[_coerce(d, f(x)) for x in r] for r in self._data])

    def with_domain(self, domain: Domain) -> "ExactMatrix":
        return self.map(lambda x: x, domain)

    # algebra
    def _check_same(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        if self.domain != other.domain:
            raise ValueError(f"domain mismatch: {self.domain} vs {other.domain}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix._wrap(
            self.domain, [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same(other)
        return ExactMatrix._wrap(
            self.domain, [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)]
        )

    def __neg__(self):
        return ExactMatrix._wrap(self.domain, [[-a for a in r] for r in self._data])

    def scale(self, c) -> "ExactMatrix":
        c = _coerce(self.domain, c)
        return ExactMatrix._wrap(self.domain, [[c * a for a in r] for r in self._data])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.domain != other.domain:
            raise ValueError(f"domain mismatch: {self.domain} vs {other.domain}")
        z = _zero(self.domain)
        ocols = other.transpose()._data
        out = []
        for r in self._data:
            row = []
            for c in ocols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix._wrap(self.domain, out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self.domain, [list(c) for c in zip(*self._data)] if self.rows else [])

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    __hash__ = None

    def is_diagonal(self) -> bool:
        return all(
            not self._data[i][j] for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def is_lower_triangular(self) -> bool:
        return all(not self._data[i][j] for i in range(self.rows) for j in range(i + 1, self.cols))

    def is_upper_triangular(self) -> bool:
        return all(not self._data[i][j] for i in range(self.rows) for j in range(min(i, self.cols)))

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self._data)
        return f"ExactMatrix({self.rows}x{self.cols} over {self._domain_name()}: [{body}])"

    def _domain_name(self):
        return "Q" if self.domain == "Q" else f"Q(zeta_{self.domain})"

    def to_json(self) -> dict:
        return matrix_to_json(self)


def _entry_json(x):
    if isinstance(x, CycElement):
        return x.to_json()["coeffs"]
    return f"{x.numerator}/{x.denominator}"


def matrix_to_json(A: ExactMatrix) -> dict:
    """Serialize; cyclotomic entries are written as their coefficient lists."""
    return {
        "rows": A.rows,
        "cols": A.cols,
        "domain": "Q" if A.domain == "Q" else {"cyclotomic": A.domain},
        "entries": [[_entry_json(x) for x in r] for r in A.tolist()],
    }


def matrix_from_json(data) -> ExactMatrix:
    if isinstance(data, str):
        data = json.loads(data)
    dom = data["domain"]
    if dom == "Q":
        domain: Domain = "Q"
        conv = Fraction
    elif isinstance(dom, dict) and "cyclotomic" in dom:
        domain = int(dom["cyclotomic"])
        conv = lambda e: element_from_json({"m": domain, "coeffs": e})  # noqa: E731
    else:
        raise ValueError(f"unknown domain {dom!r}")
    rows = [[conv(e) for e in r] for r in data["entries"]]
    if len(rows) != data["rows"] or any(len(r) != data["cols"] for r in rows):
        raise ValueError("entries do not match declared shape")
    if not rows:
        return ExactMatrix(data["rows"], data["cols"], domain, [])
    return ExactMatrix.from_rows(rows, domain)


def determinant(A: ExactMatrix):
    """Exact determinant by Gaussian elimination over the fraction field."""
    if not A.is_square():
        raise ValueError(f"determinant of non-square {A.shape} matrix")
    k = A.rows
    if k == 0:
        return _one(A.domain)
    a = A.tolist()
    det = _one(A.domain)
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c]), None)
        if piv is None:
            return _zero(A.domain)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pc = a[c][c]
        det = det * pc
        inv = _inv(pc)
        rowc = a[c]
        for r in range(c + 1, k):
            f = a[r][c]
            if f:
                f = f * inv
                rr = a[r]
                for j in range(c + 1, k):
                    if rowc[j]:
                        rr[j] = rr[j] - f * rowc[j]
    return det


def inverse(A: ExactMatrix) -> ExactMatrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if not A.is_square():
        raise ValueError(f"inverse of non-square {A.shape} matrix")
    k = A.rows
    z, o = _zero(A.domain), _one(A.domain)
    a = [list(r) + [o if i == j else z for j in range(k)] for i, r in enumerate(A.tolist())]
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = _inv(a[c][c])
        a[c] = [x * inv if x else x for x in a[c]]
        rowc = a[c]
        for r in range(k):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y if y else x for x, y in zip(a[r], rowc)]
    return ExactMatrix._wrap(A.domain, [r[k:] for r in a])


def solve_left(A: ExactMatrix, y: Sequence) -> list:
    """Return x with ``x . A = y``; A must be square and invertible."""
    if not A.is_square():
        raise ValueError("solve_left needs a square matrix")
    if len(y) != A.rows:
        raise ValueError(f"right-hand side has length {len(y)}, expected {A.rows}")
    k = A.rows
    # x A = y  <=>  A^T x^T = y^T; eliminate on the augmented transpose
    a = [list(r) + [_coerce(A.domain, y[i])] for i, r in enumerate(A.transpose().tolist())]
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = _inv(a[c][c])
        a[c] = [x * inv if x else x for x in a[c]]
        rowc = a[c]
        for r in range(k):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y_ if y_ else x for x, y_ in zip(a[r], rowc)]
    return [a[i][k] for i in range(k)]


def _entry_valuation(x, p: int, n: int):
    if isinstance(x, CycElement):
        return t_valuation(x, p, n)
    return t_valuation(Fraction(x), p, n)


def smith_valuations_dvr(A: ExactMatrix, p: int, n: int, *, allow_rectangular: bool = False) -> list[int]:
    """t-adic valuations of the elementary divisors of A over Z_(p)[zeta_{p^n}], ascending.

    Repeatedly picks an entry of least valuation as pivot (first by row, then
    by column), clears its column by exact row operations and discards its
    row and column.  In a discrete valuation ring such a pivot divides every
    remaining entry, so each pivot valuation is an elementary divisor.
    """
    if A.domain not in ("Q", p**n):
        raise ValueError(f"matrix over {A._domain_name()} is not over Q(zeta_{p**n})")
    if not A.is_square() and not allow_rectangular:
        raise ValueError(f"expected a square matrix, got {A.shape}")
    a = A.tolist()
    vals = [[_entry_valuation(x, p, n) for x in r] for r in a]
    live_rows = list(range(A.rows))
    live_cols = list(range(A.cols))
    out = []
    for _ in range(min(A.rows, A.cols)):
        best = INFINITY
        br = bc = -1
        for r in live_rows:
            vr = vals[r]
            for c in live_cols:
                if vr[c] < best:
                    best, br, bc = vr[c], r, c
        if best is INFINITY:
            raise SingularMatrixError("matrix is singular over the fraction field")
        if best < 0:
            raise ValueError(
                f"entry ({br}, {bc}) has negative valuation {best}; the matrix is not over the local ring"
            )
        out.append(best)
        live_rows.remove(br)
        live_cols.remove(bc)
        prow = a[br]
        inv = _inv(prow[bc])
        for r in live_rows:
            f = a[r][bc]
            if not f:
                continue
            f = f * inv
            ar, vr = a[r], vals[r]
            for c in live_cols:
                if prow[c]:
                    ar[c] = ar[c] - f * prow[c]
                    vr[c] = _entry_valuation(ar[c], p, n)
    return sorted(out)


def smith_divisors_z(A: ExactMatrix) -> list[int]:
    """Diagonal of the Smith normal form of a nonsingular integer matrix."""
    if not A.is_square():
        raise ValueError(f"expected a square matrix, got {A.shape}")
    a = []
    for r in A.tolist():
        row = []
        for x in r:
            q = x.to_rational() if isinstance(x, CycElement) else Fraction(x)
            if q.denominator != 1:
                raise ValueError(f"non-integer entry {q}")
            row.append(q.numerator)
        a.append(row)
    k = len(a)
    diag = []
    for s in range(k):
        # move a nonzero entry of least absolute value to (s, s), then clear
        while True:
            cand = [(abs(a[i][j]), i, j) for i in range(s, k) for j in range(s, k) if a[i][j]]
            if not cand:
                raise SingularMatrixError("matrix is singular")
            _, i, j = min(cand)
            a[s], a[i] = a[i], a[s]
            for r in a:
                r[s], r[j] = r[j], r[s]
            piv = a[s][s]
            done = True
            for i in range(s + 1, k):
                q = a[i][s] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[s])]
                if a[i][s]:
                    done = False
            for j in range(s + 1, k):
                q = a[s][j] // piv
                if q:
                    for r in a:
                        r[j] -= q * r[s]
                if a[s][j]:
                    done = False
            if not done:
                continue
            # divisibility condition on the trailing block
            bad = next(
                ((i, j) for i in range(s + 1, k) for j in range(s + 1, k) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            a[s] = [x + y for x, y in zip(a[s], a[bad[0]])]
        diag.append(abs(a[s][s]))
    return diag
