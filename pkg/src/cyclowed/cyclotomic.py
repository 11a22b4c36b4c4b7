"""Exact arithmetic in Q(zeta_m), t-adic valuations and Gaussian binomials.

Elements of Q(zeta_m) are stored in the power basis ``1, zeta, ..., zeta^(phi(m)-1)``
reduced modulo the cyclotomic polynomial, so equality is coefficientwise.
Internally a :class:`CycElement` keeps integer numerators over one positive
common denominator; :attr:`CycElement.coeffs` exposes them as Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence, Union

from .arith import binomial, euler_phi, is_prime, p_part, prime_power, vp

__all__ = [
    "INFINITY",
    "CycElement",
    "GaussPoly",
    "add",
    "cyclotomic_polynomial",
    "element_from_json",
    "element_to_json",
    "galois_apply",
    "gauss_binomial",
    "gauss_eval",
    "invert",
    "mul",
    "neg",
    "p_part",
    "q_factorial",
    "q_integer",
    "sub",
    "t_valuation",
]


@total_ordering
class _Infinity:
    """The valuation of zero. Absorbs addition, exceeds every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("cyclowed.INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Valuation = Union[int, _Infinity]


@lru_cache(maxsize=None)
def _poly_divexact(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    # den monic, remainder must vanish
    num = list(num)
    dn = len(den) - 1
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            q[k - dn] = c
            for i, d in enumerate(den):
                num[k - dn + i] -= c * d
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, constant term first."""
    if m < 1:
        raise ValueError(f"conductor must be positive, got {m}")
    poly = (-1,) + (0,) * (m - 1) + (1,)
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return poly


class _Context:
    """Per-conductor tables: reductions of X^k and the t-adic change of basis."""

    def __init__(self, m: int):
        self.m = m
        self.phi = euler_phi(m)
        self.poly = cyclotomic_polynomial(m)
        phi = self.phi
        rows = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(m):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(phi):
                    cur[i] -= top * self.poly[i]
        self.power = rows  # power[k] = X^k mod Phi_m, k in [0, m)
        self.pp = prime_power(m)
        self._tbasis = None

    @property
    def tbasis(self):
        # zeta^j = (1 - t)^j = sum_k (-1)^k C(j,k) t^k, as rows of column lists
        if self._tbasis is None:
            phi = self.phi
            self._tbasis = [
                [(-1) ** k * binomial(j, k) for j in range(phi)] for k in range(phi)
            ]
        return self._tbasis

    def reduce(self, vec: Sequence[int]) -> list[int]:
        """Reduce an integer vector indexed by powers of zeta (any length)."""
        m, phi = self.m, self.phi
        if len(vec) <= phi:
            return list(vec) + [0] * (phi - len(vec))
        folded = [0] * m
        for k, c in enumerate(vec):
            if c:
                folded[k % m] += c
        out = folded[:phi]
        power = self.power
        for k in range(phi, m):
            c = folded[k]
            if c:
                row = power[k]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return out


@lru_cache(maxsize=None)
def _context(m: int) -> _Context:
    return _Context(m)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational, str)):
        return Fraction(x)
    raise TypeError(f"not a rational coefficient: {x!r}")


class CycElement:
    """An element of Q(zeta_m) in the reduced power basis.

    ``CycElement(m, coeffs)`` accepts a coefficient sequence of any length,
    indexed by powers of zeta_m, and reduces it.  Instances are immutable.
    """

    __slots__ = ("m", "_num", "_den", "_hash")

    def __init__(self, m: int, coeffs: Iterable = ()):
        if m < 1:
            raise ValueError(f"conductor must be positive, got {m}")
        fr = [_as_fraction(c) for c in coeffs]
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        nums = [f.numerator * (den // f.denominator) for f in fr]
        self._set(m, _context(m).reduce(nums), den)

    def _set(self, m, nums, den):
        g = den
        for c in nums:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if not any(nums):
            den = 1
        elif g != 1:
            nums = [c // g for c in nums]
            den //= g
        self.m = m
        self._num = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, m: int, nums: Sequence[int], den: int = 1) -> "CycElement":
        # nums already reduced, length phi(m); den > 0
        obj = cls.__new__(cls)
        obj._set(m, nums, den)
        return obj

    # constructors
    @classmethod
    def zero(cls, m: int) -> "CycElement":
        return cls._raw(m, [0] * euler_phi(m))

    @classmethod
    def one(cls, m: int) -> "CycElement":
        return cls.rational(m, 1)

    @classmethod
    def rational(cls, m: int, r) -> "CycElement":
        r = _as_fraction(r)
        nums = [0] * euler_phi(m)
        nums[0] = r.numerator
        return cls._raw(m, nums, r.denominator)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "CycElement":
        """The power zeta_m^k, any integer k."""
        return cls._raw(m, list(_context(m).power[k % m]))

    # views
    @property
    def phi(self) -> int:
        return len(self._num)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(c, d) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def __bool__(self):
        return not self.is_zero()

    def is_integral(self) -> bool:
        """True iff the element lies in Z[zeta_m]."""
        return self._den == 1

    def is_p_integral(self, p: int) -> bool:
        """True iff the element lies in Z_(p)[zeta_m]."""
        return self._den % p != 0

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    # arithmetic
    def _coerce(self, other) -> "CycElement | None":
        if isinstance(other, CycElement):
            if other.m != self.m:
                raise ValueError(f"conductor mismatch: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycElement.rational(self.m, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._den, o._den
        if d1 == d2:
            return CycElement._raw(self.m, [a + b for a, b in zip(self._num, o._num)], d1)
        return CycElement._raw(
            self.m, [a * d2 + b * d1 for a, b in zip(self._num, o._num)], d1 * d2
        )

    __radd__ = __add__

    def __neg__(self):
        return CycElement._raw(self.m, [-a for a in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycElement._raw(self.m, [a * other for a in self._num], self._den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            r = o._num[0]
            return CycElement._raw(self.m, [a * r for a in self._num], self._den * o._den)
        if self.is_rational():
            r = self._num[0]
            return CycElement._raw(self.m, [a * r for a in o._num], self._den * o._den)
        return CycElement._raw(
            self.m, _mul_vec(self.m, self._num, o._num), self._den * o._den
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycElement.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def galois(self, i: int) -> "CycElement":
        """Apply the automorphism zeta -> zeta^i (gcd(i, m) must be 1)."""
        m = self.m
        if gcd(i, m) != 1:
            raise ValueError(f"{i} is not a unit modulo {m}")
        ctx = _context(m)
        vec = [0] * m
        for j, c in enumerate(self._num):
            if c:
                vec[(i * j) % m] += c
        return CycElement._raw(m, ctx.reduce(vec), self._den)

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        conj = self._conjugate_product()
        prod = self * conj
        return prod.to_rational()

    def _conjugate_product(self) -> "CycElement":
        m = self.m
        out = CycElement.one(m)
        for i in range(2, m):
            if gcd(i, m) == 1:
                out = out * self.galois(i)
        return out

    def inverse(self) -> "CycElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_m)")
        if self.is_rational():
            return CycElement.rational(self.m, 1 / self.to_rational())
        conj = self._conjugate_product()
        n = (self * conj).to_rational()
        return conj * (1 / n)

    # comparison and display
    def __eq__(self, other):
        if isinstance(other, CycElement):
            return self.m == other.m and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.m, self._num, self._den))
        return self._hash

    def __repr__(self):
        return f"CycElement({self.m}, {self})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            mono = f"z^{k}" if k > 1 else "z"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": [f"{c.numerator}/{c.denominator}" for c in self.coeffs]}


def _mul_vec(m: int, a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = len(a)
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    return _context(m).reduce(prod)


def add(a: CycElement, b: CycElement) -> CycElement:
    return a + b


def sub(a: CycElement, b: CycElement) -> CycElement:
    return a - b


def mul(a: CycElement, b: CycElement) -> CycElement:
    return a * b


def neg(a: CycElement) -> CycElement:
    return -a


def invert(a: CycElement) -> CycElement:
    """Multiplicative inverse, via the product of the nontrivial conjugates."""
    return a.inverse()


def galois_apply(a: CycElement, i: int) -> CycElement:
    return a.galois(i)


def element_to_json(a: CycElement) -> dict:
    return a.to_json()


def element_from_json(data) -> CycElement:
    if isinstance(data, str):
        data = json.loads(data)
    m = int(data["m"])
    coeffs = data["coeffs"]
    if len(coeffs) != euler_phi(m):
        raise ValueError(f"expected {euler_phi(m)} coefficients for m={m}, got {len(coeffs)}")
    return CycElement(m, [Fraction(c) for c in coeffs])


def t_valuation(a, p: int, n: int) -> Valuation:
    """Valuation at t = 1 - zeta_{p^n} of an element of Q(zeta_{p^n}).

    Rationals are accepted and read as elements of Q(zeta_{p^n}).
    """
    if not is_prime(p) or n < 1:
        raise ValueError(f"t-adic valuation needs a prime power conductor, got p={p}, n={n}")
    q = p**n
    phi = (p - 1) * p ** (n - 1)
    if isinstance(a, (int, Fraction)):
        a = Fraction(a)
        if a == 0:
            return INFINITY
        return phi * (vp(a.numerator, p) - vp(a.denominator, p))
    if a.m != q:
        raise ValueError(f"element has conductor {a.m}, expected {q}")
    if a.is_zero():
        return INFINITY
    tb = _context(q).tbasis
    num = a.numerators
    best = None
    for k in range(phi):
        # a term b t^k has valuation phi*v_p(b) + k, so k >= best is never better
        if best is not None and k >= best:
            break
        b = sum(c * r for c, r in zip(num, tb[k]) if c)
        if b:
            v = phi * vp(b, p) + k
            if best is None or v < best:
                best = v
    return best - phi * vp(a.denominator, p) if a.denominator != 1 else best


@dataclass(frozen=True)
class GaussPoly:
    """Integer polynomial in q, coefficient of q^k at index k."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "GaussPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _lift(self, other) -> "GaussPoly":
        if isinstance(other, GaussPoly):
            return other
        if isinstance(other, int):
            return GaussPoly((other,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = o.coeffs + (0,) * (n - len(o.coeffs))
        return GaussPoly(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return GaussPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return GaussPoly()
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(o.coeffs):
                    out[i + j] += x * y
        return GaussPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = GaussPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, q):
        return gauss_eval(self, q)

    def reverse(self, degree: int) -> "GaussPoly":
        """``q^degree * g(1/q)``; degree must bound the true degree."""
        if self.degree > degree:
            raise ValueError("degree bound too small")
        c = self.coeffs + (0,) * (degree + 1 - len(self.coeffs))
        return GaussPoly(tuple(reversed(c)))


@lru_cache(maxsize=None)
def gauss_binomial(i: int, j: int) -> GaussPoly:
    """Gaussian binomial [i choose j]_q, zero for j outside [0, i]."""
    if i < 0:
        raise ValueError("upper index must be nonnegative")
    if j < 0 or j > i:
        return GaussPoly()
    if j == 0 or j == i:
        return GaussPoly((1,))
    return gauss_binomial(i - 1, j - 1) + GaussPoly.monomial(j) * gauss_binomial(i - 1, j)


def q_integer(i: int) -> GaussPoly:
    """[i] = 1 + q + ... + q^(i-1)."""
    return GaussPoly((1,) * i)


def q_factorial(i: int) -> GaussPoly:
    out = GaussPoly((1,))
    for k in range(1, i + 1):
        out = out * q_integer(k)
    return out


def gauss_eval(g: GaussPoly, q):
    """Evaluate an integer polynomial at q (int, Fraction or CycElement) by Horner."""
    if isinstance(q, CycElement):
        acc = CycElement.zero(q.m)
    else:
        acc = 0
    for c in reversed(g.coeffs):
        acc = acc * q + c
    return acc
