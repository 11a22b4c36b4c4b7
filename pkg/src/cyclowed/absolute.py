"""The absolute Wedderburn embedding ``Z C_m -> prod_{d | m} Z[zeta_d]``.

For ``m = p^n`` the image is cut out by a triangular system of congruences
on power-basis coefficients (Kervaire-Murthy ties), expressed through the
operators ``T^{m,s}_i`` on finitely supported integer sequences.  An
explicit rational inverse of the embedding serves as the membership
oracle.  Composite m reduces to its prime-power parts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Mapping, Sequence

from .arith import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    mod_inverse,
    p_part,
    p_prime_part,
    prime_divisors,
    vp,
)
from .cyclotomic import CycElement
from .linalg import ExactMatrix, determinant, smith_divisors_z, solve_left
from .ties import Congruence, IntegerModulus, TieSystem

__all__ = [
    "AbsoluteTuple",
    "CompositeTuple",
    "FinSuppSeq",
    "KMReport",
    "absolute_apply",
    "absolute_eldiv_z",
    "absolute_eldiv_z_oracle",
    "absolute_image_membership_oracle",
    "absolute_index",
    "absolute_index_m",
    "absolute_inverse",
    "absolute_matrix_z",
    "composite_apply",
    "composite_checks",
    "composite_exponent",
    "composite_keys",
    "composite_membership",
    "composite_membership_oracle",
    "discriminant_magnitude",
    "discriminant_trace_form",
    "index_discriminant_consistency",
    "inversion_formula_m",
    "km_ties",
    "km_ties_check",
    "km_ties_explicit",
    "km_ties_render",
    "s_value",
    "t_operator",
]


# --------------------------------------------------------------------------
# finitely supported sequences and T-operators


class FinSuppSeq:
    """A finitely supported sequence ``Z -> Z``; zero entries are never stored."""

    __slots__ = ("_d",)

    def __init__(self, data: Mapping[int, int] | Iterable[int] | None = None):
        if data is None:
            d = {}
        elif isinstance(data, Mapping):
            d = {int(k): int(v) for k, v in data.items() if v}
        else:
            d = {i: int(v) for i, v in enumerate(data) if v}
        self._d = d

    @property
    def support(self) -> dict[int, int]:
        return dict(self._d)

    def items(self):
        return self._d.items()

    def __getitem__(self, j: int) -> int:
        return self._d.get(j, 0)

    def __eq__(self, other):
        return isinstance(other, FinSuppSeq) and self._d == other._d

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __bool__(self):
        return bool(self._d)

    def __add__(self, other: "FinSuppSeq") -> "FinSuppSeq":
        d = dict(self._d)
        for k, v in other._d.items():
            d[k] = d.get(k, 0) + v
        return FinSuppSeq(d)

    def __neg__(self):
        return FinSuppSeq({k: -v for k, v in self._d.items()})

    def __sub__(self, other: "FinSuppSeq") -> "FinSuppSeq":
        return self + (-other)

    def scale(self, c: int) -> "FinSuppSeq":
        return FinSuppSeq({k: c * v for k, v in self._d.items()})

    __rmul__ = scale

    def mod(self, N: int) -> "FinSuppSeq":
        return FinSuppSeq({k: v % N for k, v in self._d.items()})

    def to_list(self, length: int) -> list[int]:
        return [self._d.get(j, 0) for j in range(length)]

    def evaluate(self, m: int) -> CycElement:
        """``x * zeta_m = sum_j x_j zeta_m^j``."""
        acc = CycElement.zero(m)
        for j, v in self._d.items():
            acc = acc + v * CycElement.zeta(m, j)
        return acc

    def to_json(self) -> dict:
        return {str(k): v for k, v in sorted(self._d.items())}

    def __repr__(self):
        return f"FinSuppSeq({dict(sorted(self._d.items()))})"


def t_operator(m_shift: int, s: int, i: int, p: int, x: FinSuppSeq) -> FinSuppSeq:
    """``(T^{m,s}_i x)_j = chi_{[0,p^i-1]}(j) sum_k x_{[j]_a - a + k p^{i+s}}``, ``a = p^{i-m}``.

    Zero when ``i < m``.
    """
    if min(m_shift, s, i) < 0:
        raise ValueError("T-operator parameters must be nonnegative")
    if i < m_shift:
        return FinSuppSeq()
    a = p ** (i - m_shift)
    P = p ** (i + s)
    top = p**i
    out: dict[int, int] = {}
    for r, v in x.items():
        u = (r + a) % P
        if u < a:
            for j in range(u, top, a):
                out[j] = out.get(j, 0) + v
    return FinSuppSeq(out)


# --------------------------------------------------------------------------
# absolute tuples


def _check_pn(p: int, n: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("n must be nonnegative")


@dataclass(frozen=True)
class AbsoluteTuple:
    """``(sum_j x_{i,j} zeta_{p^i}^j)_{i in [0,n]}`` stored as coefficient sequences."""

    p: int
    n: int
    components: tuple

    def __post_init__(self):
        _check_pn(self.p, self.n)
        comps = tuple(c if isinstance(c, FinSuppSeq) else FinSuppSeq(c) for c in self.components)
        if len(comps) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} components, got {len(comps)}")
        for i, c in enumerate(comps):
            bound = euler_phi(self.p**i)
            bad = [j for j, _ in c.items() if not 0 <= j < bound]
            if bad:
                raise ValueError(f"component {i} has support {sorted(bad)} outside [0, {bound - 1}]")
        object.__setattr__(self, "components", comps)

    def __getitem__(self, i: int) -> FinSuppSeq:
        return self.components[i]

    def coordinates(self) -> dict[str, int]:
        out = {}
        for i, c in enumerate(self.components):
            for j in range(euler_phi(self.p**i)):
                out[_xname(i, j)] = c[j]
        return out

    def scale(self, c: int) -> "AbsoluteTuple":
        return AbsoluteTuple(self.p, self.n, tuple(x.scale(c) for x in self.components))

    def __add__(self, other: "AbsoluteTuple") -> "AbsoluteTuple":
        return AbsoluteTuple(self.p, self.n, tuple(a + b for a, b in zip(self.components, other.components)))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "components": [{"i": i, "coeffs": c.to_json()} for i, c in enumerate(self.components)],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data) -> "AbsoluteTuple":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            p, n = int(data["p"]), int(data["n"])
            comps = [FinSuppSeq() for _ in range(n + 1)]
            for entry in data["components"]:
                i = int(entry["i"])
                coeffs = entry["coeffs"]
                if isinstance(coeffs, list):
                    comps[i] = FinSuppSeq(coeffs)
                else:
                    comps[i] = FinSuppSeq({int(k): int(v) for k, v in coeffs.items()})
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"malformed absolute tuple: {exc}") from exc
        return cls(p, n, tuple(comps))


def _xname(i: int, j: int) -> str:
    return f"x_{{{i},{j}}}"


def absolute_apply(p: int, n: int, x: Sequence[int]) -> AbsoluteTuple:
    """Image of ``sum_h x_h c^h`` in ``prod_{i<=n} Z[zeta_{p^i}]`` (power-basis coefficients)."""
    _check_pn(p, n)
    q = p**n
    if len(x) != q:
        raise ValueError(f"expected {q} coefficients, got {len(x)}")
    comps = []
    for i in range(n + 1):
        m = p**i
        acc = CycElement.zero(m)
        for h, v in enumerate(x):
            if v:
                acc = acc + v * CycElement.zeta(m, h)
        comps.append(FinSuppSeq([int(c) for c in acc.coeffs]))
    return AbsoluteTuple(p, n, tuple(comps))


def absolute_inverse(t: AbsoluteTuple) -> list[Fraction]:
    """Preimage in ``Q C_{p^n}``.

    Coefficient of ``c^i`` is ``p^{-n} sum_k p^k sum_{j in [1, p^{n-k}]} (y_{k, i - j p^k} - y_{k+1, i - j p^k})``
    with ``y_{n+1} = 0``.
    """
    p, n = t.p, t.n
    q = p**n
    acc = [0] * q
    for k in range(n + 1):
        pk = p**k
        for src, sign in ((t[k], 1), (t[k + 1] if k < n else FinSuppSeq(), -1)):
            for r, v in src.items():
                for j in range(1, p ** (n - k) + 1):
                    acc[(r + j * pk) % q] += sign * pk * v
    return [Fraction(a, q) for a in acc]


def absolute_image_membership_oracle(t: AbsoluteTuple) -> bool:
    return all(c.denominator == 1 for c in absolute_inverse(t))


# --------------------------------------------------------------------------
# Kervaire-Murthy ties


def _unit(i: int) -> FinSuppSeq:
    return FinSuppSeq({i: 1})


@lru_cache(maxsize=32)
def _km_forms(p: int, n: int) -> tuple:
    """Per congruence ``(l, j, [(i, {r: coeff})])``, grouped by the source level ``n - i``."""
    out = []
    for l in range(1, n + 1):
        lvl = n - l
        for j in range(euler_phi(p**lvl)):
            groups = []
            for i in range(l):
                s = l - 1 - i
                coeffs: dict[int, int] = {}
                for r in range(euler_phi(p ** (n - i))):
                    e = _unit(r)
                    v = t_operator(0, s, lvl, p, e)[j] - t_operator(1, s, lvl, p, e)[j]
                    if v:
                        coeffs[r] = v
                groups.append((i, coeffs))
            out.append((l, j, tuple(groups)))
    return tuple(out)


def _order(p: int, n: int) -> tuple[str, ...]:
    return tuple(_xname(i, j) for i in range(n, -1, -1) for j in range(euler_phi(p**i)))


@lru_cache(maxsize=32)
def km_ties(p: int, n: int) -> TieSystem:
    """``x_{n-l} = sum_{i<l} p^{l-1-i} (T^{0,l-1-i}_{n-l} - T^{1,l-1-i}_{n-l}) x_{n-i}`` modulo ``p^l``."""
    _check_pn(p, n)
    congs = []
    for l, j, groups in _km_forms(p, n):
        form = []
        for i, coeffs in groups:
            w = p ** (l - 1 - i)
            for r, c in sorted(coeffs.items()):
                form.append((_xname(n - i, r), w * c))
        congs.append(Congruence(_xname(n - l, j), IntegerModulus(p**l), tuple(form)))
    return TieSystem(_order(p, n), tuple(congs))


def km_ties_explicit(p: int, n: int) -> list[dict[str, int]]:
    """Forms of the index-level description, for cross-checking :func:`km_ties`.

    ``sum_i p^{l-1-i} sum_{k in [1,p-1]} (x_{n-i, j - p^{n-l} + k p^{n-1-i}}
    - (1 - delta_{l,n}) x_{n-i, [j]_{p^{n-l-1}} - p^{n-l-1} + k p^{n-1-i}})``.
    """
    out = []
    for l in range(1, n + 1):
        for j in range(euler_phi(p ** (n - l))):
            form: dict[str, int] = {}
            for i in range(l):
                w = p ** (l - 1 - i)
                for k in range(1, p):
                    a = j - p ** (n - l) + k * p ** (n - 1 - i)
                    form[_xname(n - i, a)] = form.get(_xname(n - i, a), 0) + w
                    if l != n:
                        b = j % p ** (n - l - 1) - p ** (n - l - 1) + k * p ** (n - 1 - i)
                        form[_xname(n - i, b)] = form.get(_xname(n - i, b), 0) - w
            out.append({k: v for k, v in form.items() if v})
    return out


def _term(c: int, name: str) -> str:
    return (str(abs(c)) if abs(c) != 1 else "") + name


def _render_group(coeffs: Mapping[str, int]) -> str:
    def key(name):
        i, j = name[3:-1].split(",")
        return int(i), int(j)

    pos = sorted((n for n, c in coeffs.items() if c > 0), key=key)
    neg = sorted((n for n, c in coeffs.items() if c < 0), key=key)
    parts = []
    for name in pos:
        parts.append(("+", _term(coeffs[name], name)))
    for name in neg:
        parts.append(("-", _term(coeffs[name], name)))
    s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, txt in parts[1:]:
        s += f" {sign} {txt}"
    return s


def km_ties_render(p: int, n: int) -> list[str]:
    """Human-readable congruences, one string per tie, e.g. ``x_{0,0} ≡_9 3(x_{2,2} + x_{2,5}) + (x_{1,0} + x_{1,1})``."""
    lines = []
    for l, j, groups in _km_forms(p, n):
        rendered = []
        for i, coeffs in groups:
            if not coeffs:
                continue
            w = p ** (l - 1 - i)
            names = {_xname(n - i, r): c for r, c in coeffs.items()}
            body = _render_group(names)
            rendered.append((w, body, len(names)))
        pieces = []
        for w, body, count in rendered:
            if count == 1:
                pieces.append((str(w) if w != 1 else "") + body)
            elif w != 1:
                pieces.append(f"{w}({body})")
            elif len(rendered) > 1:
                pieces.append(f"({body})")
            else:
                pieces.append(body)
        rhs = " + ".join(pieces) if pieces else "0"
        lines.append(f"{_xname(n - l, j)} ≡_{p ** l} {rhs}")
    return lines


@dataclass(frozen=True)
class KMViolation:
    l: int
    j: int
    modulus: int
    lhs_residue: int
    rhs_residue: int

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "j": self.j,
            "modulus": self.modulus,
            "lhs_residue": self.lhs_residue,
            "rhs_residue": self.rhs_residue,
        }


@dataclass(frozen=True)
class KMReport:
    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"member": self.ok, "violations": [v.to_json() for v in self.violations]}


def km_ties_check(t: AbsoluteTuple) -> KMReport:
    """Evaluate each tie with T-operators applied to the tuple's sequences."""
    p, n = t.p, t.n
    bad = []
    for l in range(1, n + 1):
        lvl = n - l
        N = p**l
        rhs = FinSuppSeq()
        for i in range(l):
            s = l - 1 - i
            x = t[n - i]
            rhs = rhs + (t_operator(0, s, lvl, p, x) - t_operator(1, s, lvl, p, x)).scale(p ** (l - 1 - i))
        lhs = t[lvl]
        for j in range(euler_phi(p**lvl)):
            a, b = lhs[j] % N, rhs[j] % N
            if a != b:
                bad.append(KMViolation(l, j, N, a, b))
    return KMReport(not bad, tuple(bad))


# --------------------------------------------------------------------------
# index, elementary divisors, discriminant


def absolute_index(p: int, n: int) -> int:
    """``p^{(p^n - 1)/(p - 1)}``."""
    _check_pn(p, n)
    return p ** ((p**n - 1) // (p - 1))


def absolute_index_m(m: int) -> int:
    """``prod_{p | m} p^{((m[p] - 1)/(p - 1)) m[p']}``."""
    if m < 1:
        raise ValueError("m must be positive")
    out = 1
    for p, _ in factorize(m):
        out *= p ** ((p_part(m, p) - 1) // (p - 1) * p_prime_part(m, p))
    return out


def absolute_eldiv_z(p: int, n: int) -> list[int]:
    """``p^i`` with multiplicity ``phi(p^{n-i})``, ascending."""
    _check_pn(p, n)
    return [p**i for i in range(n + 1) for _ in range(euler_phi(p ** (n - i)))]


@lru_cache(maxsize=16)
def absolute_matrix_z(p: int, n: int) -> ExactMatrix:
    """Row h: the images of ``c^h`` over the concatenated power bases of ``Z[zeta_{p^i}]``."""
    q = p**n
    rows = []
    for h in range(q):
        x = [0] * q
        x[h] = 1
        t = absolute_apply(p, n, x)
        row = []
        for i in range(n + 1):
            row.extend(t[i].to_list(euler_phi(p**i)))
        rows.append(row)
    return ExactMatrix.from_rows(rows, "Q")


def absolute_eldiv_z_oracle(p: int, n: int) -> list[int]:
    return smith_divisors_z(absolute_matrix_z(p, n))


def discriminant_magnitude(m: int) -> int:
    """``|disc Z[zeta_m]| = prod_{p | m} p^{(m[p]/p)(v_p(m)(p-1) - 1) phi(m[p'])}``."""
    if m < 1:
        raise ValueError("m must be positive")
    out = 1
    for p, e in factorize(m):
        out *= p ** (p_part(m, p) // p * (e * (p - 1) - 1) * euler_phi(p_prime_part(m, p)))
    return out


def _mobius(k: int) -> int:
    f = factorize(k)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def _ramanujan_sum(m: int, k: int) -> int:
    """``Tr_{Q(zeta_m)/Q}(zeta_m^k)``."""
    g = gcd(k, m)
    return sum(_mobius(m // d) * d for d in divisors(g))


def discriminant_trace_form(m: int) -> int:
    """``|det(Tr(zeta^{i+j}))|`` over the power basis, an independent check of the closed form."""
    k = euler_phi(m)
    A = ExactMatrix.build(k, k, lambda i, j: _ramanujan_sum(m, i + j), "Q")
    d = determinant(A)
    return abs(int(d))


def index_discriminant_consistency(m: int) -> tuple[int, int]:
    """``(index^2 * prod_{d | m} Delta_d, m^m)``."""
    lhs = absolute_index_m(m) ** 2
    for d in divisors(m):
        lhs *= discriminant_magnitude(d)
    return lhs, m**m


# --------------------------------------------------------------------------
# composite m


def s_value(k: int, p: int) -> int:
    """Least nonnegative inverse of ``k[p']`` modulo ``k[p]``."""
    if k % p:
        raise ValueError(f"{p} does not divide {k}")
    return mod_inverse(p_prime_part(k, p), p_part(k, p)) % p_part(k, p)


STAR = "*"


def _primes(m: int) -> list[int]:
    return prime_divisors(m)


def composite_keys(m: int, d: int) -> list[tuple]:
    """Digit tuples over the primes of m, ``*`` at primes not dividing d."""
    ranges = [range(euler_phi(p_part(d, p))) if d % p == 0 else [STAR] for p in _primes(m)]
    return [tuple(k) for k in product(*ranges)]


def composite_exponent(m: int, d: int, key: tuple) -> int:
    """Exponent e with basis element ``zeta_d^e``, ``e = sum_{p | d} s_{d,p} j_p d[p']``."""
    e = 0
    for p, j in zip(_primes(m), key):
        if j != STAR:
            e += s_value(d, p) * j * p_prime_part(d, p)
    return e % d if d > 1 else 0


@dataclass(frozen=True)
class CompositeTuple:
    """``(sum_key a_{d,key} zeta_d^{e(key)})_{d | m}`` with integer coefficients."""

    m: int
    components: tuple  # tuple of (d, {key: int}) in divisor order

    def __post_init__(self):
        comps = dict(self.components)
        divs = divisors(self.m)
        if sorted(comps) != divs:
            raise ValueError(f"components must be indexed by the divisors {divs}")
        norm = []
        for d in divs:
            allowed = set(composite_keys(self.m, d))
            c = {}
            for k, v in comps[d].items():
                k = tuple(k)
                if k not in allowed:
                    raise ValueError(f"key {k} is not valid for d={d}")
                if v:
                    c[k] = int(v)
            norm.append((d, c))
        object.__setattr__(self, "components", tuple(norm))

    def component(self, d: int) -> dict:
        return dict(self.components)[d]

    def element(self, d: int) -> CycElement:
        acc = CycElement.zero(d)
        for k, v in self.component(d).items():
            acc = acc + v * CycElement.zeta(d, composite_exponent(self.m, d, k))
        return acc

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "components": [
                {"d": d, "coeffs": [{"key": list(k), "value": v} for k, v in sorted(c.items(), key=str)]}
                for d, c in self.components
            ],
        }

    @classmethod
    def from_json(cls, data) -> "CompositeTuple":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            m = int(data["m"])
            comps = {d: {} for d in divisors(m)}
            for entry in data["components"]:
                d = int(entry["d"])
                if d not in comps:
                    raise ValueError(f"{d} does not divide {m}")
                for c in entry["coeffs"]:
                    key = tuple(STAR if k in (STAR, None) else int(k) for k in c["key"])
                    comps[d][key] = int(c["value"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed composite tuple: {exc}") from exc
        return cls(m, tuple(comps.items()))


@lru_cache(maxsize=64)
def _composite_basis_matrix(m: int, d: int) -> ExactMatrix:
    rows = [list(CycElement.zeta(d, composite_exponent(m, d, k)).coeffs) for k in composite_keys(m, d)]
    return ExactMatrix.from_rows(rows, "Q")


def composite_apply(m: int, x: Sequence[int]) -> CompositeTuple:
    """Image of ``sum_h x_h c_m^h``, rewritten over the digit bases."""
    if len(x) != m:
        raise ValueError(f"expected {m} coefficients, got {len(x)}")
    comps = []
    for d in divisors(m):
        acc = CycElement.zero(d)
        for h, v in enumerate(x):
            if v:
                acc = acc + v * CycElement.zeta(d, h)
        coords = solve_left(_composite_basis_matrix(m, d), list(acc.coeffs))
        if any(c.denominator != 1 for c in coords):
            raise AssertionError("digit basis is not a Z-basis")
        comps.append((d, {k: int(c) for k, c in zip(composite_keys(m, d), coords)}))
    return CompositeTuple(m, tuple(comps))


@dataclass(frozen=True)
class CompositeCheck:
    p: int
    f: int
    digits: tuple  # ((q, j_q), ...) for q | f
    tuple_: AbsoluteTuple
    report: KMReport

    def describe(self) -> str:
        m_p = self.tuple_.p**self.tuple_.n
        dg = ", ".join(f"j_{q}={j}" for q, j in self.digits)
        return f"ZC_{m_p} check at p={self.p}, f={self.f}" + (f" ({dg})" if dg else "")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "digits": {str(q): j for q, j in self.digits},
            "tuple": self.tuple_.to_json(),
            **self.report.to_json(),
        }


def composite_checks(m: int) -> list[tuple[int, int, tuple]]:
    """``(p, f, ((q, j_q), ...))`` for each p | m, f | m[p'] and digit tuple over the primes of f."""
    out = []
    for p in _primes(m):
        for f in divisors(p_prime_part(m, p)):
            qs = prime_divisors(f)
            for js in product(*[range(euler_phi(p_part(f, q))) for q in qs]):
                out.append((p, f, tuple(zip(qs, js))))
    return out


def _slice(t: CompositeTuple, p: int, f: int, digits_: tuple) -> AbsoluteTuple:
    m = t.m
    primes = _primes(m)
    n = vp(m, p)
    jq = dict(digits_)
    comps = []
    for i in range(n + 1):
        e = p**i
        d = e * f
        data = t.component(d)
        coeffs = {}
        for jp in range(euler_phi(e)):
            key = []
            for r in primes:
                if r == p:
                    key.append(jp if i > 0 else STAR)
                elif r in jq:
                    key.append(jq[r])
                else:
                    key.append(STAR)
            v = data.get(tuple(key), 0)
            if v:
                coeffs[jp] = v
        comps.append(FinSuppSeq(coeffs))
    return AbsoluteTuple(p, n, tuple(comps))


def composite_membership(t: CompositeTuple) -> tuple[bool, list[CompositeCheck]]:
    """Delegate each prime-part slice to :func:`km_ties_check`."""
    checks = []
    for p, f, dg in composite_checks(t.m):
        sl = _slice(t, p, f, dg)
        checks.append(CompositeCheck(p, f, dg, sl, km_ties_check(sl)))
    return all(c.report.ok for c in checks), checks


def inversion_formula_m(m: int, reps: Mapping[int, Sequence]) -> list[Fraction]:
    """Preimage in ``Q C_m`` of ``(a_d(zeta_d))_{d | m}`` given representatives ``a_d = (a_{d,i})_{i in Z/m}``.

    Coefficient of ``c^l``: ``(1/m) sum_{d | m} d sum_{k in Z/(m/d')} a_{d, l - k d'}
    prod_{p | d, p not | k} (-1/p) prod_{p | d, p | k} (1 - 1/p)``.
    """
    out = []
    divs = divisors(m)
    for d in divs:
        if len(reps[d]) != m:
            raise ValueError(f"representative for d={d} must have {m} entries")
    weights = {}
    for d in divs:
        dp = 1
        for p, e in factorize(d):
            dp *= p ** max(e - 1, 0)
        ws = []
        for k in range(m // dp):
            w = Fraction(d)
            for p in prime_divisors(d):
                w *= (1 - Fraction(1, p)) if k % p == 0 else Fraction(-1, p)
            ws.append(w)
        weights[d] = (dp, ws)
    for l in range(m):
        acc = Fraction(0)
        for d in divs:
            dp, ws = weights[d]
            a = reps[d]
            for k, w in enumerate(ws):
                v = a[(l - k * dp) % m]
                if v:
                    acc += w * v
        out.append(acc / m)
    return out


def composite_membership_oracle(t: CompositeTuple) -> bool:
    """Integrality of the preimage under :func:`inversion_formula_m`."""
    m = t.m
    reps = {}
    for d in divisors(m):
        c = t.element(d).coeffs
        reps[d] = list(c) + [0] * (m - len(c))
    return all(x.denominator == 1 for x in inversion_formula_m(m, reps))
