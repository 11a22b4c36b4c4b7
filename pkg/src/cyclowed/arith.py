"""Small integer helpers: primes, valuations, digits, divisors."""

from __future__ import annotations

from functools import lru_cache
from math import comb, gcd


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@lru_cache(maxsize=None)
def factorize(m: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``m >= 1`` as ``((p, e), ...)`` with increasing ``p``."""
    if m < 1:
        raise ValueError(f"cannot factor {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def prime_divisors(m: int) -> list[int]:
    return [p for p, _ in factorize(m)]


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q = p**n``, ``n >= 1``, or None."""
    if q < 2:
        return None
    f = factorize(q)
    return f[0] if len(f) == 1 else None


def euler_phi(m: int) -> int:
    out = m
    for p, _ in factorize(m):
        out = out // p * (p - 1)
    return out


def vp(k: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if k == 0:
        raise ValueError("valuation of 0 is infinite")
    k = abs(k)
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def p_part(k: int, p: int) -> int:
    """``p ** v_p(k)``; written ``k[p]`` in the literature on cyclotomic orders."""
    if k == 0:
        raise ValueError("p-part of 0 is undefined")
    return p ** vp(k, p)


def p_prime_part(k: int, p: int) -> int:
    return abs(k) // p_part(k, p)


def digits(j: int, p: int, length: int | None = None) -> list[int]:
    """Base-p digits of ``j >= 0``, least significant first."""
    if j < 0:
        raise ValueError("digits of a negative number")
    out = []
    while j:
        j, r = divmod(j, p)
        out.append(r)
    if length is not None:
        out.extend([0] * (length - len(out)))
    return out


def digit_sum(j: int, p: int) -> int:
    return sum(digits(j, p))


def divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def units(m: int) -> list[int]:
    """Representatives in ``[1, m]`` of ``(Z/m)^*``, increasing (``[1]`` for m = 1)."""
    return [i for i in range(1, m + 1) if gcd(i, m) == 1] if m > 1 else [1]


def mod_inverse(a: int, m: int) -> int:
    """Least nonnegative representative of ``a^{-1}`` mod m."""
    return pow(a, -1, m) if m > 1 else 0


def binomial(a: int, b: int) -> int:
    """Binomial coefficient, zero outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)
