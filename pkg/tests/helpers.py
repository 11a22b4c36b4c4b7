"""Shared test helpers: a polynomial parser and random generators."""

import random
import re
from fractions import Fraction

from cyclowed.absolute import AbsoluteTuple, FinSuppSeq, absolute_apply
from cyclowed.arith import euler_phi
from cyclowed.cyclotomic import CycElement

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(z(?:\^(\d+))?)?")


def cyc(m: int, text: str) -> CycElement:
    """Parse ``"2 + 2z - 3z^4"`` as an element of Q(zeta_m)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    acc = CycElement.zero(m)
    pos = 0
    while pos < len(s):
        mt = _TERM.match(s, pos)
        if not mt or mt.end() == pos:
            raise ValueError(f"cannot parse {text!r} at {s[pos:]!r}")
        sign, coef, mono, exp = mt.groups()
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        k = 0 if not mono else int(exp or 1)
        acc = acc + c * CycElement.zeta(m, k)
        pos = mt.end()
    return acc



def rand_cyc(r: random.Random, m: int, lo: int = -2, hi: int = 2) -> CycElement:
    return CycElement(m, [r.randint(lo, hi) for _ in range(euler_phi(m))])


def combo(r: random.Random, rows, m: int, lo: int = -2, hi: int = 2, perturb: float = 0.5):
    """Random integral combination of rows, with one entry perturbed with probability ``perturb``."""
    k = len(rows[0])
    out = [CycElement.zero(m) for _ in range(k)]
    for row in rows:
        c = rand_cyc(r, m, lo, hi)
        out = [a + c * b for a, b in zip(out, row)]
    if r.random() < perturb:
        j = r.randrange(k)
        out[j] = out[j] + rand_cyc(r, m, -1, 1)
    return out


def rand_absolute(r: random.Random, p: int, n: int) -> AbsoluteTuple:
    """Image of a random group-ring element, perturbed in one coordinate half of the time."""
    t = absolute_apply(p, n, [r.randint(-3, 3) for _ in range(p**n)])
    if r.random() < 0.5:
        comps = [c.support for c in t.components]
        i = r.randint(0, n)
        j = r.randrange(euler_phi(p**i))
        comps[i][j] = comps[i].get(j, 0) + r.choice([1, -1, p, -p, p * p])
        t = AbsoluteTuple(p, n, tuple(FinSuppSeq(c) for c in comps))
    return t
