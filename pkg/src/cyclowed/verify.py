"""Seeded randomized property suites, shared by the CLI and the tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .absolute import FinSuppSeq, t_operator
from .vandermonde import PointTuple, verify_identities
from .wedderburn import (
    fourier_inversion_holds,
    q_polynomial_identities,
    vandermonde_det_square,
    wedderburn_diagonalize,
)

__all__ = [
    "SuiteResult",
    "SUITES",
    "random_points",
    "random_sequence",
    "run_suite",
    "toperator_composition_i",
    "toperator_composition_ii",
    "toperator_evaluation",
    "toperator_support",
    "toperator_telescoping",
]


@dataclass
class SuiteResult:
    suite: str
    checks: dict = field(default_factory=dict)  # name -> [passed, total]
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail=None):
        c = self.checks.setdefault(name, [0, 0])
        c[1] += 1
        if ok:
            c[0] += 1
        elif len(self.failures) < 20:
            self.failures.append({"check": name, "detail": detail})

    @property
    def ok(self) -> bool:
        return all(a == b for a, b in self.checks.values())

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "ok": self.ok,
            "checks": {k: {"passed": a, "total": b} for k, a_b in self.checks.items() for a, b in [a_b]},
            "failures": self.failures,
        }


def random_points(rng: random.Random, m: int) -> PointTuple:
    """m distinct rationals with small numerators and denominators."""
    seen: set[Fraction] = set()
    while len(seen) < m:
        seen.add(Fraction(rng.randint(-20, 20), rng.randint(1, 6)))
    vals = list(seen)
    rng.shuffle(vals)
    return PointTuple(vals)


def random_sequence(rng: random.Random, lo: int = -40, hi: int = 40, size: int = 6) -> FinSuppSeq:
    return FinSuppSeq({rng.randint(lo, hi): rng.randint(-5, 5) for _ in range(rng.randint(0, size))})


def toperator_composition_i(p, a, b, c, d, s, t, x) -> bool:
    lhs = t_operator(a, s, b, p, t_operator(c, t, d, p, x))
    return lhs == t_operator(a, d - b + t, b, p, x).scale(p ** (d - b - s))


def toperator_composition_ii(p, a, b, d, s, x) -> bool:
    return t_operator(a, s, b, p, t_operator(0, 0, d, p, x)) == t_operator(a, s, b, p, x)


def toperator_telescoping(p, m, l, a, x) -> bool:
    lhs = FinSuppSeq()
    for i in range(l):
        inner = t_operator(0, 0, m - i, p, x) - t_operator(1, 0, m - i, p, x)
        lhs = lhs + t_operator(a, l - 1 - i, m - l, p, inner).scale(p ** (l - 1 - i))
    rhs = t_operator(a, 0, m - l, p, x) - t_operator(a, l, m - l, p, x).scale(p**l)
    return lhs == rhs


def toperator_evaluation(p, l, x) -> bool:
    """``x * zeta_{p^l} = ((T^{0,0}_l - T^{1,0}_l) x) * zeta_{p^l}``."""
    y = t_operator(0, 0, l, p, x) - t_operator(1, 0, l, p, x)
    return x.evaluate(p**l) == y.evaluate(p**l)


def toperator_support(p, l, s, x) -> bool:
    y = t_operator(0, s, l, p, x) - t_operator(1, s, l, p, x)
    bound = (p - 1) * p ** (l - 1)
    return all(0 <= j < bound for j, _ in y.items())


def _suite_vandermonde(rng, trials, res):
    for m in range(1, 8):
        for _ in range(trials):
            pts = random_points(rng, m)
            rep = verify_identities(pts)
            for name, ok in rep.as_dict().items():
                res.record(name, ok, {"m": m, "points": [str(v) for v in pts]})


def _suite_qpascal(rng, trials, res):
    for m in range(1, 9):
        for name, ok in q_polynomial_identities(m).items():
            res.record(name, ok, {"m": m})
    for m in range(1, 17):
        try:
            wedderburn_diagonalize(m)
            ok = True
        except AssertionError:
            ok = False
        res.record("diagonalization", ok, {"m": m})
        res.record("Fourier inversion", fourier_inversion_holds(m), {"m": m})
    for m in range(1, 13):
        got, want = vandermonde_det_square(m)
        res.record("det(V)^2 = +-m^m", got == want, {"m": m})


def _grid(p: int, top: int = 4):
    r = range(top + 1)
    for a in r:
        for b in r:
            for c in r:
                for d in r:
                    for s in r:
                        if b - a <= d - c <= b + s <= d:
                            yield a, b, c, d, s


def _suite_toperators(rng, trials, res):
    for p in (2, 3):
        cells = list(_grid(p))
        for _ in range(trials):
            x = random_sequence(rng, -p**4, 2 * p**4)
            a, b, c, d, s = rng.choice(cells)
            t = rng.randint(0, 4)
            res.record("composition (i)", toperator_composition_i(p, a, b, c, d, s, t, x),
                       {"p": p, "abcdst": [a, b, c, d, s, t]})
            b2, s2 = rng.randint(0, 4), rng.randint(0, 4)
            d2 = rng.randint(b2 + s2, b2 + s2 + 2)
            a2 = rng.randint(0, 4)
            res.record("composition (ii)", toperator_composition_ii(p, a2, b2, d2, s2, x),
                       {"p": p, "abds": [a2, b2, d2, s2]})
            m = rng.randint(1, 4)
            l = rng.randint(1, m)
            a3 = rng.randint(0, 4)
            res.record("telescoping", toperator_telescoping(p, m, l, a3, x), {"p": p, "m": m, "l": l, "a": a3})
            l4 = rng.randint(0, 3)
            res.record("evaluation", toperator_evaluation(p, l4, x), {"p": p, "l": l4})
            l5, s5 = rng.randint(1, 4), rng.randint(0, 4)
            res.record("support", toperator_support(p, l5, s5, x), {"p": p, "l": l5, "s": s5})


SUITES = {
    "vandermonde": _suite_vandermonde,
    "qpascal": _suite_qpascal,
    "toperators": _suite_toperators,
}


def run_suite(name: str, trials: int = 50, seed: int = 0) -> list[SuiteResult]:
    """Run one suite (or ``"all"``) with a dedicated RNG per suite."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise ValueError(f"unknown suite {nm!r}")
        res = SuiteResult(nm)
        SUITES[nm](random.Random(f"{seed}:{nm}"), trials, res)
        out.append(res)
    return out
