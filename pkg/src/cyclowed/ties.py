"""Triangular congruence systems describing lattices inside a product of rings.

A :class:`Congruence` asserts ``target - sum(coeff * coord) in modulus`` for
named coordinates.  The modulus is one of

* ``TAdicModulus(p, n, k)``: the ideal ``t^k`` of Z_(p)[zeta_{p^n}],
* ``IntegerModulus(N)``: ``N Z`` for integer coordinates,
* ``IdealModulus(g)``: the principal ideal ``g Z[zeta_m]``, optionally
  localized at a prime.

A :class:`TieSystem` is triangular when each congruence only mentions
coordinates placed before its target in the declared order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .cyclotomic import CycElement, element_from_json, t_valuation

__all__ = [
    "Congruence",
    "IdealModulus",
    "IntegerModulus",
    "TAdicModulus",
    "TieSystem",
    "TieViolation",
]

Scalar = Union[int, Fraction, CycElement]


@dataclass(frozen=True)
class TAdicModulus:
    p: int
    n: int
    k: int

    def contains(self, value) -> bool:
        return t_valuation(value, self.p, self.n) >= self.k

    def describe(self) -> str:
        return f"t^{self.k}"

    def to_json(self) -> dict:
        return {"kind": "t-adic", "p": self.p, "n": self.n, "valuation": self.k}


@dataclass(frozen=True)
class IntegerModulus:
    N: int

    def contains(self, value) -> bool:
        v = value.to_rational() if isinstance(value, CycElement) else Fraction(value)
        if v.denominator != 1:
            raise ValueError(f"non-integral residue {v}")
        return v.numerator % self.N == 0

    def residue(self, value) -> int:
        v = value.to_rational() if isinstance(value, CycElement) else Fraction(value)
        return v.numerator % self.N

    def describe(self) -> str:
        return str(self.N)

    def to_json(self) -> dict:
        return {"kind": "integer", "value": self.N}


@dataclass(frozen=True)
class IdealModulus:
    """The ideal generated by ``generator``; with ``local_prime`` it is read in Z_(p)[zeta_m]."""

    generator: CycElement
    local_prime: int | None = None
    _inverse: CycElement = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.generator.is_zero():
            raise ValueError("zero generator")
        object.__setattr__(self, "_inverse", self.generator.inverse())

    def contains(self, value) -> bool:
        if not isinstance(value, CycElement):
            value = CycElement.rational(self.generator.m, value)
        q = value * self._inverse
        if self.local_prime is None:
            return q.is_integral()
        return q.is_p_integral(self.local_prime)

    def describe(self) -> str:
        return f"({self.generator})"

    def to_json(self) -> dict:
        out = {"kind": "ideal", "generator": self.generator.to_json()}
        if self.local_prime is not None:
            out["local_prime"] = self.local_prime
        return out


Modulus = Union[TAdicModulus, IntegerModulus, IdealModulus]


def _scalar_json(c):
    if isinstance(c, CycElement):
        return c.to_json()
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _modulus_from_json(d: dict) -> Modulus:
    kind = d["kind"]
    if kind == "t-adic":
        return TAdicModulus(d["p"], d["n"], d["valuation"])
    if kind == "integer":
        return IntegerModulus(d["value"])
    if kind == "ideal":
        return IdealModulus(element_from_json(d["generator"]), d.get("local_prime"))
    raise ValueError(f"unknown modulus kind {kind!r}")


def _scalar_from_json(c):
    if isinstance(c, dict):
        return element_from_json(c)
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class Congruence:
    target: str
    modulus: Modulus
    form: tuple[tuple[str, Scalar], ...] = ()

    def residual(self, coords: Mapping[str, Scalar]):
        """``target - sum(coeff * coord)``."""
        acc = coords[self.target]
        for name, c in self.form:
            x = coords[name]
            if x:
                acc = acc - c * x
        return acc

    def holds(self, coords: Mapping[str, Scalar]) -> bool:
        return self.modulus.contains(self.residual(coords))

    def to_json(self) -> dict:
        out = {"target": self.target, "form": [[n, _scalar_json(c)] for n, c in self.form]}
        if isinstance(self.modulus, TAdicModulus):
            out["modulus_valuation"] = self.modulus.k
        out["modulus"] = self.modulus.to_json()
        return out

    @classmethod
    def from_json(cls, d: dict) -> "Congruence":
        return cls(
            d["target"],
            _modulus_from_json(d["modulus"]),
            tuple((n, _scalar_from_json(c)) for n, c in d["form"]),
        )


@dataclass(frozen=True)
class TieViolation:
    index: int
    congruence: Congruence
    residual: object


@dataclass(frozen=True)
class TieSystem:
    order: tuple[str, ...]
    congruences: tuple[Congruence, ...]

    def __post_init__(self):
        pos = {name: i for i, name in enumerate(self.order)}
        if len(pos) != len(self.order):
            raise ValueError("duplicate coordinate names in order")
        for c in self.congruences:
            if c.target not in pos:
                raise ValueError(f"unknown target {c.target!r}")
            for name, _ in c.form:
                if name not in pos:
                    raise ValueError(f"unknown coordinate {name!r}")

    def is_triangular(self) -> bool:
        pos = {name: i for i, name in enumerate(self.order)}
        return all(pos[name] < pos[c.target] for c in self.congruences for name, _ in c.form)

    def violations(self, coords: Mapping[str, Scalar] | Sequence) -> list[TieViolation]:
        coords = self._as_mapping(coords)
        out = []
        for i, c in enumerate(self.congruences):
            r = c.residual(coords)
            if not c.modulus.contains(r):
                out.append(TieViolation(i, c, r))
        return out

    def accepts(self, coords: Mapping[str, Scalar] | Sequence) -> bool:
        coords = self._as_mapping(coords)
        return all(c.holds(coords) for c in self.congruences)

    def _as_mapping(self, coords):
        if isinstance(coords, Mapping):
            return coords
        if len(coords) != len(self.order):
            raise ValueError(f"expected {len(self.order)} coordinates, got {len(coords)}")
        return dict(zip(self.order, coords))

    def __len__(self):
        return len(self.congruences)

    def to_json(self) -> dict:
        return {"order": list(self.order), "congruences": [c.to_json() for c in self.congruences]}

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data) -> "TieSystem":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tuple(data["order"]), tuple(Congruence.from_json(c) for c in data["congruences"]))
