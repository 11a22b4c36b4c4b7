from fractions import Fraction

import pytest

from cyclowed.cyclotomic import CycElement
from cyclowed.ties import (
    Congruence,
    IdealModulus,
    IntegerModulus,
    TAdicModulus,
    TieSystem,
)

Z = CycElement.zeta


def small_system():
    # x_1 == 2 x_0 (mod 9), x_2 == x_0 - x_1 (mod 3)
    return TieSystem(
        ("x_0", "x_1", "x_2"),
        (
            Congruence("x_1", IntegerModulus(9), (("x_0", 2),)),
            Congruence("x_2", IntegerModulus(3), (("x_0", 1), ("x_1", -1))),
        ),
    )


def test_integer_system():
    s = small_system()
    assert s.is_triangular() and len(s) == 2
    assert s.accepts([1, 11, 2])
    assert s.accepts({"x_0": 4, "x_1": -1, "x_2": 5})
    bad = s.violations([1, 3, 1])
    assert [v.index for v in bad] == [0]
    assert bad[0].residual == 1
    with pytest.raises(ValueError):
        s.accepts([1, 2])


def test_integer_modulus_rejects_fractions():
    assert IntegerModulus(4).residue(-1) == 3
    with pytest.raises(ValueError):
        IntegerModulus(4).contains(Fraction(1, 2))


def test_non_triangular_detected():
    s = TieSystem(("a", "b"), (Congruence("a", IntegerModulus(2), (("b", 1),)),))
    assert not s.is_triangular()


def test_unknown_names_rejected():
    with pytest.raises(ValueError):
        TieSystem(("a",), (Congruence("b", IntegerModulus(2)),))
    with pytest.raises(ValueError):
        TieSystem(("a",), (Congruence("a", IntegerModulus(2), (("c", 1),)),))
    with pytest.raises(ValueError):
        TieSystem(("a", "a"), ())


def test_t_adic_modulus():
    m = TAdicModulus(3, 2, 3)
    t = 1 - Z(9)
    assert m.contains(t**3) and m.contains(3 * t)
    assert not m.contains(t**2)
    assert m.contains(0)
    assert m.describe() == "t^3"


def test_ideal_modulus_global_and_local():
    g = CycElement.rational(5, 2) * (1 - Z(5))
    glob = IdealModulus(g)
    loc = IdealModulus(g, local_prime=5)
    assert glob.contains(g * Z(5, 3))
    assert not glob.contains(1 - Z(5))
    # 2 is a unit once localized at 5
    assert loc.contains(1 - Z(5))
    assert not loc.contains(CycElement.one(5))
    with pytest.raises(ValueError):
        IdealModulus(CycElement.zero(5))


def test_json_roundtrip_all_modulus_kinds():
    t = 1 - Z(9)
    s = TieSystem(
        ("a", "b", "c", "d"),
        (
            Congruence("b", TAdicModulus(3, 2, 4), (("a", t),)),
            Congruence("c", IntegerModulus(27), (("a", Fraction(1, 2)), ("b", -3))),
            Congruence("d", IdealModulus(t * t, local_prime=3), (("c", Z(9, 4)),)),
        ),
    )
    back = TieSystem.from_json(s.dumps())
    assert back == s
    data = s.to_json()
    assert data["congruences"][0]["modulus_valuation"] == 4
    assert data["congruences"][1]["modulus"] == {"kind": "integer", "value": 27}
    with pytest.raises(ValueError):
        TieSystem.from_json({"order": ["a"], "congruences": [{"target": "a", "form": [], "modulus": {"kind": "bogus"}}]})
