import json
import math
import random
from fractions import Fraction

import pytest

from vvmf.exactnum import (
    CycNum,
    bernoulli,
    cyclotomic_poly,
    euler_phi,
    format_rational,
    parse_rational,
)


def bernoulli_oracle(n):
    # double-sum formula, independent of the recurrence in the implementation
    acc = Fraction(0)
    for k in range(n + 1):
        inner = Fraction(0)
        for j in range(k + 1):
            inner += (-1) ** j * math.comb(k, j) * Fraction(j**n if n else 1)
        acc += inner / (k + 1)
    return acc


def test_cyclotomic_trivial_identities():
    z3 = CycNum.zeta(3)
    assert z3 + z3 * z3 == CycNum.from_rational(-1)
    i = CycNum.zeta(4)
    assert (1 + i) * (1 - i) == CycNum.from_rational(2)


def test_lift_then_lower_is_identity():
    z3 = CycNum.zeta(3)
    lifted = z3.lift(12)
    assert lifted == CycNum.zeta(12, 4)
    back = lifted.reduce_conductor()
    assert back.n == 3 and back == z3


def test_reduce_conductor_finds_minimal_field():
    # zeta_6 = 1 + zeta_3
    z6 = CycNum.zeta(6)
    red = z6.reduce_conductor()
    assert red.n == 3
    assert red == CycNum.zeta(3) + 1
    # rationals drop all the way to conductor 1
    r = CycNum(12, [Fraction(7, 2)] + [0] * (euler_phi(12) - 1))
    assert r.reduce_conductor().n == 1


def test_is_rational_matches_power_basis_coordinates():
    z = CycNum.zeta(5)
    assert not z.is_rational()
    prod = z * z.inverse()
    assert prod.is_rational() and prod.rational_value() == 1
    x = CycNum.zeta(3) + CycNum.zeta(3, 2)  # equals -1 after reduction
    assert x.is_rational() and x.rational_value() == -1


def test_conjugation_inverts_roots_of_unity():
    z = CycNum.zeta(5)
    assert z.conjugate() == CycNum.zeta(5, 4)
    assert z.conjugate().conjugate() == z
    a = 2 + 3 * CycNum.zeta(7)
    b = 1 - CycNum.zeta(7, 3)
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()


def test_division_errors_on_zero():
    with pytest.raises(ZeroDivisionError):
        CycNum.one() / CycNum.zero()


def random_cyc(rng, n):
    return CycNum(n, [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(euler_phi(n))])


@pytest.mark.parametrize("conductor", [1, 3, 4, 5, 12])
def test_field_axioms_random(conductor):
    rng = random.Random(1000 + conductor)
    for _ in range(12):
        a, b, c = (random_cyc(rng, conductor) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a + (-a) == CycNum.zero()
        if not a.is_zero():
            assert a * a.inverse() == CycNum.one()
            assert (b / a) * a == b


def test_cross_conductor_arithmetic_lands_in_lcm():
    x = CycNum.zeta(3) + CycNum.zeta(4)
    assert x.n == 12
    assert x - CycNum.zeta(4) == CycNum.zeta(3)


def test_equality_is_conductor_independent():
    one_at_12 = CycNum(12, [1] + [0] * (euler_phi(12) - 1))
    assert one_at_12 == CycNum.one()
    assert hash(one_at_12) == hash(CycNum.one())


def test_rational_text_round_trip():
    for s in ["3/4", "-7", "0", "22/7", "-5/9"]:
        assert format_rational(parse_rational(s)) == s


def test_cycnum_json_round_trip():
    rng = random.Random(7)
    for n in (1, 3, 8, 12):
        x = random_cyc(rng, n)
        assert CycNum.from_json(json.loads(json.dumps(x.to_json()))) == x


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_bernoulli_trivial_and_derived():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    for n in range(0, 15):
        assert bernoulli(n) == bernoulli_oracle(n), n
