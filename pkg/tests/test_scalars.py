import random
from fractions import Fraction

import pytest

from rackkit.scalars import (
    DualScalar,
    format_dual,
    format_scalar,
    parse_dual,
    parse_scalar,
)


def rand_fraction(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 12))


def rand_dual(rng):
    return DualScalar(rand_fraction(rng), rand_fraction(rng))


def test_parse_scalar_canonical():
    assert parse_scalar("3") == Fraction(3)
    assert parse_scalar("-7/2") == Fraction(-7, 2)
    assert parse_scalar("0") == 0


@pytest.mark.parametrize("bad", ["2/4", "1/0", "1/-2", "x", "1.5", "", "3/6"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_format_round_trip():
    rng = random.Random(7)
    for _ in range(100):
        x = rand_fraction(rng)
        assert parse_scalar(format_scalar(x)) == x


def test_dual_format_round_trip():
    rng = random.Random(8)
    for _ in range(100):
        x = rand_dual(rng)
        y = parse_dual(format_dual(x))
        assert y == x
    assert parse_dual("1/2") == Fraction(1, 2)
    assert format_dual(DualScalar(1, 0)) == "1"


def test_dual_ring_axioms_randomized():
    # associativity and distributivity hold exactly on random triples
    rng = random.Random(2024)
    for _ in range(200):
        a, b, c = (rand_dual(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert a + DualScalar(0) == a
        assert a * DualScalar(1) == a
        assert a + (-a) == DualScalar(0)


def test_rational_ring_axioms_randomized():
    rng = random.Random(99)
    for _ in range(200):
        a, b, c = (rand_fraction(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_eps_squared_is_zero():
    eps = DualScalar(0, 1)
    assert eps * eps == DualScalar(0)
    a = DualScalar(Fraction(2), Fraction(3))
    b = DualScalar(Fraction(5), Fraction(-1))
    # (a + b eps)(c + d eps) = ac + (ad + bc) eps
    assert a * b == DualScalar(10, Fraction(2) * -1 + Fraction(3) * 5)


def test_mixed_arithmetic_with_fractions():
    a = DualScalar(Fraction(1, 2), Fraction(1))
    assert a + Fraction(1, 2) == DualScalar(1, 1)
    assert Fraction(2) * a == DualScalar(1, 2)
    assert a - 1 == DualScalar(Fraction(-1, 2), 1)
    assert bool(DualScalar(0, 0)) is False
    assert bool(DualScalar(0, 1)) is True
