import random

import pytest

from qca.laurent import (HalfLaurent, ONE, ZERO, V, VINV, decompose_antisymmetric, divide_exact,
                         quantum_binomial, quantum_factorial, quantum_integer, vhalf, vpow)


def rand_poly(rng, half=False, span=4):
    step = 1 if half else 2
    return HalfLaurent({rng.randrange(-span, span + 1) * step: rng.randint(-3, 3) for _ in range(4)})


def test_quantum_integers():
    assert quantum_integer(1) == ONE
    assert quantum_integer(2) == V + VINV
    assert quantum_integer(3) == vpow(2) + 1 + vpow(-2)
    assert quantum_integer(0) == ZERO
    with pytest.raises(ValueError):
        quantum_integer(-1)


def test_quantum_binomials():
    assert quantum_binomial(2, 1) == V + VINV
    assert quantum_binomial(4, 2) == vpow(4) + vpow(2) + 2 + vpow(-2) + vpow(-4)
    assert quantum_binomial(5, 0) == ONE
    with pytest.raises(ValueError):
        quantum_binomial(2, 3)


def test_binomials_specialize_and_are_bar_symmetric():
    from math import comb
    for k in range(8):
        for l in range(k + 1):
            q = quantum_binomial(k, l)
            assert q.at_one() == comb(k, l)
            assert q.bar() == q
            assert all(c > 0 for c in q.terms.values())


def test_decompose_antisymmetric_examples():
    assert decompose_antisymmetric(VINV - V) == VINV
    assert decompose_antisymmetric(ZERO) == ZERO
    f = 2 * vpow(-3) - 2 * vpow(3) + VINV - V
    assert decompose_antisymmetric(f) == 2 * vpow(-3) + VINV
    with pytest.raises(ValueError):
        decompose_antisymmetric(V)


def test_decompose_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        h = HalfLaurent({-2 * rng.randint(1, 6): rng.randint(-5, 5) for _ in range(3)})
        assert decompose_antisymmetric(h - h.bar()) == h


def test_ring_laws_and_bar():
    rng = random.Random(7)
    for _ in range(200):
        f, g, h = (rand_poly(rng, half=True) for _ in range(3))
        assert f + g == g + f
        assert f * g == g * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert f * ONE == f
        assert (f * g).bar() == f.bar() * g.bar()
        assert (f + g).bar() == f.bar() + g.bar()
        assert f.bar().bar() == f


def test_half_powers():
    assert vhalf(1) * vhalf(1) == V
    assert not vhalf(1).has_integer_exponents()
    assert str(vhalf(3)) == "v^(3/2)"


def test_no_zero_coefficients_stored():
    f = V - V
    assert f.is_zero() and f.terms == {}
    assert HalfLaurent({2: 0, 0: 1}).terms == {0: 1}


def test_exact_division():
    rng = random.Random(11)
    for _ in range(100):
        f, g = rand_poly(rng), rand_poly(rng)
        if g.is_zero():
            continue
        assert divide_exact(f * g, g) == f
    with pytest.raises(ValueError):
        divide_exact(ONE, V + 1)
    with pytest.raises(ZeroDivisionError):
        divide_exact(ONE, ZERO)


def test_factorial_big_integers():
    # coefficients exceed 64 bits
    big = quantum_factorial(30)
    assert max(big.terms.values()) > 2 ** 63
    assert divide_exact(big, quantum_factorial(29)) == quantum_integer(30)


def test_json_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        f = rand_poly(rng, half=True) * (10 ** 30)
        data = f.to_json()
        assert all(isinstance(c, str) for _, c in data)
        assert [e for e, _ in data] == sorted(e for e, _ in data)
        assert HalfLaurent.from_json(data) == f
