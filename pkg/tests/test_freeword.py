import random

import pytest

from qca.freeword import (FreeElement, e_prime, embed, generator, generator_norms, kashiwara_form,
                          pbw_duality, power, x_interval)
from qca.laurent import ONE, ONE_MINUS_VM2, V, VINV, ZERO, vpow
from qca.roota import Context
from qca.shuffle import ShuffleElement, dual_generator_shuffle

E = FreeElement.gen


def test_x_interval_examples():
    ctx = Context(3)
    assert x_interval(ctx, 1, 1) == E(1)
    assert x_interval(ctx, 1, 2) == E(2) * E(1) - (E(1) * E(2)).scale(VINV)
    want = ShuffleElement({(1, 3, 2): ONE, (3, 1, 2): ONE}).scale(ONE_MINUS_VM2 ** 2)
    assert embed(x_interval(ctx, 1, 3)) == want
    with pytest.raises(ValueError):
        x_interval(ctx, 2, 4)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_x_interval_embeds_to_scaled_dual_generator(n):
    ctx = Context(n)
    for k in range(1, ctx.size + 1):
        i, j = ctx.intervals[k - 1]
        want = dual_generator_shuffle(ctx, k).scale(ONE_MINUS_VM2 ** (j - i))
        assert embed(x_interval(ctx, i, j)) == want


def test_e_prime_examples():
    assert e_prime(1, E(1)) == FreeElement.one()
    assert e_prime(2, E(1)).is_zero()
    assert e_prime(1, E(1) * E(2)) == E(2)


def test_e_prime_leibniz():
    rng = random.Random(4)
    for _ in range(50):
        x = FreeElement({tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3))): ONE})
        y = FreeElement({tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3))): V})
        (wx,) = x.terms
        for i in range(1, 5):
            shift = sum(2 if a == i else (-1 if abs(a - i) == 1 else 0) for a in wx)
            assert e_prime(i, x * y) == e_prime(i, x) * y + (x * e_prime(i, y)).scale(vpow(shift))


def test_form_examples():
    ctx = Context(3)
    assert kashiwara_form(E(1), E(1)) == ONE
    x12 = x_interval(ctx, 1, 2)
    assert kashiwara_form(x12, x12) == ONE_MINUS_VM2
    assert kashiwara_form(E(1), E(2)) == ZERO


def test_form_is_symmetric_and_adjoint():
    rng = random.Random(9)
    words = [tuple(rng.randint(1, 3) for _ in range(4)) for _ in range(30)]
    for u in words:
        for w in words[:10]:
            x, y = FreeElement({u: ONE}), FreeElement({w: ONE})
            assert kashiwara_form(x, y) == kashiwara_form(y, x)
    for u in words[:10]:
        for i in (1, 2, 3):
            tail = u[1:]
            x = FreeElement({u: ONE})
            assert kashiwara_form(e_prime(i, x), FreeElement({tail: ONE})) == \
                kashiwara_form(x, E(i) * FreeElement({tail: ONE}))


def test_form_ignores_serre_representatives():
    rng = random.Random(12)
    serre = power(E(1), 2) * E(2) - (E(1) * E(2) * E(1)).scale(V + VINV) + E(2) * power(E(1), 2)
    comm = E(1) * E(3) - E(3) * E(1)
    for _ in range(30):
        left = FreeElement({tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 1))): ONE})
        right = FreeElement({tuple(rng.randint(1, 3) for _ in range(rng.randint(0, 1))): ONE})
        for rel in (serre, comm):
            y = left * rel * right
            for t in range(20):
                x = FreeElement({tuple(rng.choice((1, 1, 2, 3)) for _ in range(len(next(iter(y.terms))))): ONE})
                assert kashiwara_form(x, y) == ZERO


@pytest.mark.parametrize("n", [3, 5, 7])
def test_generator_norms(n):
    for _, got, want in generator_norms(Context(n)):
        assert got == want


def test_distinct_generators_orthogonal():
    ctx = Context(5)
    for k in range(1, 11):
        for l in range(1, 11):
            if k != l:
                assert kashiwara_form(generator(ctx, k), generator(ctx, l)) == ZERO


def test_pbw_duality_up_to_height_four():
    rows = pbw_duality(Context(5), 4)
    assert len(rows) > 50
    assert all(ok for *_, ok in rows)
