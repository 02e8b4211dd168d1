import itertools
import random
import time

import pytest

from qca.laurent import HalfLaurent, ONE, V, VINV, vpow
from qca.roota import Context
from qca.shuffle import (ShuffleBoundError, ShuffleElement, dual_generator_shuffle, euler_count,
                         interval_shuffle, is_sigma_selfdual)


def _pair(a, b):
    return 2 if a == b else (-1 if abs(a - b) == 1 else 0)


def naive_shuffle(x: dict, y: dict) -> dict:
    """Plain-Python reference: sum over position subsets of the left word."""
    out = {}
    for u, c in x.items():
        for w, d in y.items():
            L = len(u) + len(w)
            for pos in itertools.combinations(range(L), len(u)):
                word = [None] * L
                rest = [t for t in range(L) if t not in pos]
                for p, a in zip(pos, u):
                    word[p] = a
                for p, b in zip(rest, w):
                    word[p] = b
                e = sum(_pair(a, b) for p, a in zip(pos, u) for q, b in zip(rest, w) if p < q)
                key = tuple(word)
                out[key] = out.get(key, HalfLaurent()) + c * d * vpow(e)
    return {k: c for k, c in out.items() if c}


def rand_elem(rng, n, length, terms=3):
    return {tuple(rng.randint(1, n) for _ in range(length)):
            HalfLaurent({2 * rng.randint(-2, 2): rng.randint(-3, 3) or 1}) for _ in range(terms)}


def test_orientation_examples():
    w1, w2 = ShuffleElement.word(1), ShuffleElement.word(2)
    assert w1 * w2 == ShuffleElement({(2, 1): ONE, (1, 2): VINV})
    assert w2 * w1 == ShuffleElement({(1, 2): ONE, (2, 1): VINV})
    unit = ShuffleElement({(): ONE})
    assert unit * w1 == w1 and w1 * unit == w1


def test_kernel_matches_naive_reference():
    rng = random.Random(17)
    for _ in range(60):
        x = rand_elem(rng, 5, rng.randint(0, 4))
        y = rand_elem(rng, 5, rng.randint(0, 4))
        assert (ShuffleElement(x) * ShuffleElement(y)).terms == naive_shuffle(x, y)


def test_associativity_up_to_height_six():
    rng = random.Random(2)
    for _ in range(40):
        lens = [rng.randint(1, 2) for _ in range(3)]
        x, y, z = (ShuffleElement(rand_elem(rng, 4, k, 2)) for k in lens)
        assert (x * y) * z == x * (y * z)


def test_degree_is_additive():
    x = ShuffleElement({(1, 2): ONE, (2, 1): V})
    y = ShuffleElement({(2, 3, 3): V, (3, 2, 3): ONE})
    (dx,), (dy,) = x.letter_degrees(), y.letter_degrees()
    assert (x * y).letter_degrees() == {tuple(sorted(dx + dy))}


def _naive_alternating(i, j):
    out = set()
    for perm in itertools.permutations(range(i, j + 1)):
        pos = {a: t for t, a in enumerate(perm)}
        ok = all(pos[a] > pos[a + 1] for a in range(i, j) if a % 2 == 0)
        ok = ok and all(pos[a] > pos[a - 1] for a in range(i + 1, j + 1) if a % 2 == 0)
        if ok:
            out.add(perm)
    return out


@pytest.mark.parametrize("i,j", [(1, 1), (1, 2), (1, 3), (2, 5), (3, 7), (1, 6), (2, 4)])
def test_dual_generator_words_follow_permutation_rule(i, j):
    assert set(interval_shuffle(i, j).words()) == _naive_alternating(i, j)


def test_dual_generator_examples():
    ctx = Context(3)
    assert dual_generator_shuffle(ctx, 1) == ShuffleElement.word(1)
    assert interval_shuffle(1, 2) == ShuffleElement.word(1, 2)
    assert interval_shuffle(1, 3) == ShuffleElement({(1, 3, 2): ONE, (3, 1, 2): ONE})
    with pytest.raises(ValueError):
        dual_generator_shuffle(ctx, 7)


def test_euler_numbers():
    t = time.perf_counter()
    counts = [len(interval_shuffle(1, h)) for h in range(1, 8)]
    assert counts == [1, 1, 2, 5, 16, 61, 272]
    assert [euler_count(h) for h in (0, 3, 6)] == [1, 5, 272]
    assert time.perf_counter() - t < 1.0


def test_sigma_selfduality():
    ctx = Context(5)
    assert all(is_sigma_selfdual(dual_generator_shuffle(ctx, k)) for k in range(1, 11))
    assert not is_sigma_selfdual(ShuffleElement({(1, 2): ONE + V}))
    with pytest.raises(ValueError):
        is_sigma_selfdual(ShuffleElement({(1,): ONE, (2,): V}))


def _word_power(*letters):
    out = ShuffleElement({(): ONE})
    for a in letters:
        out = out * ShuffleElement.word(a)
    return out


@pytest.mark.parametrize("i,j", [(1, 2), (2, 1), (3, 4), (4, 3)])
def test_serre_relations_in_embedding(i, j):
    rel = (_word_power(i, i, j) - _word_power(i, j, i).scale(V + VINV) + _word_power(j, i, i))
    assert rel.is_zero()


@pytest.mark.parametrize("i,j", [(1, 3), (2, 5), (1, 4)])
def test_distant_letters_commute_in_embedding(i, j):
    assert _word_power(i, j) == _word_power(j, i)


def test_word_length_bound():
    x = ShuffleElement.word(*([1] * 8))
    with pytest.raises(ShuffleBoundError):
        x * x


def test_big_coefficients_leave_int64():
    big = HalfLaurent({0: 2 ** 61, 2: -(2 ** 60)})
    x = {(1,): big, (2,): big}
    prod = naive_shuffle(naive_shuffle(x, x), x)
    got = ShuffleElement(x) * ShuffleElement(x) * ShuffleElement(x)
    assert got.terms == prod
    assert max(abs(c) for f in prod.values() for c in f.terms.values()) > 2 ** 63
