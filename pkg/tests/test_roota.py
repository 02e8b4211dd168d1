import pytest

from qca.roota import (Context, a_coeff, cartan_form, explicit_positive_roots, height,
                       interval_root, interval_sums, module_intervals, norm, simple_root)


def test_cartan_form_examples():
    a1, a2, a3 = (simple_root(3, i) for i in (1, 2, 3))
    assert cartan_form(a1, a2) == -1
    s = tuple(x + y for x, y in zip(a1, a2))
    assert cartan_form(s, s) == 2
    assert cartan_form(a1, a3) == 0
    with pytest.raises(ValueError):
        cartan_form((1, 0), (1, 0, 0))


def test_beta_sequence_rank_three():
    ctx = Context(3)
    assert [ctx.intervals[k] for k in range(6)] == [(1, 1), (3, 3), (1, 3), (2, 3), (1, 2), (2, 2)]
    assert ctx.beta(1) == (1, 0, 0)


def test_generator_order_rank_five():
    ctx = Context(5)
    assert [ctx.label(k) for k in range(1, 11)] == [
        "y1", "y3", "y5", "z2", "z4", "z1", "z3", "z5", "y2", "y4"]


@pytest.mark.parametrize("n", [5, 7, 9, 11])
def test_betas_match_listed_roots(n):
    ctx = Context(n)
    assert set(ctx.betas) == explicit_positive_roots(n)
    assert len(set(ctx.betas)) == 2 * n
    assert all(cartan_form(b, b) == 2 for b in ctx.betas)


@pytest.mark.parametrize("n,variant", [(5, "full"), (7, "full"), (9, "full"), (8, "qprime"), (10, "qprime")])
def test_generator_degrees_match_module_intervals(n, variant):
    ctx = Context(n, variant)
    table = module_intervals(ctx)
    assert table is not None
    for k in range(1, ctx.size + 1):
        assert ctx.intervals[k - 1] == table[ctx.labels[k - 1]]


def test_norm_examples():
    assert norm(simple_root(5, 2)) == 0
    assert norm(interval_root(5, 1, 2)) == -1
    assert norm(interval_root(5, 1, 3)) == -2


def test_interval_sums():
    ctx = Context(5)
    s, o, e = interval_sums(ctx, 1, 1)
    assert s == o == simple_root(5, 1) and e == (0,) * 5
    assert interval_sums(ctx, 2, 1) == ((0,) * 5,) * 3
    for i in range(1, 6):
        for j in range(i, 6):
            s, o, e = interval_sums(ctx, i, j)
            assert s == tuple(x + y for x, y in zip(o, e))
            # half the square is integral and equals the closed count
            assert cartan_form(s, s) % 2 == 0


def test_a_coeff():
    assert a_coeff(1, 3) == -1
    assert a_coeff(1, 5) == -2
    assert a_coeff(2, 4) == -1
    with pytest.raises(ValueError):
        a_coeff(1, 2)


def _add(*rs):
    return tuple(map(sum, zip(*rs)))


@pytest.mark.parametrize("n", [5, 7])
def test_norm_difference_identity(n):
    ctx = Context(n)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            s, _, _ = interval_sums(ctx, i, j)
            sp, op, ep = interval_sums(ctx, i, j - 1)
            yj = ctx.degree("y", j)
            lhs = norm(s) - norm(sp) - norm(yj)
            rhs = cartan_form(yj, op if j % 2 == 0 else ep)
            assert lhs == rhs


@pytest.mark.parametrize("n", [5, 7, 9])
def test_y_pair_equals_z_pair(n):
    ctx = Context(n)
    for j in range(3, n + 1):
        lhs = _add(ctx.degree("y", j), ctx.degree("y", j - 1))
        rhs = _add(ctx.degree("z", j + 1), ctx.degree("z", j - 2))
        assert lhs == rhs


def test_invalid_contexts():
    with pytest.raises(ValueError):
        Context(4)
    with pytest.raises(ValueError):
        Context(5, "qprime")
    with pytest.raises(ValueError):
        Context(3, "other")


def test_height_total():
    ctx = Context(7)
    assert sum(height(b) for b in ctx.betas) == sum(height(b) for b in explicit_positive_roots(7))
    assert ctx.to_json()["generators"][0]["dual"] == "y1"
