import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from e8fold import quatoct as qo
from e8fold.exactfield import ONE, ZERO, TowerScalar
from tests.strategies import golden

quaternion = st.tuples(golden, golden, golden, golden)
small_int = st.integers(min_value=-3, max_value=3).map(TowerScalar.rational)
octonion = st.tuples(*[small_int] * 8)

TABLES = qo.enumerate_octonion_tables()


def basis(i, dim=8):
    return tuple(ONE if k == i else ZERO for k in range(dim))


@given(quaternion, quaternion, quaternion)
def test_quaternion_associative(a, b, c):
    assert qo.qmul(qo.qmul(a, b), c) == qo.qmul(a, qo.qmul(b, c))


@given(quaternion, quaternion)
def test_quaternion_norm_and_conj(a, b):
    assert qo.qnorm2(qo.qmul(a, b)) == qo.qnorm2(a) * qo.qnorm2(b)
    assert qo.qconj(qo.qmul(a, b)) == qo.qmul(qo.qconj(b), qo.qconj(a))


@given(quaternion)
def test_quaternion_inverse(a):
    if qo.qnorm2(a).is_zero():
        return
    assert qo.qmul(a, qo.qinv(a)) == qo.quat(1, 0, 0, 0)
    assert qo.qpow(a, 3) == qo.qmul(a, qo.qmul(a, a))


def test_hamilton_relations():
    i, j, k = basis(1, 4), basis(2, 4), basis(3, 4)
    assert qo.qmul(i, j) == k
    assert qo.qmul(j, i) == tuple(-x for x in k)
    assert qo.qmul(i, i) == qo.quat(-1, 0, 0, 0)


@given(octonion, octonion)
def test_default_octonions_alternative(x, y):
    t = qo.default_table()
    xx = qo.oct_mul(x, x, t)
    assert qo.oct_mul(x, qo.oct_mul(x, y, t), t) == qo.oct_mul(xx, y, t)
    assert qo.oct_mul(qo.oct_mul(y, x, t), x, t) == qo.oct_mul(y, xx, t)


@given(octonion, octonion)
def test_default_octonions_compose_and_conjugate(x, y):
    t = qo.default_table()
    xy = qo.oct_mul(x, y, t)
    assert qo.oct_norm2(xy) == qo.oct_norm2(x) * qo.oct_norm2(y)
    assert qo.oct_conj(xy) == qo.oct_mul(qo.oct_conj(y), qo.oct_conj(x), t)


@given(octonion, octonion, octonion)
def test_moufang_identity(x, y, z):
    t = qo.default_table()

    def m(a, b):
        return qo.oct_mul(a, b, t)

    assert m(m(z, x), m(y, z)) == m(m(z, m(x, y)), z)


def test_octonions_not_associative():
    t = qo.default_table()
    e = [basis(i) for i in range(8)]
    lhs = qo.oct_mul(qo.oct_mul(e[1], e[2], t), e[4], t)
    rhs = qo.oct_mul(e[1], qo.oct_mul(e[2], e[4], t), t)
    assert lhs == tuple(-x for x in rhs)


@given(st.sampled_from(TABLES), octonion, octonion)
def test_every_enumerated_table_composes(t, x, y):
    assert qo.oct_norm2(qo.oct_mul(x, y, t)) == qo.oct_norm2(x) * qo.oct_norm2(y)


def test_enumeration_counts():
    assert len(qo.enumerate_sts7()) == 30
    assert len(TABLES) == 480
    assert len({t.sc for t in TABLES}) == 480
    assert sum(qo.is_palindromic_table(t) for t in TABLES) == 16


def test_default_table():
    t = qo.default_table()
    assert t.triads[0] == (1, 2, 3)
    assert t.sc[1][2] == (1, 3) and t.sc[2][3] == (1, 1) and t.sc[3][1] == (1, 2)
    assert qo.is_quadrant_closed(t)
    assert not qo.is_palindromic_table(t)
    assert t.sc in {x.sc for x in TABLES}


def test_mirror_table():
    t = qo.select_table(qo.MIRROR_TRIADS)
    assert qo.is_palindromic_table(t)
    g = t.grid()
    assert g[0] == [1, 1, 2, 3, 4, 5, 6, 7]
    assert all(g[i][i] == -1 for i in range(1, 8))


@pytest.mark.parametrize(
    "triads",
    [
        [(1, 2, 3)] * 7,
        [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 8)],
        [(1, 2, 3), (1, 4, 5)],
    ],
)
def test_invalid_triads(triads):
    with pytest.raises(qo.InvalidTableError):
        qo.OctTable.from_triads(triads)


def test_non_composing_orientation_rejected():
    # flipping a single triad of a valid table breaks composition
    bad = ((2, 1, 3),) + qo.MIRROR_TRIADS[1:]
    with pytest.raises(qo.InvalidTableError):
        qo.select_table(bad)


@given(quaternion, quaternion, quaternion)
def test_prq_sides_agree_for_quaternions(p, r, q):
    assert qo.prq(p, r, q) == qo.prq(p, r, q, left=True)


def test_prq_broadcast_dedup():
    i = basis(1, 4)
    one = qo.quat(1, 0, 0, 0)
    out = qo.prq([one, i], 1, [one, one])
    assert out == [one, i]
    assert qo.prq(i, i, 1) == qo.quat(-1, 0, 0, 0)


def test_algebra_operators():
    e1, e2, e3 = basis(1), basis(2), basis(3)
    ops = qo.algebra_operators(e1, e2, e3, qo.default_table())
    assert ops["commutator"] == tuple(2 * x for x in e3)
    assert ops["anticommutator"] == tuple(ZERO for _ in range(8))
    assert ops["conjugate"] == tuple(-x for x in e1)
    assert len(ops["kronecker"]) == 64
    assert all(x == 0 for x in ops["derivation"][:1])


def test_products_within_matches_direct():
    i = [qo.quat(1, 0, 0, 0), basis(1, 4), qo.quat(-1, 0, 0, 0), tuple(-x for x in basis(1, 4))]
    assert qo.products_within(i, i, i)
    assert not qo.products_within(i, [basis(2, 4)], i)


def test_oct_exp_unit_imaginary():
    out = qo.oct_exp(tuple(TowerScalar.rational(x) for x in (0, 1, 0, 0)))
    assert out[0] == pytest.approx(math.cos(1))
    assert out[1] == pytest.approx(math.sin(1))


def _pools():
    from e8fold import polytopes as pt

    return {"I": list(pt.make_I()), "J": list(pt.make_J()), "T": list(pt.make_T()), "Tp": list(pt.make_Tp())}


POOLS = _pools()


@given(
    st.sampled_from(sorted(POOLS)),
    st.sampled_from(sorted(POOLS)),
    st.sampled_from(sorted(POOLS)),
    st.integers(0, 10**6),
)
def test_products_within_agrees_with_brute_force(a, b, c, seed):
    import random

    rng = random.Random(seed)
    left = rng.sample(POOLS[a], 3)
    right = rng.sample(POOLS[b], 3)
    target = POOLS[c]
    pool = set(target)
    expected = all(qo.qmul(x, y) in pool for x in left for y in right)
    assert qo.products_within(left, right, target) == expected
