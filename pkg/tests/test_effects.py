from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from seqprod import Algebra, Effect, Element, Projection, ceil, ceil_by_limit, check_connected, floor, seq_product
from seqprod.effects import is_projection, projection_order_tests
from seqprod.errors import AlgebraMismatch, NormTooLarge, NotAnEffect, NotProjection, ShapeMismatch
from seqprod.sampling import random_contraction, random_effect, random_projection

ALGEBRAS = [Algebra((1,)), Algebra((2,)), Algebra((3,)), Algebra((2, 2)), Algebra((1, 3))]


def test_algebra_basics():
    a = Algebra((2, 3))
    assert a.dimension == 13
    assert str(a) == "M2 + M3"
    assert len(list(a.matrix_units())) == 13
    assert Algebra.zero().is_zero and Algebra.zero().dimension == 0
    with pytest.raises(ValueError):
        Algebra((2, 0))


def test_vectorize_roundtrip(rng):
    a = Algebra((2, 1, 3))
    x = Element([rng.standard_normal((n, n)) for n in a.block_dims], a)
    assert a.unvectorize(a.vectorize(x)).allclose(x, 0)
    with pytest.raises(ShapeMismatch):
        a.unvectorize(np.zeros(3))


def test_elements_are_immutable_and_typed():
    x = Element(np.eye(2))
    with pytest.raises(ValueError):
        x.blocks[0][0, 0] = 5
    with pytest.raises(AlgebraMismatch):
        x + Element(np.eye(3))
    with pytest.raises(ShapeMismatch):
        Element([np.eye(2)], Algebra((3,)))


@pytest.mark.parametrize("bad", [np.diag([1.5, 0]), np.diag([-0.2, 0.5]), np.array([[0, 1], [0, 0]])])
def test_effect_rejects(bad):
    with pytest.raises(NotAnEffect):
        Effect(bad)


def test_effect_clamps_noise():
    e = Effect(np.diag([1 + 1e-13, -1e-13]))
    assert np.array_equal(e.spectrum(), [0.0, 1.0])


def test_projection_rejects_non_idempotent():
    with pytest.raises(NotProjection):
        Projection(np.diag([1.0, 0.5]))


def test_seq_product_examples():
    half = Effect(np.full((2, 2), 0.5))
    assert seq_product(Effect(np.diag([1, 0])), half).allclose(Element(np.diag([0.5, 0])), 1e-12)
    assert seq_product(Effect(np.diag([1, 0.25])), Effect(np.eye(2))).allclose(Element(np.diag([1, 0.25])), 1e-12)
    assert seq_product(half, half).allclose(half, 1e-12)


def test_ceil_floor_examples():
    p = Effect(np.diag([0.5, 0]))
    assert ceil(p).allclose(Element(np.diag([1, 0])), 0)
    assert floor(p).allclose(Element(np.zeros((2, 2))), 0)
    q = Effect(np.diag([1, 0.3]))
    assert ceil(q).allclose(Element(np.eye(2)), 0)
    assert floor(q).allclose(Element(np.diag([1, 0])), 1e-12)
    z = Algebra((2, 1)).zero_element()
    assert ceil(Effect.coerce(z)).allclose(z, 0)


@pytest.mark.parametrize("rot", oracle.ROTATIONS)
@pytest.mark.parametrize("pa,pb,qa,qb", [
    (Fraction(1), Fraction(1, 4), Fraction(1, 2), Fraction(1, 3)),
    (Fraction(9, 16), Fraction(0), Fraction(1), Fraction(1, 5)),
    (Fraction(1, 9), Fraction(4, 9), Fraction(0), Fraction(1)),
])
def test_seq_product_matches_exact(rot, pa, pb, qa, qb):
    p = oracle.rational_effect(pa, pb, rot)
    q = oracle.rational_effect(qa, qb, (5, 12, 13))
    exact = oracle.to_numpy(oracle.seq_product(p, q))
    got = seq_product(Effect(oracle.to_numpy(p)), Effect(oracle.to_numpy(q))).matrix()
    assert np.abs(got - exact).max() <= 1e-12
    for ours, ref in ((ceil, oracle.ceil2x2), (floor, oracle.floor2x2)):
        assert np.abs(ours(Effect(oracle.to_numpy(p))).matrix() - oracle.to_numpy(ref(p))).max() <= 1e-12


@pytest.mark.parametrize("algebra", ALGEBRAS)
def test_seq_product_laws(rng, algebra):
    for _ in range(20):
        p, q = random_effect(algebra, rng), random_effect(algebra, rng)
        pq = seq_product(p, q)
        assert pq.is_positive() and pq.leq(algebra.unit(), 1e-10)
        assert pq.leq(p, 1e-10)
        assert seq_product(p, algebra.unit()).allclose(p, 1e-10)
        assert seq_product(algebra.unit(), q).allclose(q, 1e-10)
        # p commutes with its own powers
        assert seq_product(p, p).allclose(p @ p, 1e-10)
        # complement splits: p&q + p&(1-q) = p
        assert (pq + seq_product(p, q.complement())).allclose(p, 1e-10)


@pytest.mark.parametrize("algebra", ALGEBRAS)
def test_ceil_floor_laws(rng, algebra):
    for _ in range(20):
        p = random_effect(algebra, rng)
        c, f = ceil(p), floor(p)
        assert is_projection(c) and is_projection(f)
        assert f.leq(p, 1e-10) and p.leq(c, 1e-10)
        assert (c @ p).allclose(p, 1e-10)
        assert ceil(c).allclose(c, 1e-10) and floor(f).allclose(f, 1e-10)
        assert floor(p).allclose(ceil(p.complement()).complement(), 0)


@pytest.mark.parametrize("algebra", ALGEBRAS[:4])
def test_ceil_by_limit_increases_to_ceil(rng, algebra):
    p = random_effect(algebra, rng)
    prev = ceil_by_limit(p, 0)
    assert prev.allclose(p, 1e-12)
    for n in range(1, 40):
        cur = ceil_by_limit(p, n)
        assert prev.leq(cur, 1e-10)
        prev = cur
    assert prev.allclose(ceil(p), 1e-6)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1), st.integers(0, 2**32 - 1))
def test_sharp_effects_give_projections(a, b, seed):
    rng = np.random.default_rng(seed)
    u = random_projection(Algebra((2,)), rng, rank=1).matrix()
    p = Effect(a * u + b * (np.eye(2) - u))
    sharp = min(a, 1 - a) < 1e-12 and min(b, 1 - b) < 1e-12
    fuzzy = min(a, 1 - a) > 1e-6 or min(b, 1 - b) > 1e-6
    if sharp or fuzzy:
        assert is_projection(p) == sharp
    assert projection_order_tests(p, rng, samples=3)


def test_connected_examples():
    e1, e2 = Projection(np.diag([1.0, 0])), Projection(np.diag([0.0, 1]))
    swap = Element(np.array([[0.0, 1], [1, 0]]))
    r = check_connected(swap, e1, e2)
    assert r == (False, False, False, False)
    r = check_connected(Element(np.eye(2)), e1, e2)
    assert r == (True, True, True, True)
    with pytest.raises(NormTooLarge):
        check_connected(Element(2 * np.eye(2)), e1, e2)


@pytest.mark.parametrize("algebra", ALGEBRAS)
def test_connected_conditions_agree(rng, algebra):
    for k in range(50):
        a = random_contraction(algebra, rng)
        e1, e2 = random_projection(algebra, rng), random_projection(algebra, rng)
        if k % 2:
            # force e1 a e2 = 0
            a = a - e1 @ a @ e2
            a = a / max(1.0, a.norm())
        assert check_connected(a, e1, e2).agree()


def test_json_roundtrip(rng):
    p = random_effect(Algebra((2, 3)), rng)
    back = Element.from_json(p.to_json())
    assert back.algebra == p.algebra and back.allclose(p, 1e-15)
