import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from seqprod import linalg
from seqprod.config import DEFAULTS, get_tolerances, tolerances
from seqprod.errors import NoConvergence, NotHermitian, NotPositive, ShapeMismatch


def random_hermitian(rng, n, scale=1.0):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * 0.5 * (x + x.conj().T)


def test_eig_diagonal():
    e = linalg.eig_hermitian(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(e.eigenvalues, [1, 2, 3])
    assert np.allclose(np.abs(e.eigenvectors), np.eye(3)[:, [1, 2, 0]])


def test_eig_swap():
    e = linalg.eig_hermitian([[0, 1], [1, 0]])
    assert np.allclose(e.eigenvalues, [-1, 1])


@pytest.mark.parametrize("n", [1, 2, 5])
def test_eig_zero(n):
    e = linalg.eig_hermitian(np.zeros((n, n)))
    assert np.array_equal(e.eigenvalues, np.zeros(n))
    assert np.array_equal(e.eigenvectors, np.eye(n))
    assert e.sweeps == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_eig_matches_numpy(rng, n):
    for scale in (1e-3, 1.0, 1e3):
        a = random_hermitian(rng, n, scale)
        e = linalg.eig_hermitian(a)
        assert np.allclose(e.eigenvalues, np.linalg.eigvalsh(a), atol=1e-12 * max(1, scale))
        v = e.eigenvectors
        assert np.linalg.norm(e.reconstruct() - a, 2) <= 1e-10 * max(1.0, np.linalg.norm(a, 2))
        assert np.linalg.norm(v.conj().T @ v - np.eye(n), 2) <= 1e-10


def test_eig_deterministic(rng):
    a = random_hermitian(rng, 6)
    e1, e2 = linalg.eig_hermitian(a), linalg.eig_hermitian(a.copy())
    assert np.array_equal(e1.eigenvalues, e2.eigenvalues)
    assert np.array_equal(e1.eigenvectors, e2.eigenvectors)


def test_eig_degenerate(rng):
    u, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
    a = (u * np.array([1.0, 1.0, 1.0, -2.0])) @ u.conj().T
    e = linalg.eig_hermitian(a)
    assert np.allclose(e.eigenvalues, [-2, 1, 1, 1])
    assert np.linalg.norm(e.reconstruct() - a, 2) < 1e-12


def test_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        linalg.eig_hermitian([[0, 1], [0, 0]])
    with pytest.raises(ShapeMismatch):
        linalg.eig_hermitian(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        linalg.eig_hermitian([[np.nan, 0], [0, 1]])


def test_eig_sweep_cap(rng):
    with tolerances(eig_max_sweeps=0):
        with pytest.raises(NoConvergence):
            linalg.eig_hermitian(random_hermitian(rng, 4))


def test_apply_function_sign_examples():
    g = lambda x: 1.0 if x >= 3 ** -0.5 else -1.0  # noqa: E731
    assert np.allclose(linalg.apply_function(np.diag([1, 2 / 3]), g), np.eye(2))
    assert np.allclose(linalg.apply_function(np.diag([1, 4 / 9]), g), np.diag([1, -1]))
    a = np.array([[2, 1j], [-1j, 0.5]])
    assert np.allclose(linalg.apply_function(a, lambda x: x), a)


def test_functional_calculus_is_multiplicative(rng):
    a = random_hermitian(rng, 5)
    g = lambda x: x ** 2 + 1  # noqa: E731
    h = lambda x: 2 * x - 3j  # noqa: E731
    lhs = linalg.apply_function(a, g) @ linalg.apply_function(a, h)
    assert np.linalg.norm(lhs - linalg.apply_function(a, lambda x: g(x) * h(x)), 2) < 1e-9
    assert np.linalg.norm(linalg.apply_function(a, g) @ a - a @ linalg.apply_function(a, g), 2) < 1e-9


def test_sqrt_examples():
    assert np.allclose(linalg.sqrt_psd(np.diag([1, 0.25])), np.diag([1, 0.5]))
    e = np.full((2, 2), 0.5)
    assert np.allclose(linalg.sqrt_psd(e), e)
    x = np.sqrt(2) / 4
    assert np.allclose(linalg.sqrt_psd(np.full((2, 2), 0.25)), np.full((2, 2), x), atol=1e-14)


def test_sqrt_rejects_negative():
    with pytest.raises(NotPositive):
        linalg.sqrt_psd(np.diag([1.0, -0.1]))
    # tiny negative noise is clamped
    r = linalg.sqrt_psd(np.diag([1.0, -1e-12]))
    assert np.allclose(r, np.diag([1, 0]))


@settings(max_examples=60, deadline=None)
@given(hnp.arrays(np.float64, (4, 4), elements=st.floats(-3, 3)))
def test_sqrt_squares_back(m):
    a = m @ m.T
    r = linalg.sqrt_psd(a)
    scale = max(1.0, np.linalg.norm(a, 2))
    assert np.linalg.norm(r @ r - a, 2) <= 1e-9 * scale
    assert np.linalg.norm(r @ a - a @ r, 2) <= 1e-9 * scale
    assert linalg.min_eigenvalue(r) >= -1e-12 * scale


def test_pinv_examples(rng):
    assert np.allclose(linalg.pinv_psd(np.diag([4.0, 0.0])), np.diag([0.25, 0]))
    x = rng.standard_normal((3, 3))
    a = x @ x.T + np.eye(3)
    assert np.allclose(linalg.pinv_psd(a), np.linalg.inv(a))
    assert np.allclose(linalg.pinv_psd(np.diag([1.0, 1e-15])), np.diag([1.0, 0.0]))


def test_pinv_gives_support(rng):
    v = rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2))
    a = v @ v.conj().T
    s = linalg.support_projection(a)
    assert np.allclose(a @ linalg.pinv_psd(a), s)
    assert np.allclose(linalg.pinv_psd(a) @ a, s)
    assert round(np.trace(s).real) == 2


def test_op_norm_examples():
    assert linalg.op_norm(np.diag([-3, 2])) == pytest.approx(3)
    assert linalg.op_norm(np.full((2, 2), 0.5)) == pytest.approx(1)
    assert linalg.op_norm([[0, 2], [0, 0]]) == pytest.approx(2)


def test_cstar_identity(rng):
    for n in range(1, 7):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        assert linalg.op_norm(a.conj().T @ a) == pytest.approx(linalg.op_norm(a) ** 2, rel=1e-9)
        b = rng.standard_normal((n, n))
        assert linalg.op_norm(a @ b) <= linalg.op_norm(a) * linalg.op_norm(b) * (1 + 1e-12)


def test_is_positive_examples():
    assert linalg.is_positive(np.diag([0, 1]))
    assert not linalg.is_positive([[1, 2], [2, 1]])
    assert linalg.is_positive(np.zeros((3, 3)))
    with pytest.raises(NotHermitian):
        linalg.is_positive_by_norm([[0, 1], [0, 0]])


def test_positivity_tests_agree(rng):
    for k in range(1000):
        n = 1 + k % 5
        a = random_hermitian(rng, n)
        a = a - linalg.min_eigenvalue(a) * np.eye(n) + rng.uniform(-0.3, 0.3) * np.eye(n)
        assert linalg.is_positive(a) == linalg.is_positive_by_norm(a)


def test_norm_at_most(rng):
    for _ in range(200):
        a = rng.standard_normal((3, 3))
        bound = rng.uniform(0, 5)
        assert linalg.norm_at_most(a, bound) == (linalg.op_norm(a) <= bound)


def test_proportionality():
    g = np.arange(12.0).reshape(3, 4) + 1j
    assert linalg.proportionality_coefficient(2 * g, g) == pytest.approx(2)
    assert linalg.proportionality_coefficient((1 - 2j) * g, g) == pytest.approx(1 - 2j)
    assert linalg.proportionality_coefficient(np.eye(3), np.diag([1.0, 2.0, 3.0])) is None
    assert linalg.proportionality_coefficient(np.zeros((2, 2)), np.zeros((2, 2))) == 1
    assert linalg.proportionality_coefficient(np.zeros((2, 2)), np.eye(2)) is None
    with pytest.raises(ShapeMismatch):
        linalg.proportionality_coefficient(np.eye(2), np.eye(3))


def test_proportional_by_construction(rng):
    for _ in range(50):
        g = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
        alpha = complex(rng.standard_normal(), rng.standard_normal())
        assert linalg.proportionality_coefficient(alpha * g, g) == pytest.approx(alpha)


def test_matrix_json_roundtrip(rng):
    for shape in [(3, 3), (2, 4)]:
        a = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        back = linalg.matrix_from_json(linalg.matrix_to_json(a))
        assert np.abs(back - a).max() <= 1e-15
    assert linalg.matrix_to_json(np.eye(2))["dim"] == 2
    with pytest.raises(ShapeMismatch):
        linalg.matrix_from_json({"dim": 2, "entries": [[1, 0]]})


def test_tolerance_overrides():
    assert get_tolerances() is DEFAULTS
    with tolerances(rank=1e-6) as t:
        assert t.rank == 1e-6 and get_tolerances().rank == 1e-6
    assert get_tolerances().rank == 1e-10
    with pytest.raises(KeyError):
        DEFAULTS.replace(nonsense=1.0)
