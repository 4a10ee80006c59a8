from fractions import Fraction
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracle
from seqprod import Algebra, Effect, Element, seq_product
from seqprod import axioms as ax
from seqprod.errors import AxiomPrereqFailed, NotUnimodular
from seqprod.sampling import derived_rng, random_effect, random_projection

M2 = Algebra((2,))


@pytest.fixture(scope="module")
def small_sets():
    rng = derived_rng(11, "test-axioms")
    return [ax.generate_instances(Algebra(d), 25, rng) for d in [(2,), (3,), (1, 2)]]


@pytest.fixture(scope="module")
def profiles(small_sets):
    return {c.name: ax.check_all(c, small_sets) for c in ax.builtin_candidates()}


def test_standard_passes_everything(profiles):
    rep = profiles["standard"]
    assert rep.all_pass(), rep.to_json()
    assert rep.results["ax1"].certified


def test_trivial_twist_is_standard(profiles, small_sets):
    assert profiles["twisted-one"].all_pass()
    cand = ax.twisted_candidate(lambda lam: 1.0)
    for inst in small_sets:
        for p, q in inst.pairs[:10]:
            assert cand(p, q).allclose(seq_product(p, q), 1e-10)


@pytest.mark.parametrize("name,failed", [
    ("ax1-pqp", {"ax1", "ax2"}),      # pqp also breaks Ax.2: see the exact check below
    ("ax2-sign", {"ax2"}),
    ("ax4-phase", {"ax4"}),
])
def test_candidate_profiles(profiles, name, failed):
    rep = profiles[name]
    assert rep.failed() == failed
    for a in failed:
        assert rep.results[a].witness is not None


def test_pqp_unit_gap_exact():
    p = sp.diag(1, sp.Rational(1, 4))
    assert oracle.pqp_unit_gap(p) == sp.Rational(3, 16)
    assert ax.ax1_unit_gap(ax.pqp_candidate(), Effect(np.diag([1.0, 0.25]))) == pytest.approx(3 / 16, abs=1e-14)


def test_pqp_breaks_ax2_exactly():
    # p *~ (p *~ q) = p^2 q p^2 but (p *~ p) *~ q = p^3 q p^3
    p = sp.diag(1, sp.Rational(1, 2))
    q = sp.Matrix([[1, 1], [1, 1]]) / 2
    lhs = p * (p * q * p) * p
    rhs = (p * p * p) * q * (p * p * p)
    diff = sp.simplify(lhs - rhs)
    assert diff == sp.Matrix([[0, sp.Rational(1, 16)], [sp.Rational(1, 16), sp.Rational(3, 128)]])
    exact = float(oracle.sym_norm(diff))
    got = ax.ax2_gap(ax.pqp_candidate(), Effect(np.diag([1.0, 0.5])), Effect(np.full((2, 2), 0.5)))
    assert got == pytest.approx(exact, abs=1e-14)
    assert exact > 0.05


def test_sign_gap_exact():
    p = sp.diag(1, sp.Rational(2, 3))
    q = sp.Matrix([[1, 1], [1, 1]]) / 2
    u = sp.diag(1, -1)                       # g at the spectrum of p*p = diag(1, 4/9)
    diff = p * (q - u * q * u) * p
    assert diff == sp.Matrix([[0, sp.Rational(2, 3)], [sp.Rational(2, 3), 0]])
    assert oracle.sym_norm(diff) == sp.Rational(2, 3)
    assert float(oracle.sym_norm(diff)) == ax.AX2_SIGN_GAP
    got = ax.ax2_gap(ax.sign_candidate(), Effect(np.diag([1.0, 2 / 3])), Effect(np.full((2, 2), 0.5)))
    assert got == pytest.approx(2 / 3, abs=1e-12)


@pytest.mark.parametrize("lam,value", [(1.0, 1), (2 / 3, 1), (4 / 9, -1), (1 / math.sqrt(3), 1), (0.0, -1)])
def test_sign_g(lam, value):
    assert ax.sign_g(lam) == value


@settings(max_examples=100, deadline=None)
@given(st.floats(1e-6, 1.0))
def test_phase_g_squares(lam):
    g = ax.phase_g
    assert abs(abs(g(lam)) - 1) < 1e-12
    assert abs(g(lam) ** 2 - g(lam ** 2)) < 1e-9


def test_phase_g_values():
    assert ax.phase_g(0.0) == 1
    assert ax.phase_g(1.0) == pytest.approx(1)
    assert ax.phase_g(0.5) == pytest.approx(-1)


def test_twisted_guard():
    cand = ax.twisted_candidate(lambda lam: 2.0)
    with pytest.raises(NotUnimodular):
        cand(Effect(np.diag([1.0, 0.5])), Effect(np.eye(2)))


def test_phase_passes_ax2_on_commuting_powers(rng):
    cand = ax.phase_candidate()
    for _ in range(20):
        p, q = random_effect(M2, rng), random_effect(M2, rng)
        assert ax.ax2_gap(cand, p, q) <= 1e-9


def test_frozen_witness_reproduces():
    w = ax.load_ax4_witness()
    assert w is not None
    assert np.allclose(w["p"].matrix(), np.diag([1.0, 1 / math.sqrt(2)]))
    viol = ax.ax4_violation(ax.phase_candidate(), w["p"], w["e1"], w["e2"])
    assert viol == pytest.approx(w["violation"], abs=1e-10)
    assert viol == pytest.approx(0.3075504128156354, abs=1e-10)
    assert ax.ax4_violation(ax.standard_candidate(), w["p"], w["e1"], w["e2"]) == 0.0


def test_witness_search_is_deterministic():
    found = ax.search_ax4_witness(ax.phase_candidate(), random_tries=0)
    assert found is not None
    p, e1, e2, viol = found
    assert viol > 0.1
    assert ax.search_ax4_witness(ax.standard_candidate(), random_tries=50) is None


def test_witness_json_roundtrip():
    p, e1, e2, viol = ax.search_ax4_witness(ax.phase_candidate(), random_tries=0)
    obj = ax.witness_to_json(p, e1, e2, viol)
    assert obj["candidate"] == "ax4-phase" and obj["violation"] == viol
    assert Element.from_json(obj["e1"]).allclose(e1, 1e-15)


@pytest.mark.parametrize("algebra", [Algebra((2,)), Algebra((3,)), Algebra((2, 1))])
def test_standard_ax4_both_sides_agree(rng, algebra):
    cand = ax.standard_candidate()
    for _ in range(30):
        p = random_effect(algebra, rng)
        e1, e2 = random_projection(algebra, rng), random_projection(algebra, rng)
        assert ax.ax4_violation(cand, p, e1, e2) == 0.0


def test_linear_extension_of_standard_is_compression(rng):
    p = random_effect(Algebra((3,)), rng)
    lin = ax.linear_extension(ax.standard_candidate(), p)
    assert lin.is_completely_positive()
    for _ in range(5):
        q = random_effect(Algebra((3,)), rng)
        assert lin(q).allclose(seq_product(p, q), 1e-10)


def test_uniqueness_demo(small_sets, profiles):
    demo = ax.uniqueness_demo(ax.standard_candidate(), small_sets, profiles["standard"])
    assert demo.passed and demo.max_deviation <= 1e-10
    with pytest.raises(AxiomPrereqFailed) as info:
        ax.uniqueness_demo(ax.sign_candidate(), small_sets, profiles["ax2-sign"])
    assert "ax2" in str(info.value)


def test_verdict_bands():
    assert ax._verdict("ax2", 1e-10, None).status == "pass"
    assert ax._verdict("ax2", 1e-3, {"x": 1}).status == "fail"
    assert ax._verdict("ax2", 1e-7, None).status == "not-decidable"


def test_fixed_instances():
    inst = ax.fixed_instances(M2)
    ps = [p.matrix() for p, _ in inst.pairs]
    assert any(np.allclose(p, np.diag([1, 2 / 3])) for p in ps)
    assert any(np.allclose(p, np.diag([1, 0.25])) for p in ps)
    assert ax.fixed_instances(Algebra((3,))).pairs == []


@pytest.mark.parametrize("name,reproduced", [("ax1-pqp", False), ("ax2-sign", True), ("ax4-phase", True)])
def test_counterexample_families(name, reproduced):
    out = ax.counterexample(name, samples=30, rng=derived_rng(3, name))
    assert out["reproduced"] is reproduced
    if name == "ax1-pqp":
        assert out["unit_gap"] == pytest.approx(3 / 16)
        assert out["unexpected_failures"] == ["ax2"]
    if name == "ax2-sign":
        assert out["gap"] == pytest.approx(2 / 3, abs=1e-12)
        assert out["gap_for_unnormalized_q"] == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)
    if name == "ax4-phase":
        assert out["violation"] == pytest.approx(out["recorded_violation"], abs=1e-10)
