"""Named property suites run by ``seqprod verify``.

Each property is a function ``(algebra, rng, samples) -> Outcome``.  Every
property/algebra pair draws from its own stream, derived from the run seed
and its labels, so adding a property never changes another one's samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import axioms, linalg, processes, universal
from .config import get_tolerances
from .effects import (Algebra, Effect, ceil, ceil_by_limit, check_connected, floor, is_projection,
                      projection_order_tests, seq_product)
from .sampling import (derived_rng, random_contraction, random_effect, random_element, random_process,
                       random_projection, random_self_adjoint, random_unitary)


class Outcome(NamedTuple):
    passed: bool
    residual: float
    witness: Optional[dict] = None


@dataclass(frozen=True)
class Property:
    name: str
    fn: Callable[[Algebra, np.random.Generator, int], Outcome]
    per_algebra: bool = True


def _bounded(residual: float, bound: float, witness=None) -> Outcome:
    residual = float(residual)
    return Outcome(residual <= bound, residual, None if residual <= bound else witness)


# -- linalg ---------------------------------------------------------------------

def _hermitian(n, rng):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (x + x.conj().T)


def _matrices(algebra, rng, samples):
    for _ in range(samples):
        for n in algebra.block_dims:
            yield _hermitian(n, rng)


def prop_eig_reconstruction(algebra, rng, samples):
    worst = 0.0
    for a in _matrices(algebra, rng, samples):
        e = linalg.eig_hermitian(a)
        scale = max(1.0, linalg.op_norm(a))
        v = e.eigenvectors
        worst = max(worst, linalg.op_norm(e.reconstruct() - a) / scale,
                    linalg.op_norm(v.conj().T @ v - np.eye(len(a))))
    return _bounded(worst, get_tolerances().reconstruction)


def prop_sqrt(algebra, rng, samples):
    worst = 0.0
    for a in _matrices(algebra, rng, samples):
        a = a @ a
        r = linalg.sqrt_psd(a)
        scale = max(1.0, linalg.op_norm(a))
        worst = max(worst, linalg.op_norm(r @ r - a) / scale, linalg.op_norm(r @ a - a @ r) / scale)
    return _bounded(worst, 1e-9)


def prop_functional_calculus(algebra, rng, samples):
    worst = 0.0
    for a in _matrices(algebra, rng, samples):
        a = a / max(1.0, linalg.op_norm(a))
        g = lambda x: x * x - 2 * x + 0.5   # noqa: E731
        h = lambda x: 3 * x ** 3 + 1j * x   # noqa: E731
        lhs = linalg.apply_function(a, g) @ linalg.apply_function(a, h)
        worst = max(worst, linalg.op_norm(lhs - linalg.apply_function(a, lambda x: g(x) * h(x))))
    return _bounded(worst, 1e-9)


def prop_positivity_tests_agree(algebra, rng, samples):
    bad = 0
    for a in _matrices(algebra, rng, samples):
        # shift towards the boundary so both verdicts occur
        a = a - linalg.min_eigenvalue(a) * np.eye(len(a)) + rng.uniform(-0.5, 0.5) * np.eye(len(a))
        bad += linalg.is_positive(a) != linalg.is_positive_by_norm(a)
    return Outcome(bad == 0, float(bad))


def prop_cstar_identity(algebra, rng, samples):
    worst = 0.0
    for _ in range(samples):
        for n in algebra.block_dims:
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            na = linalg.op_norm(a)
            worst = max(worst, abs(linalg.op_norm(a.conj().T @ a) - na * na) / (na * na))
    return _bounded(worst, 1e-9)


# -- effects --------------------------------------------------------------------

def prop_seq_product_is_effect(algebra, rng, samples):
    worst = 0.0
    for _ in range(samples):
        p, q = random_effect(algebra, rng), random_effect(algebra, rng)
        x = seq_product(p, q)
        spec = x.spectrum()
        worst = max(worst, -float(spec[0]), float(spec[-1]) - 1.0, (x - x.H).norm())
    return _bounded(max(worst, 0.0), 1e-12)


def prop_floor_below_ceil(algebra, rng, samples):
    tol = get_tolerances().order
    bad = 0
    for _ in range(samples):
        p = random_effect(algebra, rng)
        lo, hi = floor(p), ceil(p)
        bad += not (lo.leq(p, tol) and p.leq(hi, tol) and is_projection(lo) and is_projection(hi))
    return Outcome(bad == 0, float(bad))


def prop_ceil_limit(algebra, rng, samples):
    # p^(1/2^n) -> ceil p; sampled spectra stay >= 0.01, so 40 halvings are far past convergence
    worst = 0.0
    for _ in range(samples):
        p = random_effect(algebra, rng)
        worst = max(worst, (ceil_by_limit(p, 40) - ceil(p)).norm())
    return _bounded(worst, 1e-9)


def prop_connected(algebra, rng, samples):
    bad = 0
    for k in range(samples):
        a = random_contraction(algebra, rng)
        e1 = random_projection(algebra, rng)
        if k % 2:
            # make the four conditions hold: e2 below 1 - ceil(a* e1 a)
            c = ceil(Effect.coerce(a.H @ e1 @ a / max(1.0, a.norm() ** 2)))
            e2 = ceil(Effect.coerce((algebra.unit() - c) @ random_projection(algebra, rng) @ (algebra.unit() - c)))
        else:
            e2 = random_projection(algebra, rng)
        bad += not check_connected(a, e1, e2).agree()
    return Outcome(bad == 0, float(bad))


def prop_projection_lemmas(algebra, rng, samples):
    bad = 0
    for k in range(samples):
        p = random_projection(algebra, rng) if k % 2 else random_effect(algebra, rng)
        bad += not projection_order_tests(p, rng, samples=3)
    return Outcome(bad == 0, float(bad))


# -- processes ------------------------------------------------------------------

def _targets(algebra):
    return [algebra, Algebra((2,)), Algebra((3, 1))]


def prop_kraus_maps_are_cp(algebra, rng, samples):
    worst = 0.0
    for k in range(samples):
        f = random_process(algebra, _targets(algebra)[k % 3], rng)
        worst = max(worst, -f.linear.choi_min_eigenvalue(), f.unit_image().norm() - 1.0)
    return _bounded(max(worst, 0.0), get_tolerances().positivity)


def prop_transpose_not_cp(algebra, rng, samples):
    t = processes.transpose_map(algebra)
    # on M1 blocks the transpose is the identity
    expect_cp = max(algebra.block_dims) == 1
    ok = processes.is_n_positive(t, 1, samples, rng) and t.is_completely_positive() == expect_cp
    return Outcome(ok, t.choi_min_eigenvalue())


def prop_cauchy_schwarz(algebra, rng, samples):
    worst = 0.0
    for k in range(samples):
        f = random_process(algebra, _targets(algebra)[k % 3], rng)
        a, b = random_element(algebra, rng), random_element(algebra, rng)
        rep = processes.cs_inequalities(f, a, b, check_two_positive=False)
        worst = max(worst, -min(rep.slacks))
    return _bounded(max(worst, 0.0), get_tolerances().cs_slack)


def prop_kadison(algebra, rng, samples):
    worst = 0.0
    n = algebra.block_dims[0]
    for _ in range(samples):
        rho = random_effect(Algebra((n,)), rng).matrix()
        rho = rho / max(np.trace(rho).real, 1e-12)
        a = random_element(Algebra((n,)), rng).matrix()
        b = random_element(Algebra((n,)), rng).matrix()
        worst = max(worst, -processes.kadison_slack(rho, a, b))
    return _bounded(max(worst, 0.0), get_tolerances().cs_slack)


def prop_block2(algebra, rng, samples):
    bad = 0
    worst = 0.0
    n = algebra.block_dims[0]
    for _ in range(samples):
        m = int(rng.integers(1, n + 1))
        x = rng.standard_normal((n + m, n + m)) + 1j * rng.standard_normal((n + m, n + m))
        t = x.conj().T @ x
        t = t / linalg.op_norm(t)
        rep = processes.block2_positivity(t[:n, :n], t[:n, n:], t[n:, n:])
        bad += not (rep.positive and rep.item3 and rep.item4 and rep.item5 and rep.pointwise)
        worst = max(worst, -min(rep.slacks or (0.0,)))
    return Outcome(bad == 0, max(worst, 0.0))


def prop_awmult(algebra, rng, samples):
    bad = 0
    for k in range(samples):
        if k % 3 == 0:
            f = processes.unitary_conjugation(random_unitary(algebra, rng))
        elif k % 3 == 1:
            f = random_process(algebra, algebra, rng, unital=True)
        else:
            u = random_unitary(algebra, rng)
            f = processes.Process(algebra, algebra, {(i, i): [np.eye(n) / math.sqrt(2), u.blocks[i] / math.sqrt(2)]
                                                     for i, n in enumerate(algebra.block_dims)})
        bad += not processes.awmult_equivalence(f, 10, rng).agree()
    return Outcome(bad == 0, float(bad))


def prop_support_inequality(algebra, rng, samples):
    bad = 0
    for k in range(samples):
        f = random_process(algebra, _targets(algebra)[k % 3], rng)
        bad += not processes.support_ineq_check(f, random_effect(algebra, rng, sharp_prob=0.6))
    return Outcome(bad == 0, float(bad))


def prop_invertible_is_iso(algebra, rng, samples):
    bad = 0
    for _ in range(samples):
        u = random_unitary(algebra, rng)
        bad += not processes.invertible_process_is_iso(processes.unitary_conjugation(u),
                                                       processes.unitary_conjugation(u.H), 5, rng)
    return Outcome(bad == 0, float(bad))


# -- universal ------------------------------------------------------------------

def prop_compression_final(algebra, rng, samples):
    worst, bad = 0.0, 0
    src = Algebra((2,))
    for _ in range(samples):
        p = random_effect(algebra, rng)
        emb, c = universal.make_compression(p)
        f = c.compose(random_process(src, emb.corner_algebra, rng))
        r = universal.factor_through_compression(f, p)
        worst, bad = max(worst, r.residual), bad + (not r.unique)
    return Outcome(bad == 0 and worst <= get_tolerances().factorization, worst)


def prop_corner_initial(algebra, rng, samples):
    worst, bad = 0.0, 0
    tgt = Algebra((2,))
    for _ in range(samples):
        p = random_effect(algebra, rng, sharp_prob=0.6)
        emb, pi = universal.make_corner(p)
        g = random_process(emb.corner_algebra, tgt, rng).compose(pi)
        r = universal.factor_through_corner(g, p)
        worst, bad = max(worst, r.residual), bad + (not r.unique)
    return Outcome(bad == 0 and worst <= get_tolerances().factorization, worst)


def prop_q_limit(algebra, rng, samples):
    bad, worst = 0, 0.0
    src = Algebra((2,))
    for _ in range(samples):
        p = random_effect(algebra, rng, sharp_prob=0.0)
        lam = min(float(x) for x in p.spectrum() if x > 1e-9)
        emb, c = universal.make_compression(p)
        f = c.compose(random_process(src, emb.corner_algebra, rng))
        expected = math.ceil(1.0 / lam)
        r = universal.factor_through_compression_by_limit(f, p, expected + 3)
        worst = max(worst, r.residual)
        bad += r.stable_from != expected
    return Outcome(bad == 0 and worst <= get_tolerances().factorization, worst)


def prop_existence(algebra, rng, samples):
    worst = 0.0
    for _ in range(samples):
        p, q = random_effect(algebra, rng), random_effect(algebra, rng)
        worst = max(worst, (universal.product_via_corner(p, q) - seq_product(p, q)).norm())
    return _bounded(worst, get_tolerances().factorization)


def prop_compressions_isomorphic(algebra, rng, samples):
    bad = 0
    for _ in range(samples):
        p = random_effect(algebra, rng)
        emb, c1 = universal.make_compression(p)
        if emb.corner_algebra.is_zero:
            continue
        w = processes.unitary_conjugation(random_unitary(emb.corner_algebra, rng))
        c2 = c1.compose(w)
        t, s = universal.mediating_isomorphism(p, c1, c2)
        bad += not processes.invertible_process_is_iso(t, s, 5, rng)
    return Outcome(bad == 0, float(bad))


# -- axioms ----------------------------------------------------------------------

# Failure profiles that actually hold.  pqp also breaks Ax.2, since
# p(pqp)p = p^2 q p^2 while (ppp) q (ppp) = p^3 q p^3.
TRUE_PROFILES = {
    "standard": set(),
    "twisted-one": set(),
    "ax1-pqp": {"ax1", "ax2"},
    "ax2-sign": {"ax2"},
    "ax4-phase": {"ax4"},
}


def _axiom_property(cand_factory):
    def fn(algebra, rng, samples):
        cand = cand_factory()
        inst = axioms.generate_instances(algebra, samples, rng)
        rep = axioms.check_all(cand, inst)
        expected = TRUE_PROFILES[cand.name]
        ok = rep.failed() == expected and all(
            rep.status(a) == axioms.PASS for a in axioms.AXIOMS if a not in expected)
        residual = max((rep.results[a].max_residual for a in axioms.AXIOMS if a not in expected), default=0.0)
        return Outcome(ok, residual, None if ok else rep.to_json())
    return fn


def prop_uniqueness(algebra, rng, samples):
    inst = axioms.generate_instances(algebra, samples, rng)
    worst = 0.0
    for cand in (axioms.standard_candidate(), axioms.twisted_candidate(lambda lam: 1.0, "twisted-one")):
        demo = axioms.uniqueness_demo(cand, inst)
        if not demo.passed:
            return Outcome(False, max(demo.max_deviation, demo.waypoint_residual), demo.to_json())
        worst = max(worst, demo.max_deviation, demo.waypoint_residual)
    return Outcome(True, worst)


SUITES: dict[str, list[Property]] = {
    "linalg": [
        Property("eig-reconstruction", prop_eig_reconstruction),
        Property("sqrt", prop_sqrt),
        Property("functional-calculus", prop_functional_calculus),
        Property("positivity-tests-agree", prop_positivity_tests_agree),
        Property("cstar-identity", prop_cstar_identity),
    ],
    "effects": [
        Property("seq-product-is-effect", prop_seq_product_is_effect),
        Property("floor-below-ceil", prop_floor_below_ceil),
        Property("ceil-limit", prop_ceil_limit),
        Property("connected", prop_connected),
        Property("projection-lemmas", prop_projection_lemmas),
    ],
    "processes": [
        Property("kraus-maps-are-cp", prop_kraus_maps_are_cp),
        Property("transpose-not-cp", prop_transpose_not_cp),
        Property("cauchy-schwarz", prop_cauchy_schwarz),
        Property("kadison", prop_kadison),
        Property("block2", prop_block2),
        Property("awmult", prop_awmult),
        Property("support-inequality", prop_support_inequality),
        Property("invertible-is-iso", prop_invertible_is_iso),
    ],
    "universal": [
        Property("compression-final", prop_compression_final),
        Property("corner-initial", prop_corner_initial),
        Property("q-limit", prop_q_limit),
        Property("existence", prop_existence),
        Property("compressions-isomorphic", prop_compressions_isomorphic),
    ],
    "axioms": [
        Property("standard", _axiom_property(axioms.standard_candidate)),
        Property("twisted-one", _axiom_property(lambda: axioms.twisted_candidate(lambda lam: 1.0, "twisted-one"))),
        Property("ax1-pqp", _axiom_property(axioms.pqp_candidate)),
        Property("ax2-sign", _axiom_property(axioms.sign_candidate)),
        Property("ax4-phase", _axiom_property(axioms.phase_candidate)),
        Property("uniqueness", prop_uniqueness),
    ],
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, seed: int, dims, samples: int) -> list[dict]:
    """Run a suite (or ``"all"``) and return one record per property and algebra, in a fixed order."""
    names = list(SUITES) if name == "all" else [name]
    records = []
    for suite in names:
        for prop in SUITES[suite]:
            algebras = [Algebra(tuple(d)) for d in dims] if prop.per_algebra else [Algebra(tuple(dims[0]))]
            for idx, alg in enumerate(algebras):
                rng = derived_rng(seed, suite, prop.name, idx)
                out = prop.fn(alg, rng, samples)
                rec = {"suite": suite, "property": prop.name, "algebra": alg.to_json(),
                       "passed": bool(out.passed), "residual": float(out.residual)}
                if not out.passed and out.witness is not None:
                    rec["witness"] = out.witness
                records.append(rec)
    return records
