"""Candidate sequential products and the four axiom checks.

A candidate is a rule ``(p, q) -> p *~ q`` on effects of one algebra.  The
checks, for effects ``p, q``, projections ``e1, e2`` and *-homomorphisms ``f``:

    Ax.1  q -> p *~ q is the compression of p after the corner of ceil p
    Ax.2  p *~ (p *~ q) == (p *~ p) *~ q
    Ax.3  f(p *~ q) == f(p) *~ f(q)
    Ax.4  p *~ e1 <= 1 - e2   iff   p *~ e2 <= 1 - e1

Ax.1 is not decidable from the rule alone.  Tier 1 screens necessary
conditions; a candidate can opt into a sound pass by carrying a certificate
``p -> u_p``, a unitary of the corner of ``ceil p`` with
``p *~ q == sqrt(p) u_p* q u_p sqrt(p)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from typing import Callable, Optional

import numpy as np

from . import linalg
from .config import get_tolerances
from .effects import Algebra, Effect, Element, Projection, ceil, seq_product
from .errors import AxiomPrereqFailed, NotMultiplicative, NotProjection, NotUnimodular
from .processes import (BlockLinearMap, Process, block_doubling, block_permutation, coordinate_projection,
                        is_multiplicative, unitary_conjugation)
from .sampling import random_effect, random_projection, random_unitary, rank_one_projection
from .universal import CornerEmbedding

PASS, FAIL, UNDECIDED = "pass", "fail", "not-decidable"
AXIOMS = ("ax1", "ax2", "ax3", "ax4")

Rule = Callable[[Effect, Effect], Effect]


@dataclass(frozen=True)
class Candidate:
    name: str
    rule: Rule
    certificate: Optional[Callable[[Effect], Element]] = None
    g: Optional[Callable[[float], complex]] = None           # set for twisted candidates
    expected_failures: frozenset = frozenset()                # axioms a built-in is designed to break

    def __call__(self, p, q) -> Effect:
        p, q = Effect.coerce(p), Effect.coerce(q)
        p.algebra.check(q)
        return self.rule(p, q)


# -- built-in candidates ------------------------------------------------------

def standard_candidate() -> Candidate:
    """``p * q = sqrt(p) q sqrt(p)``; certificate ``u_p = 1``."""
    return Candidate("standard", seq_product, certificate=lambda p: ceil(p) * 1.0)


def _unitary_of(p: Effect, g) -> Element:
    """``g(p)`` on the support of ``p``, identity on its kernel."""
    tol = get_tolerances()
    blocks = []
    for e in p.eig:
        lam = e.eigenvalues
        cut = linalg.rank_threshold(float(lam[-1]) if lam.size else 0.0)
        vals = np.array([complex(g(float(x))) if x > cut else 1.0 for x in lam], dtype=np.complex128)
        if vals.size and np.max(np.abs(np.abs(vals) - 1.0)) > tol.effect_clamp:
            raise NotUnimodular(f"|g| deviates from 1 by {np.max(np.abs(np.abs(vals) - 1.0)):.3g}")
        v = e.eigenvectors
        blocks.append((v * vals) @ v.conj().T)
    return Element(blocks, p.algebra)


def twisted_candidate(g, name: str = "twisted", expected_failures=frozenset()) -> Candidate:
    """``p *~ q = sqrt(p) g(p)* q g(p) sqrt(p)`` for a unimodular ``g``."""

    def rule(p: Effect, q: Effect) -> Effect:
        r = p.sqrt()
        u = _unitary_of(p, g)
        x = r @ u.H @ q @ u @ r
        return Effect(list(((x + x.H) * 0.5).blocks), p.algebra)

    return Candidate(name, rule, certificate=lambda p: _unitary_of(p, g), g=g,
                     expected_failures=frozenset(expected_failures))


SIGN_CUT = 1.0 / math.sqrt(3.0)
PHASE_BETA = math.pi / math.log(2.0)


def sign_g(lam: float) -> complex:
    """+1 from ``1/sqrt 3`` upward, -1 below: ``g(2/3) = 1`` but ``g(4/9) = -1``."""
    return 1.0 if lam >= SIGN_CUT else -1.0


def phase_g(lam: float) -> complex:
    """``exp(i (pi / ln 2) ln lam)``, with ``g(0) = 1``; satisfies ``g(lam)**2 = g(lam**2)``."""
    if lam <= 0.0:
        return 1.0
    return complex(np.exp(1j * PHASE_BETA * math.log(lam)))


def sign_candidate() -> Candidate:
    return twisted_candidate(sign_g, "ax2-sign", expected_failures={"ax2"})


def phase_candidate() -> Candidate:
    return twisted_candidate(phase_g, "ax4-phase", expected_failures={"ax4"})


def pqp_candidate() -> Candidate:
    """``p *~ q = p q p``; no certificate."""

    def rule(p: Effect, q: Effect) -> Effect:
        x = p @ q @ p
        return Effect(list(((x + x.H) * 0.5).blocks), p.algebra)

    return Candidate("ax1-pqp", rule, expected_failures=frozenset({"ax1"}))


def builtin_candidates() -> list[Candidate]:
    return [standard_candidate(), twisted_candidate(lambda lam: 1.0, "twisted-one"),
            pqp_candidate(), sign_candidate(), phase_candidate()]


# -- instances ------------------------------------------------------------------

@dataclass
class InstanceSet:
    algebra: Algebra
    pairs: list = field(default_factory=list)        # (p, q)
    triples: list = field(default_factory=list)      # (p, e1, e2)
    homs: list = field(default_factory=list)         # multiplicative processes out of the algebra


def _rank_one_in_block(algebra: Algebra, rng) -> Projection:
    b = int(rng.integers(len(algebra.block_dims)))
    blocks = [np.zeros((n, n)) for n in algebra.block_dims]
    n = algebra.block_dims[b]
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    blocks[b] = rank_one_projection(v).blocks[0]
    return Projection(blocks, algebra)


def standard_homs(algebra: Algebra, rng, conjugations: int = 2) -> list[Process]:
    """Unitary conjugations, block doubling, coordinate projections and block permutations."""
    homs = [unitary_conjugation(random_unitary(algebra, rng)) for _ in range(conjugations)]
    if max(algebra.block_dims) * 2 <= 8:
        homs.append(block_doubling(algebra))
    k = len(algebra.block_dims)
    if k > 1:
        homs.extend(coordinate_projection(algebra, [i]) for i in range(k))
        for i in range(k - 1):
            if algebra.block_dims[i] == algebra.block_dims[i + 1]:
                perm = list(range(k))
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                homs.append(block_permutation(algebra, perm))
    return homs


def fixed_instances(algebra: Algebra) -> InstanceSet:
    """Hand-picked M2 instances: the exact counterexample data and the frozen Ax.4 witness."""
    out = InstanceSet(algebra)
    if algebra.block_dims != (2,):
        return out
    half = np.full((2, 2), 0.5)
    out.pairs.append((Effect(np.diag([1.0, 2.0 / 3.0])), Effect(half)))
    out.pairs.append((Effect(np.diag([1.0, 0.25])), algebra.unit()))
    w = load_ax4_witness()
    if w is not None:
        out.triples.append((w["p"], w["e1"], w["e2"]))
    return out


def generate_instances(algebra: Algebra, count: int, rng, *, include_fixed: bool = True) -> InstanceSet:
    inst = fixed_instances(algebra) if include_fixed else InstanceSet(algebra)
    for _ in range(count):
        inst.pairs.append((random_effect(algebra, rng), random_effect(algebra, rng)))
    for k in range(count):
        p = random_effect(algebra, rng)
        if k % 2 == 0:
            e1, e2 = _rank_one_in_block(algebra, rng), _rank_one_in_block(algebra, rng)
        else:
            e1, e2 = random_projection(algebra, rng), random_projection(algebra, rng)
        inst.triples.append((p, e1, e2))
    inst.homs = standard_homs(algebra, rng)
    return inst


# -- reports ----------------------------------------------------------------------

def _json_value(x):
    if isinstance(x, Element):
        return x.to_json()
    if isinstance(x, Process):
        return x.to_json()
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


@dataclass
class AxiomResult:
    axiom: str
    status: str
    max_residual: float
    witness: Optional[dict] = None
    certified: bool = False
    note: str = ""

    def to_json(self) -> dict:
        out = {"axiom": self.axiom, "status": self.status, "max_residual": float(self.max_residual),
               "certified": self.certified}
        if self.note:
            out["note"] = self.note
        if self.witness is not None:
            out["witness"] = {k: _json_value(v) for k, v in sorted(self.witness.items())}
        return out


@dataclass
class AxiomReport:
    candidate: str
    results: dict

    def status(self, axiom: str) -> str:
        return self.results[axiom].status

    def failed(self) -> set:
        return {a for a, r in self.results.items() if r.status == FAIL}

    def all_pass(self) -> bool:
        return all(r.status == PASS for r in self.results.values())

    def max_residual(self) -> float:
        return max(r.max_residual for r in self.results.values())

    def to_json(self) -> dict:
        return {"candidate": self.candidate, "axioms": [self.results[a].to_json() for a in sorted(self.results)]}


def _verdict(axiom: str, residual: float, witness, **kw) -> AxiomResult:
    tol = get_tolerances()
    if residual <= tol.axiom:
        return AxiomResult(axiom, PASS, residual, None, **kw)
    if residual > tol.witness_margin:
        return AxiomResult(axiom, FAIL, residual, witness, **kw)
    return AxiomResult(axiom, UNDECIDED, residual, witness,
                       note="residual between the pass tolerance and the witness margin", **kw)


def _merge_instances(instance_sets) -> list[InstanceSet]:
    return [instance_sets] if isinstance(instance_sets, InstanceSet) else list(instance_sets)


# -- Ax.1 ---------------------------------------------------------------------------

def _effect_basis(algebra: Algebra):
    """Effects spanning the algebra, and how to recover each matrix unit from them.

    Yields ``(b, i, j, combo)`` where ``combo`` lists ``(coefficient, key, effect)``;
    equal keys denote the same effect.
    """
    def unit(b, vec):
        blocks = [np.zeros((n, n)) for n in algebra.block_dims]
        v = np.asarray(vec, dtype=np.complex128)
        blocks[b] = np.outer(v, v.conj()) / np.vdot(v, v).real
        return Effect(blocks, algebra)

    for b, n in enumerate(algebra.block_dims):
        eye = np.eye(n)
        diag = [unit(b, eye[k]) for k in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    yield b, i, i, [(1.0, (b, i, i), diag[i])]
                    continue
                lo, hi = min(i, j), max(i, j)
                plus = unit(b, eye[lo] + eye[hi])
                imag = unit(b, eye[lo] + 1j * eye[hi])
                # E_lo,hi = (2P+ - D)/2 + i (2Pi - D)/2 with D = E_lo,lo + E_hi,hi; E_hi,lo is its adjoint
                s = 1j if (i, j) == (lo, hi) else -1j
                d = -(1.0 + s) / 2
                yield b, i, j, [(1.0, (b, lo, hi, "+"), plus), (s, (b, lo, hi, "i"), imag),
                                (d, (b, lo, lo), diag[lo]), (d, (b, hi, hi), diag[hi])]


def linear_extension(cand: Candidate, p: Effect) -> BlockLinearMap:
    """The linear map that agrees with ``q -> p *~ q`` on a spanning set of effects."""
    alg = p.algebra
    cache: dict = {}
    cols = []
    for b, i, j, combo in _effect_basis(alg):
        acc = alg.zero_element()
        for coeff, key, e in combo:
            if key not in cache:
                cache[key] = cand(p, e)
            acc = acc + cache[key] * coeff
        cols.append(alg.vectorize(acc))
    return BlockLinearMap(alg, alg, np.stack(cols, axis=1))


def _ax1_tier1(cand: Candidate, p: Effect, q: Effect) -> tuple[float, dict]:
    one = p.algebra.unit()
    tol = get_tolerances()
    unit_gap = (cand(p, one) - p).norm()
    lin = linear_extension(cand, p)
    choi = -min(0.0, lin.choi_min_eigenvalue())
    val = cand(p, q)
    linear_gap = (lin(q) - val).norm()
    support_gap = max(0.0, -(ceil(p) - ceil(val)).min_eigenvalue())
    parts = {"unit_gap": unit_gap, "choi_negativity": choi, "linearity_gap": linear_gap,
             "support_gap": support_gap}
    return max(parts.values()), parts


def _ax1_tier2(cand: Candidate, p: Effect, q: Effect) -> tuple[float, float]:
    """(unitarity defect of u_p on the corner, form mismatch)."""
    u = cand.certificate(p)
    emb = CornerEmbedding.of(ceil(p))
    defect = 0.0
    for k, b in emb.corner_blocks():
        v = emb.isometries[b]
        w = v.conj().T @ u.blocks[b] @ v
        eye = np.eye(w.shape[0])
        defect = max(defect, linalg.op_norm(w.conj().T @ w - eye), linalg.op_norm(w @ w.conj().T - eye))
        # u must map the corner into itself
        defect = max(defect, linalg.op_norm(u.blocks[b] @ v - v @ w))
    r = p.sqrt()
    form = (r @ u.H @ q @ u @ r - cand(p, q)).norm()
    return defect, form


def check_ax1(cand: Candidate, instance_sets) -> AxiomResult:
    worst, witness = 0.0, None
    cert_worst = 0.0
    for inst in _merge_instances(instance_sets):
        for p, q in inst.pairs:
            res, parts = _ax1_tier1(cand, p, q)
            if res > worst:
                worst, witness = res, {"algebra": inst.algebra.to_json(), "p": p, "q": q, **parts}
            if cand.certificate is not None:
                cert_worst = max(cert_worst, *_ax1_tier2(cand, p, q))
    result = _verdict("ax1", worst, witness)
    if result.status != PASS:
        result.note = result.note or "tier 1 necessary condition violated"
        return result
    if cand.certificate is None:
        return AxiomResult("ax1", UNDECIDED, worst, None, note="tier 1 passed; no certificate")
    if cert_worst > get_tolerances().axiom:
        return AxiomResult("ax1", UNDECIDED, max(worst, cert_worst), None,
                           note=f"certificate rejected (defect {cert_worst:.3g})")
    return AxiomResult("ax1", PASS, max(worst, cert_worst), None, certified=True)


def ax1_unit_gap(cand: Candidate, p) -> float:
    """``||p *~ 1 - p||``; zero for any candidate satisfying Ax.1."""
    p = Effect.coerce(p)
    return (cand(p, p.algebra.unit()) - p).norm()


# -- Ax.2 ---------------------------------------------------------------------------

def ax2_gap(cand: Candidate, p, q) -> float:
    return (cand(p, cand(p, q)) - cand(cand(p, p), q)).norm()


def check_ax2(cand: Candidate, instance_sets) -> AxiomResult:
    worst, witness = 0.0, None
    for inst in _merge_instances(instance_sets):
        for p, q in inst.pairs:
            gap = ax2_gap(cand, p, q)
            if gap > worst:
                worst, witness = gap, {"algebra": inst.algebra.to_json(), "p": p, "q": q}
    return _verdict("ax2", worst, witness)


# -- Ax.3 ---------------------------------------------------------------------------

def certify_homs(homs, rng=None) -> None:
    for f in homs:
        if not (f.is_unital() and is_multiplicative(f, rng=rng)):
            raise NotMultiplicative(f"{f!r} is not a unital *-homomorphism")


def check_ax3(cand: Candidate, instance_sets, homs=None) -> AxiomResult:
    worst, witness = 0.0, None
    for inst in _merge_instances(instance_sets):
        hs = inst.homs if homs is None else homs
        certify_homs(hs)
        for f in hs:
            for p, q in inst.pairs:
                fp, fq = Effect.coerce(f(p)), Effect.coerce(f(q))
                gap = (f(cand(p, q)) - cand(fp, fq)).norm()
                if gap > worst:
                    worst, witness = gap, {"algebra": inst.algebra.to_json(), "p": p, "q": q, "f": f}
    return _verdict("ax3", worst, witness)


# -- Ax.4 ---------------------------------------------------------------------------

def ax4_margins(cand: Candidate, p, e1, e2) -> tuple[float, float]:
    """Least eigenvalues of ``(1 - e2) - p *~ e1`` and ``(1 - e1) - p *~ e2``."""
    one = p.algebra.unit()
    return ((one - e2) - cand(p, e1)).min_eigenvalue(), ((one - e1) - cand(p, e2)).min_eigenvalue()


def ax4_violation(cand: Candidate, p, e1, e2) -> float:
    """How far the false side of a disagreeing pair is from holding; 0 when the sides agree."""
    tol = get_tolerances().order
    m1, m2 = ax4_margins(cand, p, e1, e2)
    if (m1 >= -tol) == (m2 >= -tol):
        return 0.0
    return -min(m1, m2)


def _ax4_pairs(cand: Candidate, p, e1, e2):
    """The given pair plus two partners of ``e1`` that make the left side hold exactly."""
    yield e1, e2
    one = p.algebra.unit()
    c = ceil(cand(p, e1))
    comp = one - c
    yield e1, Projection(list(comp.blocks), p.algebra, check=False)
    inside = Effect.coerce(comp @ e2 @ comp)
    if inside.norm() > 1e-6:
        yield e1, ceil(inside)


def check_ax4(cand: Candidate, instance_sets) -> AxiomResult:
    worst, witness = 0.0, None
    for inst in _merge_instances(instance_sets):
        for p, e1, e2 in inst.triples:
            for e in (e1, e2):
                if not isinstance(e, Projection):
                    raise NotProjection("Ax.4 instances need projections")
            for a, b in _ax4_pairs(cand, p, e1, e2):
                v = ax4_violation(cand, p, a, b)
                if v > worst:
                    worst, witness = v, {"algebra": inst.algebra.to_json(), "p": p, "e1": a, "e2": b}
    return _verdict("ax4", worst, witness)


def check_all(cand: Candidate, instance_sets) -> AxiomReport:
    sets = _merge_instances(instance_sets)
    return AxiomReport(cand.name, {
        "ax1": check_ax1(cand, sets),
        "ax2": check_ax2(cand, sets),
        "ax3": check_ax3(cand, sets),
        "ax4": check_ax4(cand, sets),
    })


# -- uniqueness ---------------------------------------------------------------------

@dataclass
class DemoReport:
    candidate: str
    max_deviation: float         # max ||p *~ q - sqrt(p) q sqrt(p)||
    waypoint_residual: float     # max ||p^2 *~ q - p q p||
    passed: bool

    def to_json(self) -> dict:
        return {"candidate": self.candidate, "max_deviation": float(self.max_deviation),
                "waypoint_residual": float(self.waypoint_residual), "passed": self.passed}


def uniqueness_demo(cand: Candidate, instance_sets, report: Optional[AxiomReport] = None) -> DemoReport:
    """A candidate with certified Ax.1 that passes Ax.2-Ax.4 must be the standard product."""
    sets = _merge_instances(instance_sets)
    report = check_all(cand, sets) if report is None else report
    failed = [a for a in AXIOMS if report.status(a) != PASS or (a == "ax1" and not report.results[a].certified)]
    if failed:
        raise AxiomPrereqFailed(f"{cand.name} does not pass {', '.join(failed)}", failed)
    dev = way = 0.0
    for inst in sets:
        for p, q in inst.pairs:
            dev = max(dev, (cand(p, q) - seq_product(p, q)).norm())
            p2 = Effect.coerce(p @ p)
            way = max(way, (cand(p2, q) - p @ q @ p).norm())
    tol = get_tolerances().demo
    return DemoReport(cand.name, dev, way, dev <= tol and way <= tol)


# -- the Ax.4 witness for the phase candidate -----------------------------------------

WITNESS_RESOURCE = "ax4_phase_witness.json"


def search_ax4_witness(cand: Candidate, rng: Optional[np.random.Generator] = None, random_tries: int = 2000):
    """First M2 triple ``(p, e1, e2)`` with rank-one ``e1, e2`` violating Ax.4 by more than the margin.

    A deterministic grid comes first (diagonal ``p`` and Bloch-sphere
    directions for ``e1``, ``e2`` chosen orthogonal to ``p *~ e1``), then
    random rank-one pairs.
    """
    margin = get_tolerances().witness_margin
    alg = Algebra((2,))

    def bloch(theta, phi):
        return np.array([math.cos(theta / 2), complex(np.exp(1j * phi)) * math.sin(theta / 2)])

    def attempt(p, v):
        e1 = rank_one_projection(v)
        x = cand(p, e1)
        eig = x.eig[0]
        w = eig.eigenvectors[:, 0]           # least eigenvector: orthogonal to the range of a rank-one x
        e2 = rank_one_projection(w)
        viol = ax4_violation(cand, p, e1, e2)
        return (p, e1, e2, viol) if viol > margin else None

    for lam in (0.5, 1.0 / math.sqrt(2.0), 0.25, 0.75, 0.3):
        p = Effect(np.diag([1.0, lam]))
        for theta in np.linspace(0.0, math.pi, 7)[1:-1]:
            for phi in np.linspace(0.0, 2 * math.pi, 8, endpoint=False):
                found = attempt(p, bloch(theta, phi))
                if found:
                    return found
    rng = np.random.default_rng(0) if rng is None else rng
    for _ in range(random_tries):
        p = random_effect(alg, rng)
        found = attempt(p, rng.standard_normal(2) + 1j * rng.standard_normal(2))
        if found:
            return found
    return None


def witness_to_json(p, e1, e2, violation) -> dict:
    return {"candidate": "ax4-phase", "algebra": [2], "p": p.to_json(), "e1": e1.to_json(), "e2": e2.to_json(),
            "violation": float(violation)}


def load_ax4_witness() -> Optional[dict]:
    try:
        text = resources.files("seqprod.data").joinpath(WITNESS_RESOURCE).read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        return None
    obj = json.loads(text)
    return {
        "p": Effect.from_json(obj["p"]),
        "e1": Projection.from_json(obj["e1"]),
        "e2": Projection.from_json(obj["e2"]),
        "violation": float(obj["violation"]),
    }


# -- the three counterexample families ------------------------------------------------

COUNTEREXAMPLES = ("ax1-pqp", "ax2-sign", "ax4-phase")

# ||p *~ (p *~ q) - (p *~ p) *~ q|| for the sign candidate at p = diag(1, 2/3), q = [[1,1],[1,1]]/2.
# The difference is p (q - u q u) p with u = diag(1, -1), i.e. [[0, 2/3], [2/3, 0]]; pinned from an
# exact rational computation.
AX2_SIGN_GAP = 2.0 / 3.0
AX1_PQP_GAP = 3.0 / 16.0


def _profile(cand: Candidate, samples: int, rng) -> AxiomReport:
    inst = generate_instances(Algebra((2,)), samples, rng)
    return check_all(cand, inst)


def _summary(cand: Candidate, report: AxiomReport, data: dict) -> dict:
    claimed = sorted(cand.expected_failures)
    observed = sorted(report.failed())
    return {
        "name": cand.name,
        "claimed_failures": claimed,
        "observed_failures": observed,
        "unexpected_failures": sorted(set(observed) - set(claimed)),
        "reproduced": observed == claimed and all(
            report.status(a) == PASS for a in AXIOMS if a not in claimed),
        "report": report.to_json(),
        **data,
    }


def counterexample(name: str, samples: int = 500, rng: Optional[np.random.Generator] = None) -> dict:
    """Reproduce one counterexample family on M2.

    ``reproduced`` is true iff exactly the claimed axiom fails and the others pass.
    """
    from .errors import UnknownName

    rng = np.random.default_rng(0) if rng is None else rng
    if name == "ax1-pqp":
        cand = pqp_candidate()
        p = Effect(np.diag([1.0, 0.25]))
        data = {"p": p.to_json(), "unit_gap": ax1_unit_gap(cand, p), "expected_unit_gap": AX1_PQP_GAP}
    elif name == "ax2-sign":
        cand = sign_candidate()
        p = Effect(np.diag([1.0, 2.0 / 3.0]))
        q = Effect(np.full((2, 2), 0.5))
        p2 = cand(p, p)
        lhs, rhs = cand(p, cand(p, q)), cand(p2, q)
        gap = (lhs - rhs).norm()
        data = {
            "p": p.to_json(), "q": q.to_json(),
            "u_p": _unitary_of(p, sign_g).to_json(), "u_p2": _unitary_of(p2, sign_g).to_json(),
            "p*(p*q)": lhs.to_json(), "(p*p)*q": rhs.to_json(),
            "gap": gap, "expected_gap": AX2_SIGN_GAP,
            # q = [[1,1],[1,1]]/sqrt 2 has norm sqrt 2, so it is not an effect; by linearity in q its gap is sqrt(2) times larger
            "gap_for_unnormalized_q": gap * math.sqrt(2.0),
        }
    elif name == "ax4-phase":
        cand = phase_candidate()
        w = load_ax4_witness()
        if w is None:
            raise FileNotFoundError(WITNESS_RESOURCE)
        m1, m2 = ax4_margins(cand, w["p"], w["e1"], w["e2"])
        data = {"p": w["p"].to_json(), "e1": w["e1"].to_json(), "e2": w["e2"].to_json(),
                "margins": [m1, m2], "violation": ax4_violation(cand, w["p"], w["e1"], w["e2"]),
                "recorded_violation": w["violation"]}
    else:
        raise UnknownName(name)
    return _summary(cand, _profile(cand, samples, rng), data)
