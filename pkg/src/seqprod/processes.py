"""Completely positive maps between finite-dimensional algebras.

A :class:`Process` is stored as Kraus operators per route
``(source block i) -> (target block j)`` and acts as

    f(a)_j = sum_i sum_K  K^* a_i K,        K of shape (n_i, m_j),

so the compression ``b -> sqrt(p) b sqrt(p)`` is the single-Kraus process
with ``K = sqrt(p)``.  Normality is automatic in finite dimension, so a
process is just a completely positive contraction.

A :class:`BlockLinearMap` is an arbitrary linear map given by its matrix on
row-major vectorized elements; it carries no positivity claim and is how
non-CP maps (the transpose, candidate mediators) are represented.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional

import numpy as np

from . import linalg
from .config import get_tolerances
from .effects import Algebra, Effect, Element, Projection, as_element, ceil, is_projection
from .errors import (AlgebraMismatch, Not2Positive, NotCompletelyPositive, NotMutuallyInverse,
                     NotUnital, ShapeMismatch)

Route = tuple[int, int]


def _block_offsets(algebra: Algebra) -> list[int]:
    out, acc = [], 0
    for n in algebra.block_dims:
        out.append(acc)
        acc += n * n
    return out


def _route_choi(sub: np.ndarray, n: int, m: int) -> np.ndarray:
    """Choi matrix sum_kl E_kl (x) f(E_kl) of a map M_n -> M_m given by its vectorized matrix."""
    # sub[(s, t), (k, l)] = f(E_kl)[s, t];  J[(k, s), (l, t)] = f(E_kl)[s, t]
    return sub.reshape(m, m, n, n).transpose(2, 0, 3, 1).reshape(n * m, n * m)


class Process:
    """Completely positive map given by Kraus operators per block route."""

    def __init__(self, source: Algebra, target: Algebra, kraus: dict):
        self.source = source
        self.target = target
        routes = {}
        for (i, j), ops in kraus.items():
            i, j = int(i), int(j)
            if not (0 <= i < len(source.block_dims) and 0 <= j < len(target.block_dims)):
                raise ShapeMismatch(f"route {i}->{j} outside {source} -> {target}")
            shape = (source.block_dims[i], target.block_dims[j])
            mats = []
            for k in ops:
                k = linalg.as_cmatrix(k, square=False).copy()
                if k.shape != shape:
                    raise ShapeMismatch(f"Kraus operator on route {i}->{j} has shape {k.shape}, expected {shape}")
                k.setflags(write=False)
                mats.append(k)
            if mats:
                routes[(i, j)] = tuple(mats)
        self.kraus = routes

    def __repr__(self):
        counts = {f"{i}->{j}": len(ks) for (i, j), ks in sorted(self.kraus.items())}
        return f"Process({self.source} -> {self.target}, kraus={counts})"

    # -- evaluation -------------------------------------------------------
    def apply(self, a):
        """Apply to an element of the source (or a bare matrix for single-block sources).

        Effects map to effects, projections to elements (they need not stay sharp).
        """
        bare = not isinstance(a, Element)
        x = as_element(a, self.source if not bare else None)
        if x.algebra != self.source:
            raise AlgebraMismatch(f"input lives in {x.algebra}, process expects {self.source}")
        out = [np.zeros((m, m), dtype=np.complex128) for m in self.target.block_dims]
        for (i, j), ops in self.kraus.items():
            blk = x.blocks[i]
            for k in ops:
                out[j] += k.conj().T @ blk @ k
        y = Element(out, self.target)
        if bare:
            return y.matrix() if len(out) == 1 else y
        if isinstance(a, Effect):
            return Effect(list(y.blocks), self.target)
        return y

    __call__ = apply

    def unit_image(self) -> Element:
        return self.apply(self.source.unit() * 1.0)

    def compose(self, inner: "Process") -> "Process":
        """``self o inner`` (apply ``inner`` first)."""
        if inner.target != self.source:
            raise AlgebraMismatch(f"cannot compose {self} after {inner}")
        kraus: dict[Route, list] = {}
        for (i, k), k1s in inner.kraus.items():
            for (k2_src, j), k2s in self.kraus.items():
                if k2_src != k:
                    continue
                kraus.setdefault((i, j), []).extend(a @ b for a in k1s for b in k2s)
        return Process(inner.source, self.target, kraus)

    def scaled(self, t: float) -> "Process":
        s = np.sqrt(t)
        return Process(self.source, self.target, {r: [k * s for k in ks] for r, ks in self.kraus.items()})

    # -- representations --------------------------------------------------
    @cached_property
    def linear(self) -> "BlockLinearMap":
        """Matrix on vectorized elements.  Cached; computing it twice is harmless."""
        src_off = _block_offsets(self.source)
        tgt_off = _block_offsets(self.target)
        mat = np.zeros((self.target.dimension, self.source.dimension), dtype=np.complex128)
        for (i, j), ops in self.kraus.items():
            n, m = self.source.block_dims[i], self.target.block_dims[j]
            for k in ops:
                # row-major vec(K^* a K) = (K^* (x) K^T) vec(a)
                mat[tgt_off[j]:tgt_off[j] + m * m, src_off[i]:src_off[i] + n * n] += np.kron(k.conj().T, k.T)
        return BlockLinearMap(self.source, self.target, mat)

    @property
    def choi(self) -> dict[Route, np.ndarray]:
        return self.linear.choi

    # -- predicates -------------------------------------------------------
    def is_completely_positive(self) -> bool:
        return self.linear.is_completely_positive()

    def is_contractive(self) -> bool:
        return self.unit_image().norm() <= 1.0 + get_tolerances().contractive

    def is_unital(self) -> bool:
        return self.unit_image().allclose(self.target.unit(), get_tolerances().unital)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "kraus": {f"{i}->{j}": [linalg.matrix_to_json(k) for k in ks] for (i, j), ks in sorted(self.kraus.items())},
        }


class BlockLinearMap:
    """Linear map between algebras, as a matrix acting on vectorized elements."""

    def __init__(self, source: Algebra, target: Algebra, matrix):
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (target.dimension, source.dimension):
            raise ShapeMismatch(f"matrix shape {matrix.shape} != {(target.dimension, source.dimension)}")
        matrix = matrix.copy()
        matrix.setflags(write=False)
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def from_function(cls, source: Algebra, target: Algebra, fn) -> "BlockLinearMap":
        cols = [target.vectorize(as_element(fn(e), target)) for *_, e in source.matrix_units()]
        mat = np.stack(cols, axis=1) if cols else np.zeros((target.dimension, 0))
        return cls(source, target, mat)

    @property
    def linear(self) -> "BlockLinearMap":
        return self

    def apply(self, a):
        bare = not isinstance(a, Element)
        x = as_element(a, None if bare else self.source)
        if x.algebra != self.source:
            raise AlgebraMismatch(f"input lives in {x.algebra}, map expects {self.source}")
        y = self.target.unvectorize(self.matrix @ self.source.vectorize(x))
        if bare and len(y.blocks) == 1:
            return y.matrix()
        return y

    __call__ = apply

    def unit_image(self) -> Element:
        return self.apply(self.source.unit() * 1.0)

    def compose(self, inner) -> "BlockLinearMap":
        inner = inner.linear
        if inner.target != self.source:
            raise AlgebraMismatch(f"cannot compose {self.source} map after map into {inner.target}")
        return BlockLinearMap(inner.source, self.target, self.matrix @ inner.matrix)

    def __add__(self, other: "BlockLinearMap") -> "BlockLinearMap":
        other = other.linear
        if (other.source, other.target) != (self.source, self.target):
            raise AlgebraMismatch("maps between different algebras")
        return BlockLinearMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other):
        return self + other.linear * -1.0

    def __mul__(self, t):
        return BlockLinearMap(self.source, self.target, self.matrix * t)

    __rmul__ = __mul__

    def route_matrix(self, i: int, j: int) -> np.ndarray:
        so, to = _block_offsets(self.source), _block_offsets(self.target)
        n, m = self.source.block_dims[i], self.target.block_dims[j]
        return self.matrix[to[j]:to[j] + m * m, so[i]:so[i] + n * n]

    @cached_property
    def choi(self) -> dict[Route, np.ndarray]:
        out = {}
        for i, n in enumerate(self.source.block_dims):
            for j, m in enumerate(self.target.block_dims):
                out[(i, j)] = _route_choi(self.route_matrix(i, j), n, m)
        return out

    def choi_min_eigenvalue(self) -> float:
        return min((linalg.min_eigenvalue(c) for c in self.choi.values()), default=0.0)

    def is_completely_positive(self, tol: Optional[float] = None) -> bool:
        tol = get_tolerances().positivity if tol is None else tol
        return all(linalg.is_positive(c, tol) for c in self.choi.values())

    def is_hermitian_preserving(self) -> bool:
        return all(linalg.op_norm(c - c.conj().T) <= 1e-9 * max(1.0, linalg.op_norm(c)) for c in self.choi.values())

    def is_contractive(self) -> bool:
        return self.unit_image().norm() <= 1.0 + get_tolerances().contractive

    def is_unital(self) -> bool:
        return self.unit_image().allclose(self.target.unit(), get_tolerances().unital)

    def to_process(self, tol: Optional[float] = None) -> Process:
        """Kraus form from the Choi matrices; fails unless the map is CP."""
        tol = get_tolerances().positivity if tol is None else tol
        kraus: dict[Route, list] = {}
        for (i, j), c in self.choi.items():
            n, m = self.source.block_dims[i], self.target.block_dims[j]
            h = 0.5 * (c + c.conj().T)
            eig = linalg.eig_hermitian(h)
            scale = max(1.0, float(np.max(np.abs(eig.eigenvalues))))
            if eig.eigenvalues[0] < -tol * scale:
                raise NotCompletelyPositive(f"Choi block {i}->{j} has eigenvalue {eig.eigenvalues[0]:.3g}")
            cut = linalg.rank_threshold(float(eig.eigenvalues[-1]))
            for lam, w in zip(eig.eigenvalues, eig.eigenvectors.T):
                if lam > cut:
                    kraus.setdefault((i, j), []).append(np.conj(np.sqrt(lam) * w).reshape(n, m))
        return Process(self.source, self.target, kraus)

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "matrix": linalg.matrix_to_json(self.matrix)}


def process_from_json(obj):
    """Parse Process JSON; a ``"matrix"`` key instead of ``"kraus"`` yields a BlockLinearMap."""
    source = Algebra(tuple(obj["source"]))
    target = Algebra(tuple(obj["target"]))
    if "matrix" in obj:
        return BlockLinearMap(source, target, linalg.matrix_from_json(obj["matrix"]))
    kraus = {}
    for key, mats in obj["kraus"].items():
        i, j = (int(x) for x in key.split("->"))
        kraus[(i, j)] = [linalg.matrix_from_json(m) for m in mats]
    return Process(source, target, kraus)


# -- standard maps ----------------------------------------------------------

def identity_process(algebra: Algebra) -> Process:
    return Process(algebra, algebra, {(i, i): [np.eye(n)] for i, n in enumerate(algebra.block_dims)})


def conjugation(a) -> Process:
    """``b -> a^* b a`` on the algebra of ``a``."""
    a = as_element(a)
    return Process(a.algebra, a.algebra, {(i, i): [blk] for i, blk in enumerate(a.blocks)})


def unitary_conjugation(u) -> Process:
    """``a -> u^* a u``."""
    return conjugation(u)


def block_doubling(algebra: Algebra, copies: int = 2) -> Process:
    """``a -> diag(a, ..., a)`` blockwise, M_n -> M_{copies n}."""
    target = Algebra(tuple(copies * n for n in algebra.block_dims))
    kraus = {}
    for i, n in enumerate(algebra.block_dims):
        ops = []
        for c in range(copies):
            k = np.zeros((n, copies * n))
            k[:, c * n:(c + 1) * n] = np.eye(n)
            ops.append(k)
        kraus[(i, i)] = ops
    return Process(algebra, target, kraus)


def coordinate_projection(algebra: Algebra, keep) -> Process:
    """``(a_0, ..., a_k) -> (a_i for i in keep)``."""
    keep = list(keep)
    target = Algebra(tuple(algebra.block_dims[i] for i in keep))
    return Process(algebra, target, {(i, t): [np.eye(algebra.block_dims[i])] for t, i in enumerate(keep)})


def block_permutation(algebra: Algebra, perm) -> Process:
    """Send block ``i`` to position ``perm[i]``."""
    perm = list(perm)
    if sorted(perm) != list(range(len(algebra.block_dims))):
        raise ValueError(f"{perm} is not a permutation")
    dims = [0] * len(perm)
    for i, t in enumerate(perm):
        dims[t] = algebra.block_dims[i]
    return Process(algebra, Algebra(tuple(dims)), {(i, t): [np.eye(algebra.block_dims[i])] for i, t in enumerate(perm)})


def state(rho) -> Process:
    """Normal state ``a -> tr(a rho)`` on M_n for a density matrix ``rho``."""
    rho = linalg.as_cmatrix(rho)
    eig = linalg.eig_hermitian(rho)
    ops = [np.sqrt(max(lam, 0.0)) * v.reshape(-1, 1) for lam, v in zip(eig.eigenvalues, eig.eigenvectors.T) if lam > 0]
    n = rho.shape[0]
    return Process(Algebra((n,)), Algebra((1,)), {(0, 0): ops or [np.zeros((n, 1))]})


def transpose_map(algebra: Algebra) -> BlockLinearMap:
    return BlockLinearMap.from_function(algebra, algebra, lambda e: Element([b.T for b in e.blocks], algebra))


def as_linear(f) -> BlockLinearMap:
    return f.linear


# -- positivity ---------------------------------------------------------------

def choi(f) -> dict[Route, np.ndarray]:
    """Choi matrix per route; f is CP iff every block is positive semidefinite."""
    return f.linear.choi


def _amplified_outputs(lin: BlockLinearMap, i: int, x: np.ndarray, N: int) -> list[np.ndarray]:
    n = lin.source.block_dims[i]
    blocks = x.reshape(N, n, N, n).transpose(0, 2, 1, 3).reshape(N * N, n * n)
    outs = []
    for j, m in enumerate(lin.target.block_dims):
        y = blocks @ lin.route_matrix(i, j).T
        outs.append(y.reshape(N, N, m, m).transpose(0, 2, 1, 3).reshape(N * m, N * m))
    return outs


def is_n_positive(f, N: int, samples: int = 200, rng: Optional[np.random.Generator] = None) -> bool:
    """N-positivity of ``f``.

    Exact (Choi criterion) on every source block of size ``<= N``; sampled
    with rank-one positive inputs of ``M_N(M_n)`` otherwise.  Sampling runs
    on every block and a sampled violation must never contradict a positive
    Choi verdict.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    rng = np.random.default_rng(0) if rng is None else rng
    lin = f.linear
    tol = get_tolerances().positivity
    verdict = True
    for i, n in enumerate(lin.source.block_dims):
        exact = None
        if N >= n:
            exact = all(linalg.is_positive(lin.choi[(i, j)], tol) for j in range(len(lin.target.block_dims)))
        sampled = True
        for _ in range(samples):
            v = rng.standard_normal(N * n) + 1j * rng.standard_normal(N * n)
            x = np.outer(v, v.conj()) / np.vdot(v, v).real
            if not all(linalg.is_positive(y, tol) for y in _amplified_outputs(lin, i, x, N)):
                sampled = False
                break
        if exact is not None:
            if exact and not sampled:
                raise AssertionError("sampled N-positivity violation contradicts a positive Choi matrix")
            verdict &= exact
        else:
            verdict &= sampled
    return bool(verdict)


def is_two_positive(f, samples: int = 200, rng: Optional[np.random.Generator] = None) -> bool:
    lin = f.linear
    if lin.is_completely_positive():
        return True
    return is_n_positive(lin, 2, samples, rng)


# -- multiplicativity ---------------------------------------------------------

def multiplicative_residual(f, samples: int, rng: np.random.Generator) -> float:
    from .sampling import random_element

    one = f.unit_image()
    worst = 0.0
    for _ in range(samples):
        a = random_element(f.source, rng)
        b = random_element(f.source, rng)
        worst = max(worst, (one @ f(a @ b) - f(a) @ f(b)).norm())
    return worst


def is_multiplicative(f, samples: int = 20, rng: Optional[np.random.Generator] = None) -> bool:
    """``f(1) f(ab) == f(a) f(b)`` on random pairs."""
    rng = np.random.default_rng(0) if rng is None else rng
    return multiplicative_residual(f, samples, rng) <= get_tolerances().multiplicative


def preserves_projections(f, samples: int = 20, rng: Optional[np.random.Generator] = None) -> bool:
    from .sampling import random_projection

    rng = np.random.default_rng(0) if rng is None else rng
    tol = get_tolerances().multiplicative
    for _ in range(samples):
        y = f(random_projection(f.source, rng, proper=True) * 1.0)
        if not is_projection(y, tol):
            return False
    return True


def preserves_ceilings(f, samples: int = 20, rng: Optional[np.random.Generator] = None) -> bool:
    from .sampling import random_effect

    rng = np.random.default_rng(0) if rng is None else rng
    tol = get_tolerances().multiplicative
    for _ in range(samples):
        a = random_effect(f.source, rng, sharp_prob=0.6)
        lhs = ceil(Effect.coerce(f(a * 1.0)))
        rhs = f(ceil(a) * 1.0)
        if (lhs - rhs).norm() > tol:
            return False
    return True


class AwmultReport(NamedTuple):
    multiplicative: bool
    preserves_projections: bool
    preserves_ceilings: bool

    def agree(self) -> bool:
        return len(set(self)) == 1


def awmult_equivalence(f, samples: int = 20, rng: Optional[np.random.Generator] = None) -> AwmultReport:
    """For a unital 2-positive map: multiplicative, projection-preserving and
    ceiling-preserving must all hold or all fail."""
    rng = np.random.default_rng(0) if rng is None else rng
    if not f.is_unital():
        raise NotUnital(f"f(1) differs from 1 by {(f.unit_image() - f.target.unit()).norm():.3g}")
    if not is_two_positive(f, rng=rng):
        raise Not2Positive("map is not 2-positive")
    return AwmultReport(
        is_multiplicative(f, samples, rng),
        preserves_projections(f, samples, rng),
        preserves_ceilings(f, samples, rng),
    )


def support_ineq_check(f, a: Effect) -> bool:
    """``f(ceil a) <= ceil f(a)`` and ``ceil f(ceil a) == ceil f(a)``."""
    tol = get_tolerances()
    a = Effect.coerce(a)
    ca = ceil(a)
    f_ca = Effect.coerce(f(ca * 1.0))
    c_fa = ceil(Effect.coerce(f(a * 1.0)))
    return f_ca.leq(c_fa, tol.order) and (ceil(f_ca) - c_fa).norm() <= tol.order


# -- Cauchy-Schwarz machinery -------------------------------------------------

class CSReport(NamedTuple):
    item1: bool
    item2: bool
    item3: bool
    slacks: tuple[float, float, float]

    def all(self) -> bool:
        return self.item1 and self.item2 and self.item3


def cs_inequalities(f, a, b, *, check_two_positive: bool = True) -> CSReport:
    """Cauchy-Schwarz inequalities for a 2-positive map:

    1. f(b*a) f(a*b) <= ||f(a*a)|| f(b*b)
    2. f(a*b) f(b*a) <= ||f(b*b)|| f(a*a)
    3. ||f(a*b)||^2 <= ||f(a*a)|| ||f(b*b)||

    Slacks are normalized by ``max(1, ||f(a*a)|| ||f(b*b)||)``.
    """
    if check_two_positive and not is_two_positive(f):
        raise Not2Positive("Cauchy-Schwarz needs a 2-positive map")
    a, b = as_element(a, f.source), as_element(b, f.source)
    faa, fbb = f(a.H @ a), f(b.H @ b)
    fab, fba = f(a.H @ b), f(b.H @ a)
    naa, nbb = faa.norm(), fbb.norm()
    scale = max(1.0, naa * nbb)
    s1 = (fbb * naa - fba @ fab).min_eigenvalue() / scale
    s2 = (faa * nbb - fab @ fba).min_eigenvalue() / scale
    s3 = (naa * nbb - fab.norm() ** 2) / scale
    tol = get_tolerances().cs_slack
    return CSReport(s1 >= -tol, s2 >= -tol, s3 >= -tol, (s1, s2, s3))


def kadison_slack(rho, a, b) -> float:
    """``phi(a*a) phi(b*b) - |phi(a*b)|^2`` for the state ``phi = tr(. rho)``, computed with traces."""
    rho, a, b = (linalg.as_cmatrix(x) for x in (rho, a, b))
    phi = lambda x: np.trace(x @ rho)  # noqa: E731
    ad = a.conj().T
    bd = b.conj().T
    return float((phi(ad @ a) * phi(bd @ b)).real - abs(phi(ad @ b)) ** 2)


class Block2Report(NamedTuple):
    positive: bool
    pointwise: bool                 # |<Ay, x>|^2 <= <Px, x><Qy, y> at the extremal vector
    item3: Optional[bool]           # A*A <= ||P|| Q
    item4: Optional[bool]           # AA* <= ||Q|| P
    item5: Optional[bool]           # ||A||^2 <= ||P|| ||Q||
    slacks: tuple


def block2_positivity(P, A, Q) -> Block2Report:
    """Positivity of ``[[P, A], [A*, Q]]`` and, when positive, its norm consequences."""
    P = linalg.as_cmatrix(P)
    Q = linalg.as_cmatrix(Q)
    A = linalg.as_cmatrix(A, square=False)
    n, m = P.shape[0], Q.shape[0]
    if A.shape != (n, m):
        raise ShapeMismatch(f"A has shape {A.shape}, expected {(n, m)}")
    T = np.block([[P, A], [A.conj().T, Q]])
    tol = get_tolerances()
    eig = linalg.eig_hermitian(T)
    scale = max(1.0, linalg.op_norm(T))
    positive = bool(eig.eigenvalues[0] >= -tol.positivity * scale)
    z = eig.eigenvectors[:, 0]
    x, y = z[:n], z[n:]
    lhs = abs(np.vdot(x, A @ y)) ** 2
    px = np.vdot(x, P @ x).real
    qy = np.vdot(y, Q @ y).real
    pq_pos = linalg.is_positive(P, tol.positivity) and linalg.is_positive(Q, tol.positivity)
    pointwise = bool(pq_pos and lhs <= px * qy + tol.cs_slack * scale ** 2)
    if not positive:
        return Block2Report(False, pointwise, None, None, None, ())
    nP, nQ, nA = linalg.op_norm(P), linalg.op_norm(Q), linalg.op_norm(A)
    s3 = linalg.min_eigenvalue(nP * Q - A.conj().T @ A)
    s4 = linalg.min_eigenvalue(nQ * P - A @ A.conj().T)
    s5 = nP * nQ - nA ** 2
    slack = -tol.cs_slack * max(1.0, nP * nQ)
    return Block2Report(True, pointwise, s3 >= slack, s4 >= slack, s5 >= slack, (s3, s4, s5))


def conjugation_is_cp(a) -> bool:
    """``b -> a* b a`` always has a positive semidefinite Choi matrix."""
    return conjugation(a).linear.is_completely_positive()


def invertible_process_is_iso(f, f_inv, samples: int = 20, rng: Optional[np.random.Generator] = None) -> bool:
    """For mutually inverse processes, ``f`` must be a unital *-homomorphism."""
    rng = np.random.default_rng(0) if rng is None else rng
    tol = get_tolerances().inverse
    fl, gl = f.linear, f_inv.linear
    for outer, inner in ((fl, gl), (gl, fl)):
        comp = outer.compose(inner)
        if comp.source != comp.target or linalg.op_norm(comp.matrix - np.eye(comp.source.dimension)) > tol:
            raise NotMutuallyInverse("maps do not compose to the identity")
    return f.is_unital() and is_multiplicative(f, samples, rng)


def certify(f, samples: int = 100, rng: Optional[np.random.Generator] = None) -> dict:
    """Property record for a map (a report, not a judgment)."""
    rng = np.random.default_rng(0) if rng is None else rng
    lin = f.linear
    return {
        "positive": is_n_positive(lin, 1, samples, rng),
        "2-positive": is_two_positive(lin, samples, rng),
        "completely-positive": lin.is_completely_positive(),
        "unital": lin.is_unital(),
        "contractive": lin.is_contractive(),
        "multiplicative": is_multiplicative(lin, min(samples, 20), rng),
        "projection-preserving": preserves_projections(lin, min(samples, 20), rng),
    }
