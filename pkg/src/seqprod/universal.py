"""Corners and compressions of an effect, and their mediating maps.

For an effect ``p`` in ``A``:

* the compression ``c: cAc -> A`` (``c = ceil p``) is ``b -> sqrt(p) b sqrt(p)``.
  It is final among processes ``f`` with ``f(1) <= p``: each factors
  uniquely as ``f = c o fbar``.
* the corner ``pi: A -> eAe`` (``e = floor p``) is ``a -> e a e``.  It is
  initial among processes ``g`` with ``g(p) = g(1)``: each factors uniquely
  as ``g = gbar o pi``.

Corner algebras are honest smaller algebras: block ``b`` of ``eAe`` is
``M_r`` with ``r = rank(e_b)``, reached through an isometry ``V_b`` whose
columns span the range of ``e_b``.  Blocks where ``e`` vanishes are dropped,
so ``p = 0`` gives the zero algebra.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import linalg
from .config import get_tolerances
from .effects import Algebra, Effect, Projection, ceil, floor
from .errors import NoConvergence, NoSolution, PreconditionViolated
from .processes import BlockLinearMap, Process


@dataclass(frozen=True)
class CornerEmbedding:
    parent: Algebra
    projection: Projection
    isometries: tuple[np.ndarray, ...]      # one per parent block, shape (n_b, rank_b)
    corner_algebra: Algebra
    parent_block: tuple[int, ...]           # parent block of each corner block

    @classmethod
    def of(cls, e: Projection) -> "CornerEmbedding":
        isos, dims, parents = [], [], []
        for b, eig in enumerate(e.eig):
            v = eig.eigenvectors[:, eig.eigenvalues > 0.5]
            isos.append(v)
            if v.shape[1]:
                dims.append(v.shape[1])
                parents.append(b)
        return cls(e.algebra, e, tuple(isos), Algebra(tuple(dims)), tuple(parents))

    def corner_blocks(self):
        """Pairs ``(corner block k, parent block b)``."""
        return enumerate(self.parent_block)

    def restrict(self) -> Process:
        """``a -> V* a V`` from the parent onto the corner."""
        return Process(self.parent, self.corner_algebra,
                       {(b, k): [self.isometries[b]] for k, b in self.corner_blocks()})

    def include(self) -> Process:
        """``x -> V x V*`` from the corner into the parent (the non-unital inclusion)."""
        return Process(self.corner_algebra, self.parent,
                       {(k, b): [self.isometries[b].conj().T] for k, b in self.corner_blocks()})


@dataclass(frozen=True)
class FactorizationResult:
    mediator: Process
    residual: float
    unique: bool
    stable_from: Optional[int] = None      # only for the q_n construction


def make_corner(p) -> tuple[CornerEmbedding, Process]:
    """Corner of ``p``: the embedding for ``floor p`` and ``pi(a) = V* a V``."""
    emb = CornerEmbedding.of(floor(Effect.coerce(p)))
    return emb, emb.restrict()


def make_compression(p) -> tuple[CornerEmbedding, Process]:
    """Compression of ``p``: the embedding for ``ceil p`` and ``c(b) = sqrt(p) V b V* sqrt(p)``."""
    p = Effect.coerce(p)
    emb = CornerEmbedding.of(ceil(p))
    root = p.sqrt()
    kraus = {(k, b): [emb.isometries[b].conj().T @ root.blocks[b]] for k, b in emb.corner_blocks()}
    return emb, Process(emb.corner_algebra, p.algebra, kraus)


def product_via_corner(p, q) -> Effect:
    """``c(pi(q))`` with ``c`` the compression of ``p`` and ``pi`` the corner of ``ceil p``.

    Both maps must use the same basis of the range of ``ceil p``, so ``pi`` is
    taken from the compression's own embedding.
    """
    emb, c = make_compression(p)
    return Effect.coerce(c(emb.restrict()(Effect.coerce(q))))


def _residual(lhs, rhs, source: Algebra) -> float:
    """Max over matrix units of ``||lhs(E) - rhs(E)||``."""
    worst = 0.0
    for *_, e in source.matrix_units():
        worst = max(worst, (lhs(e) - rhs(e)).norm())
    return worst


def factor_through_compression(f: Process, p) -> FactorizationResult:
    """Unique ``fbar`` with ``c o fbar = f``, namely ``fbar(b) = V* s f(b) s V`` with ``s = pinv(sqrt p)``."""
    p = Effect.coerce(p)
    tol = get_tolerances()
    if f.target != p.algebra:
        raise PreconditionViolated(f"f lands in {f.target}, p lives in {p.algebra}")
    if not f.unit_image().leq(p, tol.order):
        raise PreconditionViolated("f(1) <= p fails")
    emb, c = make_compression(p)
    s = p.sqrt().pinv()
    kraus = {}
    for (i, b), ops in f.kraus.items():
        for k, parent in emb.corner_blocks():
            if parent == b:
                kraus[(i, k)] = [op @ s.blocks[b] @ emb.isometries[b] for op in ops]
    fbar = Process(f.source, emb.corner_algebra, kraus)
    residual = _residual(c.compose(fbar), f, f.source)
    return FactorizationResult(fbar, residual, mediator_uniqueness_probe(c, f, side="post", candidate=fbar))


def _q(p: Effect, n: int) -> list[np.ndarray]:
    """``q_n = sum over lambda_k >= 1/n of lambda_k^(-1/2) e_k e_k*`` per block.

    The cut is closed so that ``q_n`` is final from ``n = ceil(1/lambda_min)``;
    a projection is already final at ``n = 1``.
    """
    out = []
    for e in p.eig:
        lam = e.eigenvalues
        keep = (lam >= (1.0 - 1e-12) / n) & (lam > linalg.rank_threshold(float(lam[-1])))
        vals = np.zeros_like(lam)
        vals[keep] = lam[keep] ** -0.5
        v = e.eigenvectors
        out.append((v * vals) @ v.conj().T)
    return out


def factor_through_compression_by_limit(f: Process, p, n_max: int) -> FactorizationResult:
    """Build the mediator as ``b -> V* q_n f(b) q_n V`` for ``n = 1..n_max``.

    In finite dimension ``q_n`` is eventually constant: it reaches
    ``pinv(sqrt p)`` at the first ``n`` with ``1/n`` at most the least positive
    eigenvalue.  ``stable_from`` is the first ``n`` from which every later
    iterate agrees with the closed form to the factorization tolerance.
    """
    closed = factor_through_compression(f, p)
    p = Effect.coerce(p)
    emb, c = make_compression(p)
    tol = get_tolerances().factorization
    mediators = []
    for n in range(1, n_max + 1):
        q = _q(p, n)
        kraus = {}
        for (i, b), ops in f.kraus.items():
            for k, parent in emb.corner_blocks():
                if parent == b:
                    kraus[(i, k)] = [op @ q[b] @ emb.isometries[b] for op in ops]
        mediators.append(Process(f.source, emb.corner_algebra, kraus))
    agree = [_residual(m, closed.mediator, f.source) <= tol for m in mediators]
    if not agree or not agree[-1]:
        raise NoConvergence(f"q_n has not stabilized by n = {n_max}")
    stable = n_max
    while stable > 1 and agree[stable - 2]:
        stable -= 1
    final = mediators[-1]
    residual = _residual(c.compose(final), f, f.source)
    return FactorizationResult(final, residual, closed.unique, stable)


def factor_through_corner(g: Process, p) -> FactorizationResult:
    """Unique ``gbar`` with ``gbar o pi = g``, namely ``gbar(x) = g(V x V*)``."""
    p = Effect.coerce(p)
    tol = get_tolerances()
    if g.source != p.algebra:
        raise PreconditionViolated(f"g starts at {g.source}, p lives in {p.algebra}")
    gap = (g(p * 1.0) - g.unit_image()).norm()
    if gap > tol.projection:
        raise PreconditionViolated(f"g(p) != g(1) (gap {gap:.3g})")
    emb, pi = make_corner(p)
    kraus = {}
    for (b, j), ops in g.kraus.items():
        for k, parent in emb.corner_blocks():
            if parent == b:
                kraus[(k, j)] = [emb.isometries[b].conj().T @ op for op in ops]
    gbar = Process(emb.corner_algebra, g.target, kraus)
    residual = _residual(gbar.compose(pi), g, g.source)
    return FactorizationResult(gbar, residual, mediator_uniqueness_probe(pi, g, side="pre", candidate=gbar))


def _is_process_matrix(lin: BlockLinearMap) -> bool:
    return lin.is_completely_positive() and lin.is_contractive()


def mediator_uniqueness_probe(outer, given, *, side: str = "post", candidate=None, probes: int = 8,
                              rng: Optional[np.random.Generator] = None) -> bool:
    """Is there exactly one process ``X`` with ``outer o X = given`` (``side="post"``)
    or ``X o outer = given`` (``side="pre"``)?

    The linear system is solved on map matrices.  A trivial kernel means the
    solution is unique among all linear maps, hence among processes.
    Otherwise a second process is searched for along kernel directions
    obtained by projecting random CP maps; finding one disproves uniqueness.
    When none is found the answer is still ``False`` unless the kernel is
    trivial, since uniqueness among processes is not then certified.
    """
    from .sampling import random_process

    rng = np.random.default_rng(0) if rng is None else rng
    o, g = outer.linear, given.linear
    if side == "post":
        if o.target != g.target:
            raise PreconditionViolated("outer and given have different targets")
        x_src, x_tgt = g.source, o.source
        op, rhs = o.matrix, g.matrix                       # O X = G
    elif side == "pre":
        if o.source != g.source:
            raise PreconditionViolated("outer and given have different sources")
        x_src, x_tgt = o.target, g.target
        op, rhs = o.matrix.T, g.matrix.T                   # O^T X^T = G^T
    else:
        raise ValueError(f"side must be 'post' or 'pre', got {side!r}")
    tol = get_tolerances().factorization

    if op.size == 0:
        sol = np.zeros((op.shape[1], rhs.shape[1]), dtype=np.complex128)
        basis = np.eye(op.shape[1], dtype=np.complex128)
        if np.linalg.norm(rhs) > tol:
            raise NoSolution("system has no solution")
    else:
        u, sv, vh = np.linalg.svd(op)
        cut = 1e-10 * max(1.0, float(sv[0]) if sv.size else 0.0)
        rank = int(np.sum(sv > cut))
        sol = np.linalg.pinv(op, rcond=1e-10) @ rhs
        if np.linalg.norm(op @ sol - rhs, 2) > tol * max(1.0, np.linalg.norm(rhs, 2)):
            raise NoSolution("system has no solution")
        basis = vh[rank:].conj().T                          # columns span ker(op)
    if basis.shape[1] == 0:
        return True

    def as_map(m):
        return BlockLinearMap(x_src, x_tgt, m if side == "post" else m.T)

    base = candidate.linear.matrix if candidate is not None else as_map(sol).matrix
    base = base if side == "post" else base.T
    found = [base] if _is_process_matrix(as_map(base)) else []
    proj = basis @ basis.conj().T
    for _ in range(probes):
        d = random_process(x_src, x_tgt, rng).linear.matrix
        d = proj @ (d if side == "post" else d.T)
        if np.linalg.norm(d) <= tol:
            continue
        for t in (1.0, 0.1, 0.01, 1e-3):
            trial = base + t * d
            if _is_process_matrix(as_map(trial)):
                if any(np.linalg.norm(trial - other) > tol for other in found):
                    return False
                found.append(trial)
    return False


def mediating_isomorphism(p, c1: Process, c2: Process) -> tuple[Process, Process]:
    """For two compressions of ``p``, the mediators ``t, s`` with ``c1 o t = c2`` and ``c2 o s = c1``."""
    t = _solve_post(c1, c2)
    s = _solve_post(c2, c1)
    return t, s


def _solve_post(outer: Process, given: Process) -> Process:
    o, g = outer.linear, given.linear
    sol = np.linalg.pinv(o.matrix, rcond=1e-10) @ g.matrix
    if np.linalg.norm(o.matrix @ sol - g.matrix, 2) > get_tolerances().factorization:
        raise NoSolution("given does not factor through outer")
    return BlockLinearMap(g.source, o.source, sol).to_process()
