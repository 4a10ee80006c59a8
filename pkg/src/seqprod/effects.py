"""Finite-dimensional von Neumann algebras, effects and the sequential product.

An algebra is a direct sum of full matrix algebras ``M_n1 + ... + M_nk``;
its elements are tuples of square blocks.  Every operation acts blockwise,
and elements of different algebras are never silently embedded into one
another.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from . import linalg
from .config import get_tolerances
from .errors import AlgebraMismatch, NormTooLarge, NotAnEffect, NotProjection, ShapeMismatch


@dataclass(frozen=True)
class Algebra:
    """``M_{n_1} + ... + M_{n_k}``.  The empty tuple is the zero algebra."""

    block_dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if any(n <= 0 for n in dims):
            raise ValueError(f"block dimensions must be positive, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @classmethod
    def full(cls, n: int) -> "Algebra":
        return cls((n,))

    @classmethod
    def zero(cls) -> "Algebra":
        return cls(())

    @property
    def is_zero(self) -> bool:
        return not self.block_dims

    @property
    def dimension(self) -> int:
        """Complex dimension, sum of n_i**2."""
        return sum(n * n for n in self.block_dims)

    def unit(self) -> "Projection":
        return Projection([np.eye(n) for n in self.block_dims], self)

    def zero_element(self) -> "Element":
        return Element([np.zeros((n, n)) for n in self.block_dims], self)

    def matrix_units(self) -> Iterator[tuple[int, int, int, "Element"]]:
        """Yield ``(block, row, col, E)`` for the standard basis of the algebra."""
        for b, n in enumerate(self.block_dims):
            for i in range(n):
                for j in range(n):
                    blocks = [np.zeros((m, m)) for m in self.block_dims]
                    blocks[b][i, j] = 1.0
                    yield b, i, j, Element(blocks, self)

    def vectorize(self, x: "Element") -> np.ndarray:
        """Concatenated row-major vectorization of the blocks."""
        self.check(x)
        if self.is_zero:
            return np.zeros(0, dtype=np.complex128)
        return np.concatenate([blk.ravel() for blk in x.blocks])

    def unvectorize(self, vec) -> "Element":
        vec = np.asarray(vec, dtype=np.complex128)
        if vec.shape != (self.dimension,):
            raise ShapeMismatch(f"expected a vector of length {self.dimension}, got {vec.shape}")
        blocks, start = [], 0
        for n in self.block_dims:
            blocks.append(vec[start:start + n * n].reshape(n, n))
            start += n * n
        return Element(blocks, self)

    def check(self, *xs: "Element") -> None:
        for x in xs:
            if x.algebra != self:
                raise AlgebraMismatch(f"element of {x.algebra} used in {self}")

    def to_json(self) -> list[int]:
        return list(self.block_dims)

    def __str__(self):
        if self.is_zero:
            return "0"
        return " + ".join(f"M{n}" for n in self.block_dims)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Element:
    """An element of a finite-dimensional algebra, stored block by block.

    ``Element(m)`` with a single square matrix lives in ``M_n``.
    Instances are immutable; arithmetic returns new elements.
    """

    __array_priority__ = 100  # numpy scalars defer to our __rmul__

    def __init__(self, blocks, algebra: Optional[Algebra] = None):
        if isinstance(blocks, np.ndarray) and blocks.ndim == 2:
            blocks = [blocks]
        mats = [linalg.as_cmatrix(b).copy() for b in blocks]
        if algebra is None:
            algebra = Algebra(tuple(m.shape[0] for m in mats))
        if tuple(m.shape[0] for m in mats) != algebra.block_dims:
            raise ShapeMismatch(
                f"block shapes {[m.shape for m in mats]} do not match algebra {algebra.block_dims}")
        self.algebra = algebra
        self.blocks = tuple(_freeze(m) for m in mats)

    # -- arithmetic -------------------------------------------------------
    def _zip(self, other: "Element"):
        self.algebra.check(other)
        return zip(self.blocks, other.blocks)

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return Element([a + b for a, b in self._zip(other)], self.algebra)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return Element([a - b for a, b in self._zip(other)], self.algebra)

    def __neg__(self):
        return Element([-a for a in self.blocks], self.algebra)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        return Element([a * scalar for a in self.blocks], self.algebra)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Element([a / scalar for a in self.blocks], self.algebra)

    def __matmul__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return Element([a @ b for a, b in self._zip(other)], self.algebra)

    @property
    def H(self) -> "Element":
        return Element([a.conj().T for a in self.blocks], self.algebra)

    # -- inspection -------------------------------------------------------
    def norm(self) -> float:
        return max((linalg.op_norm(a) for a in self.blocks), default=0.0)

    def trace(self) -> complex:
        return complex(sum(np.trace(a) for a in self.blocks))

    def allclose(self, other: "Element", atol: float = 1e-9) -> bool:
        return (self - other).norm() <= atol

    def is_self_adjoint(self, tol: Optional[float] = None) -> bool:
        tol = get_tolerances().hermitian if tol is None else tol
        return (self - self.H).norm() <= tol * max(1.0, self.norm())

    @cached_property
    def eig(self) -> tuple[linalg.EigenDecomposition, ...]:
        return tuple(linalg.eig_hermitian(a) for a in self.blocks)

    def spectrum(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0)
        return np.sort(np.concatenate([e.eigenvalues for e in self.eig]))

    def min_eigenvalue(self) -> float:
        return min((float(e.eigenvalues[0]) for e in self.eig), default=0.0)

    def is_positive(self, tol: Optional[float] = None) -> bool:
        tol = get_tolerances().positivity if tol is None else tol
        return self.min_eigenvalue() >= -tol * max(1.0, self.norm())

    def leq(self, other: "Element", tol: Optional[float] = None) -> bool:
        """Loewner order ``self <= other`` up to ``tol``."""
        return (other - self).is_positive(tol)

    def apply_function(self, g) -> "Element":
        return Element([linalg.apply_function(a, g, e) for a, e in zip(self.blocks, self.eig)], self.algebra)

    def sqrt(self) -> "Element":
        return Element([linalg.sqrt_psd(a, e) for a, e in zip(self.blocks, self.eig)], self.algebra)

    def pinv(self) -> "Element":
        return Element([linalg.pinv_psd(a, e) for a, e in zip(self.blocks, self.eig)], self.algebra)

    def support(self) -> "Projection":
        return Projection([linalg.support_projection(a, e) for a, e in zip(self.blocks, self.eig)],
                          self.algebra, check=False)

    def matrix(self) -> np.ndarray:
        """The single block of an element of ``M_n``."""
        if len(self.blocks) != 1:
            raise ShapeMismatch(f"element of {self.algebra} has {len(self.blocks)} blocks")
        return self.blocks[0]

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(), "blocks": [linalg.matrix_to_json(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, obj):
        algebra = Algebra(tuple(obj["algebra"]))
        return cls([linalg.matrix_from_json(b) for b in obj["blocks"]], algebra)

    def __repr__(self):
        return f"{type(self).__name__}({self.algebra}, {[b.round(6).tolist() for b in self.blocks]})"


def as_element(x, algebra: Optional[Algebra] = None) -> Element:
    if isinstance(x, Element):
        if algebra is not None:
            algebra.check(x)
        return x
    return Element(x, algebra)


class Effect(Element):
    """Self-adjoint element with spectrum in [0, 1].

    Eigenvalues up to ``effect_clamp`` outside [0, 1] are clamped; anything
    further out is rejected with :class:`NotAnEffect`.
    """

    def __init__(self, blocks, algebra: Optional[Algebra] = None, *, check: bool = True):
        super().__init__(blocks, algebra)
        if not check:
            return
        tol = get_tolerances()
        fixed = []
        for a in self.blocks:
            skew = a - a.conj().T
            if not linalg.norm_at_most(skew, tol.effect_clamp) and \
                    linalg.op_norm(skew) > tol.effect_clamp * max(1.0, linalg.op_norm(a)):
                raise NotAnEffect(f"block is not self-adjoint (||a - a*|| = {linalg.op_norm(skew):.3g})")
            h = 0.5 * (a + a.conj().T)
            e = linalg.eig_hermitian(h)
            lam = e.eigenvalues
            if lam.size and (lam[0] < -tol.effect_clamp or lam[-1] > 1.0 + tol.effect_clamp):
                raise NotAnEffect(f"spectrum [{lam[0]:.6g}, {lam[-1]:.6g}] is outside [0, 1]")
            if lam.size and (lam[0] < 0.0 or lam[-1] > 1.0):
                clamped = np.clip(lam, 0.0, 1.0)
                v = e.eigenvectors
                h = (v * clamped) @ v.conj().T
                e = linalg.EigenDecomposition(clamped, v, e.tol_used, e.sweeps)
            fixed.append((h, e))
        self.blocks = tuple(_freeze(h) for h, _ in fixed)
        self.__dict__["eig"] = tuple(e for _, e in fixed)

    @classmethod
    def coerce(cls, x: Element) -> "Effect":
        return x if isinstance(x, Effect) else cls(list(x.blocks), x.algebra)

    def complement(self) -> "Effect":
        return Effect([np.eye(a.shape[0]) - a for a in self.blocks], self.algebra)


class Projection(Effect):
    """An effect with ``p @ p == p`` up to the projection tolerance."""

    def __init__(self, blocks, algebra: Optional[Algebra] = None, *, check: bool = True):
        super().__init__(blocks, algebra, check=check)
        if check:
            gap = max((linalg.op_norm(a @ a - a) for a in self.blocks), default=0.0)
            if gap > get_tolerances().projection:
                raise NotProjection(f"||p^2 - p|| = {gap:.3g}")

    def complement(self) -> "Projection":
        return Projection([np.eye(a.shape[0]) - a for a in self.blocks], self.algebra)

    def rank(self) -> tuple[int, ...]:
        return tuple(int(round(np.trace(a).real)) for a in self.blocks)


def is_projection(p: Element, tol: Optional[float] = None) -> bool:
    tol = get_tolerances().projection if tol is None else tol
    return (p @ p - p).norm() <= tol and p.is_self_adjoint()


# -- the sequential product and supports ------------------------------------

def seq_product(p: Effect, q: Effect) -> Effect:
    """``sqrt(p) q sqrt(p)``, blockwise."""
    p.algebra.check(q)
    r = p.sqrt()
    return Effect(list((r @ q @ r).blocks), p.algebra)


def ceil(p: Effect) -> Projection:
    """Least projection above ``p``: the support of ``p``."""
    return Effect.coerce(p).support()


def ceil_by_limit(p: Effect, n_max: int) -> Effect:
    """``p ** (1 / 2**n_max)``; increases to ``ceil(p)`` as ``n_max`` grows."""
    p = Effect.coerce(p)
    expo = 0.5 ** n_max
    cut = [linalg.rank_threshold(float(e.eigenvalues[-1])) for e in p.eig]
    blocks = []
    for e, c in zip(p.eig, cut):
        lam = np.clip(e.eigenvalues, 0.0, 1.0)
        vals = np.where(lam > c, lam ** expo, 0.0)
        v = e.eigenvectors
        blocks.append((v * vals) @ v.conj().T)
    return Effect(blocks, p.algebra)


def floor(p: Effect) -> Projection:
    """Greatest projection below ``p``, computed as ``1 - ceil(1 - p)``."""
    return ceil(Effect.coerce(p).complement()).complement()


# -- order-theoretic lemmas -------------------------------------------------

class ConnectedReport(NamedTuple):
    sandwich_e1: bool      # a* e1 a <= 1 - e2
    sandwich_e2: bool      # a e2 a* <= 1 - e1
    corner_e1_e2: bool     # e1 a e2 == 0
    corner_e2_e1: bool     # e2 a* e1 == 0

    def agree(self) -> bool:
        return len(set(self)) == 1


def check_connected(a: Element, e1: Projection, e2: Projection) -> ConnectedReport:
    """Evaluate the four equivalent conditions relating a contraction and two projections.

    The zero tests use the squared norm against the order tolerance, which
    matches the C*-identity ``||e1 a e2||**2 = ||e2 a* e1 a e2||``.
    """
    a = as_element(a)
    a.algebra.check(e1, e2)
    tol = get_tolerances()
    if a.norm() > 1.0 + tol.norm_bound:
        raise NormTooLarge(f"||a|| = {a.norm():.6g} > 1")
    one = a.algebra.unit()
    return ConnectedReport(
        (a.H @ e1 @ a).leq(one - e2, tol.order),
        (a @ e2 @ a.H).leq(one - e1, tol.order),
        (e1 @ a @ e2).norm() ** 2 <= tol.order,
        (e2 @ a.H @ e1).norm() ** 2 <= tol.order,
    )


def _lower_envelope(p: Effect) -> Element:
    """min(p, 1 - p) by functional calculus: below both p and 1 - p."""
    return p.apply_function(lambda x: min(x, 1.0 - x))


def projection_order_tests(p: Effect, rng: Optional[np.random.Generator] = None, samples: int = 20) -> bool:
    """Bundle of the projection lemmas, evaluated on ``p``.

    * ``p`` is a projection iff the only positive ``a`` below both ``p`` and
      ``1 - p`` is zero (witnessed by ``min(p, 1 - p)``);
    * for a projection ``p`` and sampled ``0 <= a <= p``: ``ap = pa = a``;
    * for a projection ``p`` and sampled projections ``q <= 1 - p``: ``pq = qp = 0``.
    """
    from .sampling import random_effect, random_projection

    rng = np.random.default_rng(0) if rng is None else rng
    p = Effect.coerce(p)
    tol = get_tolerances()
    sharp = is_projection(p)
    env = _lower_envelope(p)
    ok = sharp == (env.norm() <= tol.projection)
    if not sharp:
        return ok
    one = p.algebra.unit()
    for _ in range(samples):
        b = random_effect(p.algebra, rng)
        a = p @ b @ p
        ok &= (a @ p).allclose(a, tol.order) and (p @ a).allclose(a, tol.order)
        r = random_projection(p.algebra, rng)
        q = ceil(Effect.coerce((one - p) @ r @ (one - p)))
        ok &= (p + q).leq(one, tol.order)
        ok &= (p @ q).norm() <= tol.order and (q @ p).norm() <= tol.order
    return bool(ok)
