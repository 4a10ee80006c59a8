"""Random elements, effects and processes for property checks.

Effect spectra are drawn either exactly at 0 or 1, or from [0.01, 0.99];
eigenvalues are kept away from the rank threshold so that support
computations on samples are well posed.
"""
from __future__ import annotations

import hashlib
from typing import Optional

import numpy as np

from .effects import Algebra, Effect, Element, Projection

DELTA = 1e-3


def derived_rng(seed: int, *labels) -> np.random.Generator:
    """Independent stream keyed by ``(seed, *labels)``; adding a label never shifts another stream."""
    digest = hashlib.sha256(repr((int(seed),) + tuple(str(x) for x in labels)).encode()).digest()
    return np.random.default_rng(np.random.SeedSequence(list(np.frombuffer(digest[:16], dtype=np.uint32))))


def ginibre(rng: np.random.Generator, rows: int, cols: Optional[int] = None) -> np.ndarray:
    cols = rows if cols is None else cols
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(ginibre(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_unitary(algebra: Algebra, rng: np.random.Generator) -> Element:
    return Element([random_unitary_matrix(n, rng) for n in algebra.block_dims], algebra)


def random_spectrum(n: int, rng: np.random.Generator, sharp_prob: float = 0.3) -> np.ndarray:
    lam = rng.uniform(0.01, 0.99, size=n)
    kind = rng.uniform(size=n)
    lam[kind < sharp_prob / 2] = 0.0
    lam[(kind >= sharp_prob / 2) & (kind < sharp_prob)] = 1.0
    return lam


def random_effect(algebra: Algebra, rng: np.random.Generator, sharp_prob: float = 0.3) -> Effect:
    blocks = []
    for n in algebra.block_dims:
        u = random_unitary_matrix(n, rng)
        blocks.append((u * random_spectrum(n, rng, sharp_prob)) @ u.conj().T)
    return Effect(blocks, algebra)


def random_projection(algebra: Algebra, rng: np.random.Generator, rank=None, proper: bool = False) -> Projection:
    """Haar-random projection; ``proper`` keeps the rank strictly between 0 and n on blocks with n >= 2."""
    blocks = []
    for n in algebra.block_dims:
        if rank is not None:
            k = int(rank)
        elif proper and n >= 2:
            k = int(rng.integers(1, n))
        else:
            k = int(rng.integers(0, n + 1))
        u = random_unitary_matrix(n, rng)[:, :k]
        blocks.append(u @ u.conj().T)
    return Projection(blocks, algebra)


def rank_one_projection(v) -> Projection:
    v = np.asarray(v, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return Projection(np.outer(v, v.conj()))


def random_element(algebra: Algebra, rng: np.random.Generator) -> Element:
    x = Element([ginibre(rng, n) for n in algebra.block_dims], algebra)
    return x / max(x.norm(), 1e-300)


def random_self_adjoint(algebra: Algebra, rng: np.random.Generator) -> Element:
    x = random_element(algebra, rng)
    return (x + x.H) * 0.5


def random_contraction(algebra: Algebra, rng: np.random.Generator) -> Element:
    return random_element(algebra, rng) * float(rng.uniform(0.2, 1.0))


def random_kraus(rows: int, cols: int, rng: np.random.Generator, count: Optional[int] = None) -> list[np.ndarray]:
    count = int(rng.integers(1, 4)) if count is None else count
    return [ginibre(rng, rows, cols) for _ in range(count)]


def random_process(source: Algebra, target: Algebra, rng: np.random.Generator, unital: bool = False):
    """Random CP map with ``||f(1)|| = (1 - DELTA)**2``; with ``unital`` it is rescaled to f(1) = 1."""
    from .processes import Process

    kraus = {}
    for i, n in enumerate(source.block_dims):
        for j, m in enumerate(target.block_dims):
            # a unital rescaling needs f(1) invertible, hence enough Kraus rank
            count = max(int(rng.integers(1, 4)), -(-m // n)) if unital else None
            kraus[(i, j)] = random_kraus(n, m, rng, count)
    f = Process(source, target, kraus)
    if target.is_zero or source.is_zero:
        return f
    unit_image = f.unit_image()
    if unital:
        # f(1)^{-1/2} applied on the output side: K -> K f(1)^{-1/2} per target block
        roots = unit_image.sqrt().pinv()
        return Process(source, target, {r: [k @ roots.blocks[r[1]] for k in ks] for r, ks in f.kraus.items()})
    scale = (1.0 - DELTA) / np.sqrt(unit_image.norm())
    return Process(source, target, {r: [k * scale for k in ks] for r, ks in f.kraus.items()})
