"""Exact 2x2 reference computations in sympy, sharing no code with the package.

Square roots use the closed form sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)),
valid for positive semidefinite 2x2 A other than 0.
"""
from fractions import Fraction

import numpy as np
import sympy as sp

# rotations with rational entries, from Pythagorean triples
ROTATIONS = [(1, 0, 1), (3, 4, 5), (5, 12, 13), (8, 15, 17), (20, 21, 29)]


def rational_effect(a: Fraction, b: Fraction, rot=(3, 4, 5)) -> sp.Matrix:
    """R diag(a, b) R^T with R the rotation with cos = x/z, sin = y/z."""
    x, y, z = rot
    c, s = sp.Rational(x, z), sp.Rational(y, z)
    r = sp.Matrix([[c, -s], [s, c]])
    return r * sp.diag(sp.Rational(a.numerator, a.denominator), sp.Rational(b.numerator, b.denominator)) * r.T


def sqrt2x2(a: sp.Matrix) -> sp.Matrix:
    if a == sp.zeros(2, 2):
        return sp.zeros(2, 2)
    d = sp.sqrt(a.det())
    return (a + d * sp.eye(2)) / sp.sqrt(a.trace() + 2 * d)


def seq_product(p: sp.Matrix, q: sp.Matrix) -> sp.Matrix:
    r = sqrt2x2(p)
    return sp.simplify(r * q * r)


def ceil2x2(p: sp.Matrix) -> sp.Matrix:
    if p == sp.zeros(2, 2):
        return sp.zeros(2, 2)
    if sp.simplify(p.det()) == 0:
        return p / p.trace()          # rank one: p = t vv*, support vv* = p / tr p
    return sp.eye(2)


def floor2x2(p: sp.Matrix) -> sp.Matrix:
    return sp.eye(2) - ceil2x2(sp.eye(2) - p)


def sym_norm(a: sp.Matrix) -> sp.Expr:
    """Operator norm of a real symmetric 2x2 matrix: the largest |eigenvalue|."""
    tr, det = a.trace(), a.det()
    disc = sp.sqrt(tr ** 2 - 4 * det)
    return sp.Max(sp.Abs((tr + disc) / 2), sp.Abs((tr - disc) / 2))


def pqp_unit_gap(p: sp.Matrix) -> sp.Expr:
    return sym_norm(p * p - p)


def to_numpy(a: sp.Matrix) -> np.ndarray:
    return np.array(sp.N(a, 30).tolist(), dtype=np.complex128)
