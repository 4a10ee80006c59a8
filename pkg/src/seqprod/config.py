"""Numerical tolerances shared by every module.

All thresholds live in one frozen record.  The active record is held in a
context variable so an override (``with tolerances(rank=1e-12): ...``) only
affects the current thread / task.
"""
from __future__ import annotations

import contextlib
import contextvars
import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # eigensolver
    hermitian: float = 1e-12
    eig_offdiag: float = 1e-14
    eig_max_sweeps: int = 100
    reconstruction: float = 1e-10
    # spectral cuts
    rank: float = 1e-10
    rank_floor: float = 1e-14
    psd_clamp: float = 1e-10
    not_positive: float = 1e-8
    # effects and projections
    effect_clamp: float = 1e-9
    projection: float = 1e-9
    norm_bound: float = 1e-9
    # order tests (a <= b evaluated as min eig(b - a) >= -order)
    positivity: float = 1e-9
    order: float = 1e-8
    witness_margin: float = 1e-6
    # maps
    contractive: float = 1e-9
    unital: float = 1e-9
    proportional: float = 1e-9
    multiplicative: float = 1e-8
    inverse: float = 1e-8
    cs_slack: float = 1e-8
    factorization: float = 1e-8
    # axiom checks
    axiom: float = 1e-8
    demo: float = 1e-7

    def replace(self, **overrides: float) -> "Tolerances":
        unknown = set(overrides) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise KeyError(f"unknown tolerance name(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **overrides)


DEFAULTS = Tolerances()

_active: contextvars.ContextVar[Tolerances] = contextvars.ContextVar("seqprod_tolerances", default=DEFAULTS)


def get_tolerances() -> Tolerances:
    return _active.get()


@contextlib.contextmanager
def tolerances(**overrides: float):
    """Temporarily override named tolerances in the current context."""
    token = _active.set(_active.get().replace(**overrides))
    try:
        yield _active.get()
    finally:
        _active.reset(token)
