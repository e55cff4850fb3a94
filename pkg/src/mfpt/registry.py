"""Uniform access to the twelve MFPT procedures.

Procedures are addressed by number (1-12) or by a descriptive key; the
table fixes the numbering used by the CLI and the reports. ``compute``
runs exactly the procedure's own pipeline (used for timing); ``run``
additionally fills in the stationary vector where the procedure itself
does not produce one.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import egth, fund, inverses, perturbation
from .gth import gth_stationary


@dataclass(frozen=True)
class ProcedureResult:
    """What one procedure run produced."""

    mfpt: np.ndarray
    stationary: Optional[np.ndarray]


@dataclass(frozen=True)
class Procedure:
    """One registered procedure.

    ``accepts_anchor`` marks the single procedure whose result is
    parametrized by an anchor state.
    """

    number: int
    key: str
    summary: str
    compute: Callable[..., ProcedureResult]
    accepts_anchor: bool = False


def _pair(fn):
    def run(p, dtype=None, **kw):
        pi, mfpt = fn(p, dtype=dtype, **kw)
        return ProcedureResult(mfpt=mfpt, stationary=pi)

    return run


def _mfpt_only(fn, diagonal_stationary=False):
    def run(p, dtype=None):
        mfpt = fn(p, dtype=dtype)
        pi = None
        if diagonal_stationary:
            with np.errstate(divide="ignore"):
                pi = 1.0 / np.diagonal(mfpt)
        return ProcedureResult(mfpt=mfpt, stationary=pi)

    return run


PROCEDURES = (
    Procedure(1, "fundamental", "fundamental matrix by one solve",
              _pair(inverses.fundamental_inverse_mfpt)),
    Procedure(2, "anchored-inverse", "single inverse anchored at one row",
              _pair(inverses.anchored_inverse_mfpt), accepts_anchor=True),
    Procedure(3, "ginverse-update", "rank-one g-inverse update sweep",
              _pair(perturbation.ginverse_update_mfpt)),
    Procedure(4, "centered-update", "rank-one zero-row-sum update sweep",
              _pair(perturbation.centered_update_mfpt)),
    Procedure(5, "group-update", "joint group-inverse/stationary update sweep",
              _pair(perturbation.group_inverse_update_mfpt)),
    Procedure(6, "uniform-anchor", "anchored update sweep, anchor e/m",
              _pair(perturbation.uniform_anchor_mfpt)),
    Procedure(7, "unit-anchor", "anchored update sweep, anchor e_0",
              _pair(perturbation.unit_anchor_mfpt)),
    Procedure(8, "ones-anchor", "anchored update sweep, anchor e",
              _pair(perturbation.ones_anchor_mfpt)),
    Procedure(9, "state-reduction", "subtraction-free repeated state reduction",
              _mfpt_only(egth.state_reduction_mfpt, diagonal_stationary=True)),
    Procedure(10, "factored-fundamental", "UL factors, fundamental-matrix assembly",
              _mfpt_only(fund.factored_fundamental_mfpt)),
    Procedure(11, "factored-group", "UL factors, group-inverse assembly",
              _mfpt_only(fund.factored_group_mfpt)),
    Procedure(12, "factored-direct", "UL factors, direct assembly",
              _mfpt_only(fund.factored_direct_mfpt)),
)

_BY_NUMBER = {proc.number: proc for proc in PROCEDURES}
_BY_KEY = {proc.key: proc for proc in PROCEDURES}


def get_procedure(which):
    """Look up a procedure by number (1-12) or key string."""
    if isinstance(which, (int, np.integer)) and not isinstance(which, bool):
        if which in _BY_NUMBER:
            return _BY_NUMBER[which]
        raise KeyError(f"procedure number must be 1..12, got {which}")
    if isinstance(which, str):
        key = which.lower()
        if key in _BY_KEY:
            return _BY_KEY[key]
        if key.isdigit() and int(key) in _BY_NUMBER:
            return _BY_NUMBER[int(key)]
        known = ", ".join(p.key for p in PROCEDURES)
        raise KeyError(f"unknown procedure {which!r}; known: {known}")
    raise TypeError(f"procedure must be an int or str, got {type(which).__name__}")


def run_procedure(which, p, dtype=None, anchor=None):
    """Run one procedure and always return a stationary vector.

    Procedures that do not produce pi themselves (the factored family)
    get it from the subtraction-free reduction, matching what they use
    internally.
    """
    proc = get_procedure(which)
    kwargs = {}
    if proc.accepts_anchor and anchor is not None:
        kwargs["anchor"] = anchor
    result = proc.compute(p, dtype=dtype, **kwargs)
    if result.stationary is None:
        result = ProcedureResult(
            mfpt=result.mfpt, stationary=gth_stationary(p, dtype=result.mfpt.dtype)
        )
    return result
