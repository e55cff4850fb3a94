"""Accuracy measures for computed MFPT matrices.

The residual of a candidate M against the defining equations is

    eps_ij = m_ij - sum_{k != j} p_ik m_kj - 1,

evaluated in matrix form as M - P M - E + P M_d with M_d the diagonal
part of the computed M itself. It is a pure function of (P, M): no
knowledge of how M was produced enters. Summary statistics follow the
usual conventions of this problem family: the percentage of exactly
zero residuals (binary zeros, not small ones), the overall absolute
residual, and its extreme entries.

Two-precision comparisons quantify how many decimal digits a binary32
result retains relative to the binary64 one, averaging
-log10 |(d - s) / d| over all entry pairs that are not exactly equal;
exactly equal pairs are excluded from the average (they would contribute
infinitely many digits) and counted separately.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import as_square_matrix


@dataclass(frozen=True)
class AccuracyReport:
    """Residual statistics of one computed MFPT matrix.

    ``pze`` is the percentage of exactly zero residual entries;
    ``ore`` the sum of absolute residuals; ``minare``/``maxare`` their
    extremes. ``precision`` tags the working precision of the input
    ("single" or "double"). 0 <= pze <= 100 and minare <= maxare <= ore
    always hold; all statistics are NaN if M has non-finite entries.
    """

    precision: str
    pze: float
    ore: float
    minare: float
    maxare: float


@dataclass(frozen=True)
class PrecisionComparison:
    """Agreement between a binary64 and a binary32 MFPT matrix.

    ``aned`` is the average number of equal decimal digits over the
    ``terms`` entry pairs that differ; ``excluded`` counts the exactly
    equal pairs. ``aned`` is ``inf`` when every pair is exactly equal
    (all-exact sentinel) and NaN when the binary32 matrix contains
    non-finite entries (not computable). ``rel`` is the summed absolute
    difference, ``minae``/``maxae`` its extremes; these are also NaN in
    the non-finite case.
    """

    aned: float
    terms: int
    excluded: int
    rel: float
    minae: float
    maxae: float


def residual(p, m):
    """Entrywise residual of M against the first-passage equations.

    Evaluated once, in the common dtype of the inputs; exact zeros in
    the result mean the corresponding equation is satisfied in binary.
    """
    p = as_square_matrix(p)
    m = as_square_matrix(m)
    if p.shape != m.shape:
        raise ValueError(f"shape mismatch: {p.shape} vs {m.shape}")
    # P @ M_d has entries p_ij * m_jj: columnwise scaling, no matmul needed.
    return m - p @ m - 1.0 + p * np.diagonal(m)[None, :]


def accuracy_report(p, m):
    """Summary residual statistics for one computed M."""
    m = as_square_matrix(m)
    precision = "single" if m.dtype == np.float32 else "double"
    if not np.isfinite(m).all():
        nan = float("nan")
        return AccuracyReport(precision=precision, pze=nan, ore=nan, minare=nan, maxare=nan)
    eps = np.abs(residual(p, m))
    return AccuracyReport(
        precision=precision,
        pze=100.0 * float((eps == 0).sum()) / eps.size,
        ore=float(eps.sum()),
        minare=float(eps.min()),
        maxare=float(eps.max()),
    )


def precision_compare(m_double, m_single):
    """Digitwise agreement of a binary32 result with its binary64 twin.

    The binary32 matrix is widened once for the comparison. If it
    contains non-finite entries the comparison is not computable and
    every float field is NaN.
    """
    md = np.asarray(m_double, dtype=np.float64)
    ms = np.asarray(m_single).astype(np.float64)
    if md.shape != ms.shape:
        raise ValueError(f"shape mismatch: {md.shape} vs {ms.shape}")
    diff = ms - md
    equal = diff == 0
    excluded = int(equal.sum())
    terms = diff.size - excluded
    if not np.isfinite(ms).all():
        nan = float("nan")
        return PrecisionComparison(
            aned=nan, terms=terms, excluded=excluded, rel=nan, minae=nan, maxae=nan
        )
    ab = np.abs(diff)
    if terms == 0:
        aned = math.inf
    else:
        aned = float(np.mean(-np.log10(ab[~equal] / np.abs(md[~equal]))))
    return PrecisionComparison(
        aned=aned,
        terms=terms,
        excluded=excluded,
        rel=float(ab.sum()),
        minae=float(ab.min()),
        maxae=float(ab.max()),
    )
