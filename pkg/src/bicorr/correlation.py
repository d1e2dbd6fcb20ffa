"""Covariances of local observables and the 3x3 correlation matrix.

For observables X = Q (x) I and Y = I (x) R with Bloch vectors x and y, the
covariance c(X, Y) = <XY> - <X><Y> equals (1/4) x . (f - a b^T) . y, which
motivates the correlation matrix c = f - a b^T.  `covariance_direct`
deliberately evaluates the trace formula with 4x4 operator arithmetic instead
of this shortcut, so the two routes stay independent and can cross-check each
other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from bicorr.linalg import RANK_TOL, symmetric3_singular_values
from bicorr.qstate import (
    BALL_TOL,
    I2,
    IMAG_TOL,
    BlochOutOfBall,
    InvalidState,
    _check_structure,
    bloch_decompose,
    joint_operator,
    observable_from_bloch,
    partial_trace_A,
    partial_trace_B,
)


@dataclass(frozen=True, eq=False)
class ObservablePair:
    """Bloch vectors (x, y) defining the local observables Q_A and R_B."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        for name, vec in (("x", self.x), ("y", self.y)):
            arr = np.asarray(vec, dtype=float).reshape(-1)
            if arr.shape != (3,):
                raise ValueError(f"{name} needs 3 components, got {arr.shape[0]}")
            if not np.isfinite(arr).all():
                raise ValueError(f"{name} has non-finite components")
            if np.linalg.norm(arr) > 1.0 + BALL_TOL:
                raise BlochOutOfBall(f"{name} lies outside the unit ball")
            object.__setattr__(self, name, arr)


@dataclass(frozen=True, eq=False)
class CorrMatrix:
    """Correlation matrix c = f - a b^T with its singular values and rank."""

    c: np.ndarray
    singular_values: np.ndarray
    rank: int


def covariance_direct(rho: np.ndarray, pair: ObservablePair) -> float:
    """c(X, Y) from the trace formula, using only 4x4/2x2 matrix arithmetic.

    Tr(rho X Y) - Tr(rho_A Q) Tr(rho_B R); the imaginary residue of the traces
    must stay below 1e-10 and is discarded.
    """
    rho = _check_structure(rho)
    q = observable_from_bloch(pair.x)
    r = observable_from_bloch(pair.y)
    x_op = joint_operator(q, I2)
    y_op = joint_operator(I2, r)
    joint = complex(np.trace(rho @ x_op @ y_op))
    mean_x = complex(np.trace(partial_trace_B(rho) @ q))
    mean_y = complex(np.trace(partial_trace_A(rho) @ r))
    value = joint - mean_x * mean_y
    if abs(value.imag) > IMAG_TOL:
        raise InvalidState(f"covariance has imaginary residue {value.imag:.3e}")
    return float(value.real)


def correlation_matrix(rho: np.ndarray) -> CorrMatrix:
    """Correlation matrix of rho with cached singular values and numeric rank.

    Rank uses the absolute threshold 1e-8: correlation entries are bounded by
    2, and for exact pure states the rank is 0 or 3, so any mid-range
    tolerance separates the two classes.
    """
    bf = bloch_decompose(rho)
    c = bf.f - np.outer(bf.a, bf.b)
    sv = symmetric3_singular_values(c)
    return CorrMatrix(c=c, singular_values=sv, rank=int(np.sum(sv > RANK_TOL)))


def covariance_via_c(cm: CorrMatrix, pair: ObservablePair) -> float:
    """c(X, Y) = (1/4) x . c . y from a precomputed correlation matrix."""
    return float(0.25 * pair.x @ cm.c @ pair.y)
