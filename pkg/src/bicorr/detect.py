"""Separability and entanglement decisions for two-qubit states.

Three decision routes live here:

* the rank dichotomy: a pure state is separable exactly when its correlation
  matrix vanishes and entangled exactly when that matrix has full rank 3, so
  the rank alone classifies pure states;
* the three-probe protocol: against a fixed y, three linearly independent
  probe directions x are tested for zero/non-zero covariance; a plane can hide
  at most two independent directions, so an entangled pure state must reveal
  itself within three probes, while a separable pure state shows three zeros;
* independent oracles: the Schmidt rank of the amplitude matrix (pure states)
  and positivity of the partial transpose (any state), which never touch the
  correlation-matrix code path.

The protocol is sound only for pure states.  On mixed input it reports
Indeterminate unless the caller passes ``assume_pure=True``: the Werner family
shows that zero correlations do not certify separability there, nor non-zero
correlations entanglement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from bicorr.correlation import (
    CorrMatrix,
    ObservablePair,
    correlation_matrix,
    covariance_direct,
    covariance_via_c,
)
from bicorr.linalg import (
    ZeroVector,
    det3,
    hermitian_eigenvalues,
    orthogonal_complement_basis,
)
from bicorr.qstate import (
    BALL_TOL,
    PSD_TOL,
    BlochOutOfBall,
    _check_structure,
    density_from_pure,
    purity,
    validate_pure_state,
)
from bicorr.states import XiOutOfRange, werner

ZERO_CORRELATION_TOL = 1e-10
GRAM_TOL = 1e-9
PURITY_TOL = 1e-9

SEPARABLE = "Separable"
ENTANGLED = "Entangled"
INDETERMINATE = "Indeterminate"

RANK_DICHOTOMY = "RankDichotomy"
BINARY_PROTOCOL = "BinaryProtocol"
SCHMIDT_ORACLE = "SchmidtOracle"
PPT_ORACLE = "PPTOracle"

DEFAULT_Y = np.array([0.0, 0.0, 1.0])
DEFAULT_XS = np.eye(3)

# Maps an observable pair to (covariance value, is_zero decision).
CorrOracle = Callable[[ObservablePair], tuple[float, bool]]


class RankContradiction(RuntimeError):
    """Correlation-matrix rank of a pure state was neither 0 nor 3."""


class DependentProbes(ValueError):
    """Probe directions are not linearly independent."""


@dataclass(frozen=True)
class Verdict:
    label: str
    basis: str
    detail: str = ""


@dataclass(frozen=True, eq=False)
class Probe:
    x: np.ndarray
    covariance: float
    is_zero: bool


@dataclass(frozen=True, eq=False)
class ProtocolTrace:
    y: np.ndarray
    probes: tuple[Probe, ...]
    measurements_used: int


def find_zero_correlation_pair(rho: np.ndarray, y: np.ndarray) -> ObservablePair:
    """A pair (x, y) with zero covariance on rho, for any state and any y.

    x . (c y) = 0 is an orthogonality condition between two real 3-vectors,
    so a solution always exists: x is taken orthogonal to c y, or the first
    standard basis vector when c y vanishes.
    """
    y = np.asarray(y, dtype=float)
    norm_y = float(np.linalg.norm(y))
    if norm_y == 0.0:
        raise ZeroVector("y must be non-zero")
    if norm_y > 1.0 + BALL_TOL:
        raise BlochOutOfBall("y must lie in the unit ball")
    cm = correlation_matrix(rho)
    y_image = cm.c @ y
    if np.linalg.norm(y_image) < ZERO_CORRELATION_TOL:
        x = np.array([1.0, 0.0, 0.0])
    else:
        x = orthogonal_complement_basis(y_image)[0]
    return ObservablePair(x=x, y=y)


def classify_pure_by_rank(psi: np.ndarray) -> Verdict:
    """Separable/Entangled verdict for a pure state from rank(c).

    Rank 0 means separable, rank 3 entangled; anything else is impossible for
    an exact pure state and raises RankContradiction (a tolerance failure or
    an invalid input).
    """
    psi = validate_pure_state(psi)
    cm = correlation_matrix(density_from_pure(psi))
    detail = f"rank(c) = {cm.rank}, singular values {cm.singular_values.tolist()}"
    if cm.rank == 0:
        return Verdict(SEPARABLE, RANK_DICHOTOMY, detail)
    if cm.rank == 3:
        return Verdict(ENTANGLED, RANK_DICHOTOMY, detail)
    raise RankContradiction(
        f"pure state produced rank {cm.rank}; expected 0 or 3 ({detail})"
    )


def exact_corr_oracle(rho: np.ndarray) -> CorrOracle:
    """Zero/non-zero oracle from the exact correlation matrix of rho.

    The matrix is computed once and reused for every probe; |c| < 1e-10
    counts as zero, far above 4x4 arithmetic noise and far below every
    fixture's smallest non-zero covariance.
    """
    cm = correlation_matrix(rho)

    def oracle(pair: ObservablePair) -> tuple[float, bool]:
        value = covariance_via_c(cm, pair)
        return value, abs(value) < ZERO_CORRELATION_TOL

    return oracle


def _check_probes(y: np.ndarray, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    y = np.asarray(y, dtype=float)
    if float(np.linalg.norm(y)) == 0.0:
        raise ZeroVector("y must be non-zero")
    xs = np.asarray(xs, dtype=float)
    if xs.shape != (3, 3):
        raise DependentProbes(f"need exactly 3 probe vectors, got shape {xs.shape}")
    gram = det3(xs @ xs.T)
    if gram <= GRAM_TOL:
        raise DependentProbes(f"probe Gram determinant {gram:.3e} is not above 1e-9")
    return y, xs


def binary_protocol(
    rho: np.ndarray,
    y: np.ndarray = DEFAULT_Y,
    xs: np.ndarray = DEFAULT_XS,
    corr_oracle: CorrOracle | None = None,
    assume_pure: bool = False,
) -> tuple[Verdict, ProtocolTrace]:
    """Three-probe zero/non-zero correlation protocol against a fixed y.

    Probes the xs in order and stops at the first non-zero covariance.  For
    pure input (or with assume_pure) a non-zero probe means Entangled and
    three zeros mean Separable.  Mixed input yields Indeterminate either way,
    with the measured facts recorded in the verdict detail.

    corr_oracle may replace the exact decision rule (e.g. with a finite-shot
    one); it receives an ObservablePair and returns (covariance, is_zero).
    """
    rho = _check_structure(rho)
    y, xs = _check_probes(y, xs)
    oracle = corr_oracle if corr_oracle is not None else exact_corr_oracle(rho)

    probes = []
    found_nonzero = False
    for x in xs:
        value, is_zero = oracle(ObservablePair(x=x, y=y))
        probes.append(Probe(x=x, covariance=value, is_zero=is_zero))
        if not is_zero:
            found_nonzero = True
            break
    used = len(probes) if found_nonzero else 3
    trace = ProtocolTrace(y=y, probes=tuple(probes), measurements_used=used)

    is_pure = assume_pure or purity(rho) >= 1.0 - PURITY_TOL
    if found_nonzero:
        if is_pure:
            verdict = Verdict(
                ENTANGLED, BINARY_PROTOCOL, f"non-zero correlation at probe {used}"
            )
        else:
            verdict = Verdict(
                INDETERMINATE, BINARY_PROTOCOL, "non-zero correlation on mixed input"
            )
    else:
        if is_pure:
            verdict = Verdict(
                SEPARABLE, BINARY_PROTOCOL, "all 3 probed correlations are zero"
            )
        else:
            verdict = Verdict(
                INDETERMINATE,
                BINARY_PROTOCOL,
                "zero correlations on mixed input do not certify separability",
            )
    return verdict, trace


def schmidt_rank(psi: np.ndarray) -> int:
    """Schmidt rank (1 or 2) of a normalized pure state.

    Uses the 2x2 amplitude matrix m with m[i, j] the amplitude of |a_i b_j>;
    its singular values come from the closed-form eigenvalues of m^dagger m,
    counted against the threshold 1e-9.  Rank 1 means separable, 2 entangled.
    This route is independent of the correlation-matrix machinery.
    """
    psi = validate_pure_state(psi)
    m = psi.reshape(2, 2)
    # s_min = |det m| / s_max.  det m comes straight from the amplitudes
    # (going through det(m^dagger m) would lose it to cancellation), while
    # s_max >= 1/sqrt(2) is well conditioned via the Gram trace.
    det_m = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    gram = m.conj().T @ m
    tr = float(gram[0, 0].real + gram[1, 1].real)
    det_gram = float((gram[0, 0] * gram[1, 1] - gram[0, 1] * gram[1, 0]).real)
    disc = math.sqrt(max(tr * tr - 4.0 * det_gram, 0.0))
    s_max = math.sqrt(max((tr + disc) / 2.0, 0.0))
    smallest = abs(det_m) / s_max
    return 2 if smallest > 1e-9 else 1


def partial_transpose_b(rho: np.ndarray) -> np.ndarray:
    """Partial transpose of rho over subsystem B."""
    rho = _check_structure(rho)
    return rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def ppt_is_separable(rho: np.ndarray) -> bool:
    """Separability via positivity of the partial transpose.

    For two qubits this criterion is necessary and sufficient.  Subsystem B is
    transposed; both sides give the same spectrum, but fixing one keeps the
    output bit-reproducible.
    """
    eigenvalues = hermitian_eigenvalues(partial_transpose_b(rho))
    return bool(eigenvalues[0] >= -PSD_TOL)


@dataclass(frozen=True, eq=False)
class WernerReport:
    """Covariance, PPT verdict, and correlation matrix of a Werner state."""

    xi: float
    covariance: float
    ppt_separable: bool
    c_matrix: CorrMatrix


def werner_report(xi: float, pair: ObservablePair) -> WernerReport:
    """Case study of the Werner family at mixing parameter xi.

    The covariance for any pair is -(xi/4) x.y and the correlation matrix is
    -xi times the identity, independent of whether the state is separable
    (xi <= 1/3) or entangled: zero correlations coexist with both answers, so
    the protocol cannot decide mixed states.
    """
    if not 0.0 <= float(xi) <= 1.0:
        raise XiOutOfRange(f"xi = {xi!r} outside [0, 1]")
    rho = werner(xi)
    return WernerReport(
        xi=float(xi),
        covariance=covariance_direct(rho, pair),
        ppt_separable=ppt_is_separable(rho),
        c_matrix=correlation_matrix(rho),
    )
