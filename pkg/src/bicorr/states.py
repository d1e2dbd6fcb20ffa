"""Fixture states, seeded random-state generators, and the state-file format.

All generators are pure functions of their integer seed (numpy PCG64 via
``np.random.default_rng``), so every draw is bit-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from bicorr.qstate import (
    I2,
    PAULIS,
    as_density_matrix,
    density_from_pure,
    validate_pure_state,
)

_BELL_AMPLITUDES = {
    "phi+": np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2.0),
    "phi-": np.array([1, 0, 0, -1], dtype=complex) / np.sqrt(2.0),
    "psi+": np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2.0),
    "psi-": np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2.0),
}


class XiOutOfRange(ValueError):
    """Werner mixing parameter must lie in [0, 1]."""


class ParseError(ValueError):
    """State file is structurally malformed."""


def bell_state(which: str) -> np.ndarray:
    """One of the four Bell states; `which` is 'phi+', 'phi-', 'psi+' or 'psi-'.

    'psi-' is the singlet (|a1 b2> - |a2 b1>) / sqrt(2).
    """
    key = which.lower()
    if key not in _BELL_AMPLITUDES:
        raise ValueError(f"unknown Bell state {which!r}; choose from {sorted(_BELL_AMPLITUDES)}")
    return _BELL_AMPLITUDES[key].copy()


def chen_state() -> np.ndarray:
    """The pure entangled state (|a1 b1> + |a1 b2> + |a2 b2>) / sqrt(3)."""
    return np.array([1, 1, 0, 1], dtype=complex) / np.sqrt(3.0)


def werner(xi: float) -> np.ndarray:
    """Werner density matrix (1 - xi)/4 I + xi |psi-><psi-| for xi in [0, 1].

    Separable exactly for xi <= 1/3; reduces to the singlet projector at
    xi = 1 and to the maximally mixed state at xi = 0.
    """
    xi = float(xi)
    if not 0.0 <= xi <= 1.0:
        raise XiOutOfRange(f"xi = {xi!r} outside [0, 1]")
    return 0.25 * np.array(
        [
            [1 - xi, 0, 0, 0],
            [0, 1 + xi, -2 * xi, 0],
            [0, -2 * xi, 1 + xi, 0],
            [0, 0, 0, 1 - xi],
        ],
        dtype=complex,
    )


def _random_unit_complex(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def haar_random_pure(seed: int) -> np.ndarray:
    """Haar-random two-qubit pure state: normalized complex Gaussian amplitudes."""
    return _random_unit_complex(np.random.default_rng(seed), 4)


def random_product_pure(seed: int) -> np.ndarray:
    """Product of two independent Haar-random single-qubit pure states."""
    rng = np.random.default_rng(seed)
    return np.kron(_random_unit_complex(rng, 2), _random_unit_complex(rng, 2))


def _random_qubit_mixed(rng: np.random.Generator) -> np.ndarray:
    """Single-qubit state with Bloch vector uniform in the unit ball."""
    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    bloch = direction * rng.random() ** (1.0 / 3.0)
    return 0.5 * (I2 + np.einsum("k,kij->ij", bloch, PAULIS))


def _simplex_weights(rng: np.random.Generator, k: int) -> np.ndarray:
    w = rng.exponential(1.0, size=k)
    return w / w.sum()


def random_separable_mixed(seed: int, k: int = 4) -> np.ndarray:
    """Convex mixture of k products of random single-qubit states.

    Separable by construction.  The single-qubit factors are drawn with Bloch
    vectors uniform in the unit ball, so they cover the full (generally mixed)
    qubit state space; weights come from normalized exponential draws, i.e.
    uniform on the simplex.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    weights = _simplex_weights(rng, k)
    rho = np.zeros((4, 4), dtype=complex)
    for w in weights:
        rho += w * np.kron(_random_qubit_mixed(rng), _random_qubit_mixed(rng))
    return rho


def random_mixed(seed: int, k: int = 4) -> np.ndarray:
    """Convex mixture of k Haar-random pure states (generally entangled)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    rng = np.random.default_rng(seed)
    weights = _simplex_weights(rng, k)
    rho = np.zeros((4, 4), dtype=complex)
    for w in weights:
        psi = _random_unit_complex(rng, 4)
        rho += w * np.outer(psi, psi.conj())
    return rho


@dataclass(frozen=True, eq=False)
class StateSpec:
    """Parsed state file: pure amplitudes or a mixed density matrix."""

    kind: str
    label: str | None = None
    amplitudes: np.ndarray | None = None
    matrix: np.ndarray | None = None


def pure_spec(psi: np.ndarray, label: str | None = None) -> StateSpec:
    return StateSpec(kind="pure", label=label, amplitudes=validate_pure_state(psi))


def mixed_spec(rho: np.ndarray, label: str | None = None) -> StateSpec:
    return StateSpec(kind="mixed", label=label, matrix=as_density_matrix(rho))


def density_of(spec: StateSpec) -> np.ndarray:
    """Density matrix of a parsed state (outer product for pure input)."""
    if spec.kind == "pure":
        return density_from_pure(spec.amplitudes)
    return np.array(spec.matrix, dtype=complex)


def _split_pairs(raw, expected: int, what: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what} entries must be [re, im] number pairs") from exc
    if arr.shape != (expected, 2):
        raise ParseError(f"{what} must be {expected} [re, im] pairs, got shape {arr.shape}")
    return arr[:, 0] + 1j * arr[:, 1]


def loads_state(text: str) -> StateSpec:
    """Parse the JSON state document; validates the state it describes."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("state document must be a JSON object")
    kind = doc.get("kind")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("label must be a string")
    if kind == "pure":
        if "amplitudes" not in doc:
            raise ParseError("pure state document needs an 'amplitudes' field")
        psi = _split_pairs(doc["amplitudes"], 4, "amplitudes")
        return pure_spec(psi, label)
    if kind == "mixed":
        if "matrix" not in doc:
            raise ParseError("mixed state document needs a 'matrix' field")
        rows = doc["matrix"]
        if not isinstance(rows, list) or len(rows) != 4:
            raise ParseError("matrix must have 4 rows")
        rho = np.stack([_split_pairs(row, 4, "matrix row") for row in rows])
        return mixed_spec(rho, label)
    raise ParseError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def dumps_state(spec: StateSpec) -> str:
    """Serialize a state to the JSON document format (full float precision)."""
    doc: dict = {"kind": spec.kind}
    if spec.label is not None:
        doc["label"] = spec.label
    if spec.kind == "pure":
        doc["amplitudes"] = [[float(z.real), float(z.imag)] for z in spec.amplitudes]
    else:
        doc["matrix"] = [
            [[float(z.real), float(z.imag)] for z in row] for row in spec.matrix
        ]
    return json.dumps(doc, indent=2)


def load_state_file(path) -> StateSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_state(fh.read())


def save_state_file(path, spec: StateSpec) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_state(spec))
        fh.write("\n")
