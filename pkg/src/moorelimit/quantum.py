"""Dense complex linear algebra for states, effects, POVMs and Born-rule statistics.

Everything is a plain numpy array under a thin validated wrapper.  Dimensions
stay at desk scale (<= 64), so validation always runs eagerly and matrices are
frozen after construction to keep every operation deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

#: Numerical tolerance for operator invariants (Hermiticity, positivity, trace).
TAU_NUM = 1e-9
#: Numerical tolerance for state normalization.
TAU_NORM = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


def _as_matrix(matrix) -> np.ndarray:
    m = np.array(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    m.setflags(write=False)
    return m


def _hermiticity_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


def _eigenvalue_range(m: np.ndarray) -> tuple[float, float]:
    vals = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return float(vals[0]), float(vals[-1])


@dataclass(frozen=True)
class StateVector:
    """A unit vector in a finite-dimensional complex Hilbert space."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 1:
            raise DimensionError("state vector needs dimension >= 1")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > TAU_NORM:
            raise ValueError(f"state vector norm {norm} deviates from 1 beyond {TAU_NORM}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace operator."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _as_matrix(self.matrix)
        dev = _hermiticity_deviation(m)
        if dev > TAU_NUM:
            raise ValueError(f"density operator not Hermitian (deviation {dev})")
        lo, _ = _eigenvalue_range(m)
        if lo < -TAU_NUM:
            raise ValueError(f"density operator has negative eigenvalue {lo}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TAU_NUM:
            raise ValueError(f"density operator trace {tr} deviates from 1")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_state(cls, psi: StateVector) -> "DensityOperator":
        return cls(np.outer(psi.amplitudes, psi.amplitudes.conj()))


@dataclass(frozen=True)
class Effect:
    """A POVM element: Hermitian with spectrum inside [0, 1]."""

    matrix: np.ndarray

    def __post_init__(self):
        m = _as_matrix(self.matrix)
        dev = _hermiticity_deviation(m)
        if dev > TAU_NUM:
            raise ValueError(f"effect not Hermitian (deviation {dev})")
        lo, hi = _eigenvalue_range(m)
        if lo < -TAU_NUM or hi > 1.0 + TAU_NUM:
            raise ValueError(f"effect spectrum [{lo}, {hi}] outside [0, 1]")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class Povm:
    """An ordered, labelled collection of effects summing to the identity."""

    effects: tuple[Effect, ...]
    labels: tuple[Union[str, int], ...]

    def __post_init__(self):
        effects = tuple(
            e if isinstance(e, Effect) else Effect(e) for e in self.effects
        )
        if not effects:
            raise ValueError("a POVM has at least one effect")
        labels = tuple(self.labels)
        if len(labels) != len(effects):
            raise ValueError("one label per effect required")
        if len(set(labels)) != len(labels):
            raise ValueError("POVM outcome labels must be distinct")
        dim = effects[0].dim
        for e in effects:
            if e.dim != dim:
                raise DimensionError("all effects of a POVM share one dimension")
        total = sum(e.matrix for e in effects)
        dev = float(np.max(np.abs(total - np.eye(dim))))
        if dev > TAU_NUM:
            raise ValueError(f"effects sum deviates from identity by {dev}")
        object.__setattr__(self, "effects", effects)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self) -> int:
        return self.effects[0].dim


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities per outcome label; sums to one."""

    labels: tuple[Union[str, int], ...]
    probabilities: tuple[float, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        probs = tuple(float(p) for p in self.probabilities)
        if len(labels) != len(probs):
            raise ValueError("one probability per label required")
        if any(p < 0 for p in probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(sum(probs) - 1.0) > TAU_NUM:
            raise ValueError(f"probabilities sum to {sum(probs)}, not 1")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "probabilities", probs)

    def as_dict(self) -> dict:
        return dict(zip(self.labels, self.probabilities))


@dataclass(frozen=True)
class PovmValidation:
    """Per-invariant outcome of a POVM check, with worst deviations."""

    hermitian: bool
    hermitian_deviation: float
    positive: bool
    positivity_deviation: float
    complete: bool
    completeness_deviation: float

    @property
    def passed(self) -> bool:
        return self.hermitian and self.positive and self.complete


def validate_povm(effects: Sequence, tolerance: float = TAU_NUM) -> PovmValidation:
    """Check Hermiticity, positivity and completeness of candidate effects.

    Accepts raw matrices (the point is to diagnose invalid input); raises
    ``DimensionError`` only for structural problems that make the checks
    meaningless.
    """
    if len(effects) == 0:
        raise DimensionError("a POVM has at least one effect")
    mats = []
    for e in effects:
        m = e.matrix if isinstance(e, Effect) else np.array(e, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"effect has non-square shape {m.shape}")
        mats.append(m)
    dim = mats[0].shape[0]
    for m in mats:
        if m.shape[0] != dim:
            raise DimensionError("effects have mismatched dimensions")
    herm_dev = max(_hermiticity_deviation(m) for m in mats)
    pos_dev = max(max(0.0, -_eigenvalue_range(m)[0]) for m in mats)
    comp_dev = float(np.max(np.abs(sum(mats) - np.eye(dim))))
    return PovmValidation(
        hermitian=herm_dev <= tolerance,
        hermitian_deviation=herm_dev,
        positive=pos_dev <= tolerance,
        positivity_deviation=pos_dev,
        complete=comp_dev <= tolerance,
        completeness_deviation=comp_dev,
    )


def born_distribution(rho: DensityOperator, povm: Povm) -> OutcomeDistribution:
    """Outcome probabilities p_i = trace(rho E_i).

    Roundoff negatives within ``TAU_NUM`` are clamped to zero and the
    distribution renormalized; anything worse is rejected as invalid input.
    """
    if rho.dim != povm.dim:
        raise DimensionError(f"state dim {rho.dim} != POVM dim {povm.dim}")
    probs = []
    for e in povm.effects:
        p = float(np.trace(rho.matrix @ e.matrix).real)
        if p < -TAU_NUM:
            raise ValueError(f"probability {p} below zero beyond tolerance")
        probs.append(min(max(p, 0.0), 1.0))
    total = sum(probs)
    if abs(total - 1.0) > TAU_NUM:
        raise ValueError(f"probabilities sum to {total}, not 1")
    probs = [p / total for p in probs]
    return OutcomeDistribution(labels=povm.labels, probabilities=tuple(probs))


def tensor(a, b):
    """Kronecker product; the left factor carries the slow (coarse) index.

    Two state vectors give a state vector, two operators of the same wrapper
    type give that type, raw arrays (or mixed operands) give a raw array.
    """
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes))
    for cls in (DensityOperator, Effect):
        if isinstance(a, cls) and isinstance(b, cls):
            return cls(np.kron(a.matrix, b.matrix))
    mat_a = a.matrix if isinstance(a, (DensityOperator, Effect)) else np.asarray(a)
    mat_b = b.matrix if isinstance(b, (DensityOperator, Effect)) else np.asarray(b)
    return np.kron(mat_a, mat_b)


def partial_trace(
    rho: DensityOperator, dims: tuple[int, int], keep: Union[str, int]
) -> DensityOperator:
    """Reduced operator on one factor of a bipartite state.

    ``dims`` is (d_A, d_B) with d_A the slow index; ``keep`` selects the factor
    ("A"/0 or "B"/1).  Trace-preserving, and inverts ``tensor`` on products.
    """
    d_a, d_b = dims
    if rho.dim != d_a * d_b:
        raise DimensionError(f"cannot factor dim {rho.dim} as {d_a} x {d_b}")
    blocks = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    if keep in ("A", 0):
        reduced = np.einsum("ijkj->ik", blocks)
    elif keep in ("B", 1):
        reduced = np.einsum("ijil->jl", blocks)
    else:
        raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityOperator(reduced)


def overlap(psi: StateVector, phi: StateVector) -> complex:
    """Inner product <psi|phi>."""
    if psi.dim != phi.dim:
        raise DimensionError(f"state dims differ: {psi.dim} vs {phi.dim}")
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def basis_state(dim: int, index: int) -> StateVector:
    """Computational basis vector |index> in the given dimension."""
    if not 0 <= index < dim:
        raise DimensionError(f"basis index {index} outside dimension {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def basis_povm(dim: int, labels: Sequence | None = None) -> Povm:
    """Projective POVM onto the computational basis."""
    if labels is None:
        labels = tuple(range(dim))
    effects = []
    for i in range(dim):
        m = np.zeros((dim, dim), dtype=complex)
        m[i, i] = 1.0
        effects.append(Effect(m))
    return Povm(effects=tuple(effects), labels=tuple(labels))


def random_state(dim: int, rng: np.random.Generator) -> StateVector:
    """Haar-ish random pure state: normalized complex Gaussian vector."""
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(v / np.linalg.norm(v))


def random_density(dim: int, rng: np.random.Generator) -> DensityOperator:
    """Full-rank random density operator via the Ginibre construction G G†/tr."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real)
