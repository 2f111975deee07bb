"""Desk-scale demonstrations of three quantum no-go theorems.

CHSH with the singlet against an exhaustive local-deterministic-strategy bound,
contextuality via the two-qubit Pauli-product magic square, and the no-cloning
obstruction in its inner-product-preservation form.  Every result here is
exact arithmetic or a brute-force search over a space small enough to print.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .machines import (
    Experiment,
    Machine,
    Symbol,
    Trace,
    WitnessPair,
    consistent,
    equivalent,
    run_experiment,
    witness_moore,
)
from .quantum import (
    DensityOperator,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    StateVector,
    TAU_NUM,
    overlap,
)


def singlet() -> DensityOperator:
    """The two-qubit singlet (|01> - |10>)/sqrt(2) as a density operator."""
    psi = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
    return DensityOperator(np.outer(psi, psi.conj()))


def measurement_axis(angle: float) -> np.ndarray:
    """Spin observable along the x-z plane direction at ``angle`` from z."""
    return math.sin(angle) * PAULI_X + math.cos(angle) * PAULI_Z


@dataclass(frozen=True)
class ChshSetting:
    """Four measurement angles (x-z plane) and a two-qubit state."""

    a: float
    a_prime: float
    b: float
    b_prime: float
    state: DensityOperator

    def __post_init__(self):
        for angle in (self.a, self.a_prime, self.b, self.b_prime):
            if not math.isfinite(angle):
                raise ValueError(f"measurement angle {angle!r} is not finite")
        if self.state.dim != 4:
            raise ValueError("CHSH needs a two-qubit state (dim 4)")


def correlator(state: DensityOperator, x: float, y: float) -> float:
    """E(x, y) = <(n_x . sigma) tensor (n_y . sigma)> in the given state."""
    observable = np.kron(measurement_axis(x), measurement_axis(y))
    return float(np.trace(state.matrix @ observable).real)


def chsh_value(setting: ChshSetting) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b')."""
    st = setting.state
    return (
        correlator(st, setting.a, setting.b)
        - correlator(st, setting.a, setting.b_prime)
        + correlator(st, setting.a_prime, setting.b)
        + correlator(st, setting.a_prime, setting.b_prime)
    )


@dataclass(frozen=True)
class LhvStrategy:
    """Deterministic +-1 outcomes pre-assigned to the four settings."""

    a: int
    a_prime: int
    b: int
    b_prime: int

    def __post_init__(self):
        for v in (self.a, self.a_prime, self.b, self.b_prime):
            if v not in (1, -1):
                raise ValueError("strategy values must be +1 or -1")

    def chsh(self) -> int:
        return self.a * self.b - self.a * self.b_prime + self.a_prime * self.b + self.a_prime * self.b_prime


@dataclass(frozen=True)
class LhvSearchResult:
    """Exhaustive table of all 16 deterministic strategies."""

    max_abs: int
    table: tuple[tuple[LhvStrategy, int], ...]

    @property
    def achievers_plus_two(self) -> tuple[LhvStrategy, ...]:
        return tuple(s for s, v in self.table if v == 2)


def lhv_chsh_bound() -> LhvSearchResult:
    """Enumerate every deterministic local strategy; integer arithmetic throughout."""
    table = []
    for a, ap, b, bp in itertools.product((1, -1), repeat=4):
        strategy = LhvStrategy(a, ap, b, bp)
        table.append((strategy, strategy.chsh()))
    return LhvSearchResult(
        max_abs=max(abs(v) for _, v in table),
        table=tuple(table),
    )


# Two-qubit Pauli products: rows multiply to +I, the third column to -I.
_PAULI_1 = {"X": PAULI_X, "Y": PAULI_Y, "Z": PAULI_Z, "I": np.eye(2, dtype=complex)}
_SQUARE_LABELS = (
    ("XI", "IX", "XX"),
    ("IY", "YI", "YY"),
    ("XY", "YX", "ZZ"),
)


def _pauli_product(label: str) -> np.ndarray:
    return np.kron(_PAULI_1[label[0]], _PAULI_1[label[1]])


@dataclass(frozen=True)
class MerminSquare:
    """3x3 grid of two-qubit +-1 observables, commuting along rows and columns."""

    labels: tuple[tuple[str, str, str], ...]
    operators: tuple[tuple[np.ndarray, ...], ...]

    def __post_init__(self):
        ops = tuple(tuple(np.asarray(m, dtype=complex) for m in row) for row in self.operators)
        if len(ops) != 3 or any(len(row) != 3 for row in ops):
            raise ValueError("the square is 3x3")
        eye = np.eye(4)
        for row in ops:
            for m in row:
                if m.shape != (4, 4):
                    raise ValueError("cells are 4x4 operators")
                if np.max(np.abs(m @ m - eye)) > TAU_NUM:
                    raise ValueError("every cell must square to the identity")
        for line in self._lines(ops):
            for m1, m2 in itertools.combinations(line, 2):
                if np.max(np.abs(m1 @ m2 - m2 @ m1)) > TAU_NUM:
                    raise ValueError("rows and columns must commute")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "labels", tuple(tuple(row) for row in self.labels))

    @staticmethod
    def _lines(ops):
        rows = [tuple(row) for row in ops]
        cols = [tuple(ops[r][c] for r in range(3)) for c in range(3)]
        return rows + cols


def peres_mermin_square() -> MerminSquare:
    """The standard magic square of two-qubit Pauli products."""
    operators = tuple(
        tuple(_pauli_product(label) for label in row) for row in _SQUARE_LABELS
    )
    return MerminSquare(labels=_SQUARE_LABELS, operators=operators)


@dataclass(frozen=True)
class KochenSpeckerReport:
    """Operator identities of the magic square versus classical +-1 assignments."""

    labels: tuple[tuple[str, str, str], ...]
    max_commutator: float
    row_signs: tuple[int, int, int]
    col_signs: tuple[int, int, int]
    max_product_deviation: float
    satisfying_assignments: int
    assignment_count: int

    @property
    def contextual(self) -> bool:
        return self.satisfying_assignments == 0


def _product_sign(ops) -> tuple[int, float]:
    prod = ops[0] @ ops[1] @ ops[2]
    eye = np.eye(prod.shape[0])
    dev_plus = float(np.max(np.abs(prod - eye)))
    dev_minus = float(np.max(np.abs(prod + eye)))
    return (1, dev_plus) if dev_plus <= dev_minus else (-1, dev_minus)


def kochen_specker_check(square: MerminSquare | None = None) -> KochenSpeckerReport:
    """Verify the square's operator identities and search all 512 classical assignments.

    A classical assignment puts +-1 in each cell and must reproduce every row
    and column product sign; the parity obstruction (all nine values multiply
    to +1 along rows but -1 along columns) leaves zero of the 512.
    """
    if square is None:
        square = peres_mermin_square()
    ops = square.operators
    max_comm = 0.0
    for line in MerminSquare._lines(ops):
        for m1, m2 in itertools.combinations(line, 2):
            max_comm = max(max_comm, float(np.max(np.abs(m1 @ m2 - m2 @ m1))))

    row_signs = []
    col_signs = []
    max_dev = 0.0
    for r in range(3):
        sign, dev = _product_sign([ops[r][0], ops[r][1], ops[r][2]])
        row_signs.append(sign)
        max_dev = max(max_dev, dev)
    for c in range(3):
        sign, dev = _product_sign([ops[0][c], ops[1][c], ops[2][c]])
        col_signs.append(sign)
        max_dev = max(max_dev, dev)

    satisfying = 0
    for cells in itertools.product((1, -1), repeat=9):
        g = [cells[0:3], cells[3:6], cells[6:9]]
        rows_ok = all(g[r][0] * g[r][1] * g[r][2] == row_signs[r] for r in range(3))
        cols_ok = all(g[0][c] * g[1][c] * g[2][c] == col_signs[c] for c in range(3))
        if rows_ok and cols_ok:
            satisfying += 1

    return KochenSpeckerReport(
        labels=square.labels,
        max_commutator=max_comm,
        row_signs=tuple(row_signs),
        col_signs=tuple(col_signs),
        max_product_deviation=max_dev,
        satisfying_assignments=satisfying,
        assignment_count=2 ** 9,
    )


def no_cloning_gap(psi: StateVector, phi: StateVector) -> float:
    """|<psi|phi>| - |<psi|phi>|^2: positive exactly when one unitary cannot clone both.

    A cloner U(|x>|blank>) = |x>|x> would need <psi|phi> = <psi|phi>^2, which
    holds only for identical or orthogonal pairs; the gap measures the failure.
    """
    v = abs(overlap(psi, phi))
    return v - v * v


@dataclass(frozen=True)
class CloneInferenceReport:
    """Classical no-cloning analogue: record-identical machines that are not copies.

    Both machines reproduce the trace, so no finite record certifies one as a
    clone of the other; the separating experiment is a future on which their
    dynamics diverge.
    """

    trace: Trace
    machine_a: Machine
    machine_b: Machine
    separating: Experiment
    outputs_a: tuple[tuple[Symbol, ...], ...]
    outputs_b: tuple[tuple[Symbol, ...], ...]
    records_identical: bool
    machines_equivalent: bool


def clone_inference_report(
    trace: Trace,
    output_alphabet=None,
    input_alphabet=None,
) -> CloneInferenceReport:
    """Build the record-identical-yet-distinguishable witness for a trace."""
    pair: WitnessPair = witness_moore(trace, output_alphabet, input_alphabet)
    outputs_a = tuple(tuple(o) for o in run_experiment(pair.machine_a, pair.separating))
    outputs_b = tuple(tuple(o) for o in run_experiment(pair.machine_b, pair.separating))
    records_identical = consistent(pair.machine_a, trace) and consistent(pair.machine_b, trace)
    return CloneInferenceReport(
        trace=trace,
        machine_a=pair.machine_a,
        machine_b=pair.machine_b,
        separating=pair.separating,
        outputs_a=outputs_a,
        outputs_b=outputs_b,
        records_identical=records_identical,
        machines_equivalent=equivalent(pair.machine_a, pair.machine_b),
    )
