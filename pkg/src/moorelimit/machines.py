"""Deterministic Moore-style finite state machines and the identification-limit toolkit.

A machine emits one output symbol per state, starting with the initial state,
so a run on a word of length L yields L+1 output symbols.  A finite record of
observed outcomes (a :class:`Trace`) pins down only finitely many transitions;
the operations here make the resulting ambiguity constructive: build the chain
machine a trace literally encodes, enumerate every behaviorally-distinct
machine consistent with the trace up to a state bound, and produce witness
pairs of trace-consistent but experimentally distinguishable machines together
with a minimal separating experiment.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

from . import kernels

Symbol = Union[str, int]
Word = Sequence[Symbol]

#: Input symbol used for autonomous observation records that carry no inputs.
DEFAULT_INPUT: Symbol = "a"


class AlphabetError(ValueError):
    """A symbol falls outside the declared alphabet, or alphabets mismatch."""


class DegenerateAlphabetError(ValueError):
    """The output alphabet admits only one behavior class, so no witness exists."""


def _unique(symbols: Iterable[Symbol], what: str) -> tuple[Symbol, ...]:
    out: list[Symbol] = []
    for sym in symbols:
        if sym in out:
            raise ValueError(f"duplicate symbol {sym!r} in {what}")
        out.append(sym)
    if not out:
        raise ValueError(f"{what} must be nonempty")
    return tuple(out)


@dataclass(frozen=True)
class Machine:
    """A deterministic finite state machine with per-state outputs.

    ``transition[s][i]`` is the successor of state ``s`` under the ``i``-th
    input-alphabet symbol; ``output[s]`` is the symbol emitted on entering
    state ``s``.  Both maps are total.
    """

    state_count: int
    input_alphabet: tuple[Symbol, ...]
    output_alphabet: tuple[Symbol, ...]
    transition: tuple[tuple[int, ...], ...]
    output: tuple[Symbol, ...]
    initial: int = 0

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", _unique(self.input_alphabet, "input alphabet"))
        object.__setattr__(self, "output_alphabet", _unique(self.output_alphabet, "output alphabet"))
        object.__setattr__(self, "transition", tuple(tuple(row) for row in self.transition))
        object.__setattr__(self, "output", tuple(self.output))
        n = self.state_count
        if n < 1:
            raise ValueError("state_count must be >= 1")
        if len(self.transition) != n:
            raise ValueError("transition table must have one row per state")
        for s, row in enumerate(self.transition):
            if len(row) != len(self.input_alphabet):
                raise ValueError(f"transition row {s} must cover the input alphabet")
            for t in row:
                if not (isinstance(t, int) and 0 <= t < n):
                    raise ValueError(f"transition target {t!r} out of range in state {s}")
        if len(self.output) != n:
            raise ValueError("output map must cover every state")
        for s, sym in enumerate(self.output):
            if sym not in self.output_alphabet:
                raise AlphabetError(f"output {sym!r} of state {s} not in output alphabet")
        if not (isinstance(self.initial, int) and 0 <= self.initial < n):
            raise ValueError(f"initial state {self.initial!r} out of range")

    @cached_property
    def _input_index(self) -> dict[Symbol, int]:
        return {sym: i for i, sym in enumerate(self.input_alphabet)}

    @cached_property
    def _output_index(self) -> dict[Symbol, int]:
        return {sym: i for i, sym in enumerate(self.output_alphabet)}


@dataclass(frozen=True)
class Trace:
    """A finite record of observed outcome symbols, optionally with inputs.

    ``outputs`` holds the N recorded symbols; ``inputs`` holds the N-1 symbols
    applied between consecutive records.  Omitting ``inputs`` models autonomous
    observation: every step uses the single trivial input ``DEFAULT_INPUT``.
    """

    outputs: tuple[Symbol, ...]
    inputs: tuple[Symbol, ...] | None = None

    def __post_init__(self):
        outputs = tuple(self.outputs)
        if len(outputs) < 1:
            raise ValueError("a trace records at least one outcome")
        inputs = self.inputs
        if inputs is None:
            inputs = (DEFAULT_INPUT,) * (len(outputs) - 1)
        inputs = tuple(inputs)
        if len(inputs) != len(outputs) - 1:
            raise ValueError(
                f"trace with {len(outputs)} outputs needs {len(outputs) - 1} inputs, got {len(inputs)}"
            )
        object.__setattr__(self, "outputs", outputs)
        object.__setattr__(self, "inputs", inputs)

    def __len__(self) -> int:
        return len(self.outputs)


@dataclass(frozen=True)
class Experiment:
    """A multiple experiment: input words, each run on a fresh copy of a machine."""

    words: tuple[tuple[Symbol, ...], ...]

    def __post_init__(self):
        if len(self.words) == 0:
            raise ValueError("an experiment contains at least one word")
        object.__setattr__(self, "words", tuple(tuple(w) for w in self.words))


@dataclass(frozen=True)
class WitnessPair:
    """Two trace-consistent, non-equivalent machines and an experiment separating them."""

    machine_a: Machine
    machine_b: Machine
    separating: Experiment


def run(machine: Machine, word: Word) -> list[Symbol]:
    """Run ``machine`` on ``word`` and return the |word|+1 emitted outputs."""
    index = machine._input_index
    state = machine.initial
    outs = [machine.output[state]]
    for sym in word:
        i = index.get(sym)
        if i is None:
            raise AlphabetError(f"input symbol {sym!r} not in alphabet {machine.input_alphabet}")
        state = machine.transition[state][i]
        outs.append(machine.output[state])
    return outs


def run_experiment(machine: Machine, experiment: Experiment) -> list[list[Symbol]]:
    """Run every word of ``experiment`` on a fresh copy of ``machine``."""
    return [run(machine, word) for word in experiment.words]


def consistent(machine: Machine, trace: Trace) -> bool:
    """True iff the machine reproduces the trace outputs from its initial state."""
    for sym in trace.outputs:
        if sym not in machine._output_index:
            raise AlphabetError(f"trace output {sym!r} not in alphabet {machine.output_alphabet}")
    return run(machine, trace.inputs) == list(trace.outputs)


def _require_shared_alphabets(a: Machine, b: Machine) -> None:
    if set(a.input_alphabet) != set(b.input_alphabet):
        raise AlphabetError(
            f"input alphabets differ: {a.input_alphabet} vs {b.input_alphabet}"
        )
    if set(a.output_alphabet) != set(b.output_alphabet):
        raise AlphabetError(
            f"output alphabets differ: {a.output_alphabet} vs {b.output_alphabet}"
        )


def equivalent(a: Machine, b: Machine) -> bool:
    """True iff every input word elicits identical output sequences from a and b.

    Decided by breadth-first search over reachable state pairs of the product
    machine; terminates after at most |a| * |b| pair expansions.
    """
    _require_shared_alphabets(a, b)
    b_index = b._input_index
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        s, t = queue.popleft()
        if a.output[s] != b.output[t]:
            return False
        for i, sym in enumerate(a.input_alphabet):
            pair = (a.transition[s][i], b.transition[t][b_index[sym]])
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True


def distinguishing_experiment(a: Machine, b: Machine) -> Experiment | None:
    """Shortest single-word experiment on which a and b disagree, or None.

    Returns None iff the machines are equivalent.  Among words of minimal
    length the lexicographically first (in input-alphabet order) is returned;
    the empty word is returned when the initial outputs already differ.
    """
    _require_shared_alphabets(a, b)
    b_index = b._input_index
    start = (a.initial, b.initial)
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        (s, t), word = queue.popleft()
        if a.output[s] != b.output[t]:
            return Experiment((word,))
        for i, sym in enumerate(a.input_alphabet):
            pair = (a.transition[s][i], b.transition[t][b_index[sym]])
            if pair not in seen:
                seen.add(pair)
                queue.append((pair, word + (sym,)))
    return None


def canonical_form(machine: Machine) -> Machine:
    """Drop unreachable states and renumber the rest in breadth-first order.

    Inputs are visited in alphabet order, so two machines have identical
    canonical forms exactly when they are isomorphic after trimming.
    """
    renumber = {machine.initial: 0}
    order = [machine.initial]
    queue = deque([machine.initial])
    while queue:
        s = queue.popleft()
        for t in machine.transition[s]:
            if t not in renumber:
                renumber[t] = len(renumber)
                order.append(t)
                queue.append(t)
    transition = tuple(tuple(renumber[t] for t in machine.transition[s]) for s in order)
    output = tuple(machine.output[s] for s in order)
    return Machine(
        state_count=len(order),
        input_alphabet=machine.input_alphabet,
        output_alphabet=machine.output_alphabet,
        transition=transition,
        output=output,
        initial=0,
    )


def canonical_encoding(machine: Machine) -> tuple[int, ...]:
    """Integer tuple keying a machine up to renaming of its output symbols' spelling.

    Equal encodings of canonical forms mean isomorphic machines; the tuple also
    serves as the deterministic (lexicographic) ordering for enumeration output.
    """
    out_index = machine._output_index
    flat = tuple(t for row in machine.transition for t in row)
    lam = tuple(out_index[sym] for sym in machine.output)
    return (machine.state_count,) + flat + lam


def minimize(machine: Machine) -> Machine:
    """Smallest machine equivalent to ``machine``, in canonical form.

    Partition refinement: states start grouped by output symbol and are split
    until one-step successors respect the grouping; the quotient is then
    trimmed to reachable classes.  Idempotent.
    """
    n = machine.state_count
    block = [machine._output_index[machine.output[s]] for s in range(n)]
    n_blocks = len(set(block))
    while True:
        sigs: dict[tuple[int, ...], int] = {}
        new = []
        for s in range(n):
            sig = (block[s],) + tuple(block[t] for t in machine.transition[s])
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new.append(sigs[sig])
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)
    rep = {}
    for s in range(n):
        rep.setdefault(block[s], s)
    transition = tuple(
        tuple(block[machine.transition[rep[b]][i]] for i in range(len(machine.input_alphabet)))
        for b in range(n_blocks)
    )
    output = tuple(machine.output[rep[b]] for b in range(n_blocks))
    quotient = Machine(
        state_count=n_blocks,
        input_alphabet=machine.input_alphabet,
        output_alphabet=machine.output_alphabet,
        transition=transition,
        output=output,
        initial=block[machine.initial],
    )
    return canonical_form(quotient)


def _resolve_alphabets(
    trace: Trace,
    output_alphabet: Sequence[Symbol] | None,
    input_alphabet: Sequence[Symbol] | None,
) -> tuple[tuple[Symbol, ...], tuple[Symbol, ...]]:
    """Alphabets covering the trace, defaulting to first-occurrence order."""
    if output_alphabet is None:
        output_alphabet = list(dict.fromkeys(trace.outputs))
    if input_alphabet is None:
        input_alphabet = list(dict.fromkeys(trace.inputs)) or [DEFAULT_INPUT]
    outputs = _unique(output_alphabet, "output alphabet")
    inputs = _unique(input_alphabet, "input alphabet")
    for sym in trace.outputs:
        if sym not in outputs:
            raise AlphabetError(f"trace output {sym!r} not in alphabet {outputs}")
    for sym in trace.inputs:
        if sym not in inputs:
            raise AlphabetError(f"trace input {sym!r} not in alphabet {inputs}")
    return outputs, inputs


def trace_to_fsm(
    trace: Trace,
    output_alphabet: Sequence[Symbol] | None = None,
    input_alphabet: Sequence[Symbol] | None = None,
) -> Machine:
    """The N-state chain machine a trace literally encodes.

    State i emits the i-th recorded output and steps to state i+1 under the
    recorded input; all unrecorded transitions self-loop (totality with the
    least commitment), as does the final state.  Always trace-consistent.
    """
    outputs, inputs = _resolve_alphabets(trace, output_alphabet, input_alphabet)
    n = len(trace)
    input_index = {sym: i for i, sym in enumerate(inputs)}
    transition = []
    for s in range(n):
        row = [s] * len(inputs)
        if s < n - 1:
            row[input_index[trace.inputs[s]]] = s + 1
        transition.append(tuple(row))
    return Machine(
        state_count=n,
        input_alphabet=inputs,
        output_alphabet=outputs,
        transition=tuple(transition),
        output=tuple(trace.outputs),
        initial=0,
    )


def witness_moore(
    trace: Trace,
    output_alphabet: Sequence[Symbol] | None = None,
    input_alphabet: Sequence[Symbol] | None = None,
) -> WitnessPair:
    """Two non-equivalent machines that both reproduce the trace, plus a separator.

    Machine A is the minimized trace chain (it repeats the final record
    forever).  Machine B extends the chain by one fresh state whose output is
    the first alphabet symbol differing from the final record, reached from
    the chain's last state under every input; the pair therefore agrees on the
    recorded past and provably diverges in some future.  Requires an output
    alphabet of size >= 2.
    """
    outputs, inputs = _resolve_alphabets(trace, output_alphabet, input_alphabet)
    if len(outputs) < 2:
        raise DegenerateAlphabetError(
            "all machines over a one-symbol output alphabet are equivalent; "
            "a witness pair needs an output alphabet of size >= 2"
        )
    chain = trace_to_fsm(trace, outputs, inputs)
    machine_a = minimize(chain)

    divergent = next(sym for sym in outputs if sym != trace.outputs[-1])
    n = len(trace)
    transition = list(chain.transition[:-1])
    transition.append(tuple(n for _ in inputs))      # old final state feeds the fresh state
    transition.append(tuple(n for _ in inputs))      # fresh state self-loops
    extended = Machine(
        state_count=n + 1,
        input_alphabet=inputs,
        output_alphabet=outputs,
        transition=tuple(transition),
        output=tuple(trace.outputs) + (divergent,),
        initial=0,
    )
    machine_b = minimize(extended)

    separating = distinguishing_experiment(machine_a, machine_b)
    if separating is None:  # impossible by construction
        raise AssertionError("witness construction produced equivalent machines")
    return WitnessPair(machine_a=machine_a, machine_b=machine_b, separating=separating)


def enumerate_consistent(
    trace: Trace,
    max_states: int,
    output_alphabet: Sequence[Symbol] | None = None,
    input_alphabet: Sequence[Symbol] | None = None,
) -> list[Machine]:
    """Every behaviorally-distinct machine with at most ``max_states`` states
    that reproduces the trace.

    Machines are reported as minimized canonical forms, deduplicated by
    behavioral equivalence and sorted lexicographically on their canonical
    encoding.  The candidate filter runs in the compiled kernel when available
    (see :mod:`moorelimit.kernels`); the result is backend-independent.
    """
    if max_states < 1:
        raise ValueError("max_states must be >= 1")
    outputs, inputs = _resolve_alphabets(trace, output_alphabet, input_alphabet)
    out_index = {sym: i for i, sym in enumerate(outputs)}
    in_index = {sym: i for i, sym in enumerate(inputs)}
    trace_out = tuple(out_index[sym] for sym in trace.outputs)
    trace_in = tuple(in_index[sym] for sym in trace.inputs)
    encodings = kernels.consistent_machine_encodings(
        max_states, len(inputs), len(outputs), trace_in, trace_out
    )
    machines = []
    for enc in sorted(encodings):
        m = enc[0]
        flat = enc[1 : 1 + m * len(inputs)]
        lam = enc[1 + m * len(inputs) :]
        machines.append(
            Machine(
                state_count=m,
                input_alphabet=inputs,
                output_alphabet=outputs,
                transition=tuple(
                    tuple(flat[s * len(inputs) : (s + 1) * len(inputs)]) for s in range(m)
                ),
                output=tuple(outputs[i] for i in lam),
                initial=0,
            )
        )
    return machines
