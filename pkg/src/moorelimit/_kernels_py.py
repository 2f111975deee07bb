"""Pure-Python enumeration kernel.

`consistent_machine_encodings` is the hot combinatorial filter behind
machine enumeration: it walks every transition table over a fixed number of
states and keeps those that can reproduce a recorded trace.  The compiled
module ``_kernels_cy`` implements the same contract; this module is the
fallback and the readable reference.

Everything here works on integer-indexed alphabets: inputs are indices into
the input alphabet, outputs indices into the output alphabet.  States are
``0 .. n-1`` with the initial state fixed at 0, which loses no behaviors
because relabeling states never changes behavior and any machine with fewer
than ``n`` states reappears padded with unreachable states.
"""

from __future__ import annotations

import itertools


def _minimized_encoding(
    n: int, n_inputs: int, delta: tuple[int, ...], lam: list[int]
) -> tuple[int, ...]:
    """Canonical encoding (size, transitions, outputs) of the minimized machine.

    Partition refinement over all states followed by a breadth-first renumber
    from the initial state's class; unreachable classes are dropped.  Two
    tables get the same encoding exactly when they are behaviorally equivalent.
    """
    block = list(lam)
    n_blocks = len(set(block))
    while True:
        sigs: dict[tuple[int, ...], int] = {}
        new = []
        for s in range(n):
            base = s * n_inputs
            sig = (block[s],) + tuple(block[delta[base + i]] for i in range(n_inputs))
            v = sigs.get(sig)
            if v is None:
                v = len(sigs)
                sigs[sig] = v
            new.append(v)
        block = new
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)

    rep = [-1] * n_blocks
    for s in range(n):
        if rep[block[s]] < 0:
            rep[block[s]] = s

    renumber = {block[0]: 0}
    order = [block[0]]
    head = 0
    while head < len(order):
        base = rep[order[head]] * n_inputs
        head += 1
        for i in range(n_inputs):
            b = block[delta[base + i]]
            if b not in renumber:
                renumber[b] = len(renumber)
                order.append(b)

    enc = [len(order)]
    for b in order:
        base = rep[b] * n_inputs
        for i in range(n_inputs):
            enc.append(renumber[block[delta[base + i]]])
    for b in order:
        enc.append(lam[rep[b]])
    return tuple(enc)


def consistent_machine_encodings(
    n_states: int,
    n_inputs: int,
    n_outputs: int,
    trace_inputs: tuple[int, ...],
    trace_outputs: tuple[int, ...],
) -> set[tuple[int, ...]]:
    """Encodings of all distinct behaviors with <= n_states states matching the trace.

    For each transition table the trace determines the visited state path and
    therefore forces the outputs of visited states; output choices remain free
    only on unvisited states.  Survivors are minimized and deduplicated via
    their canonical encoding.
    """
    if min(n_states, n_inputs, n_outputs) < 1:
        raise ValueError("state and alphabet sizes must be >= 1")
    if len(trace_outputs) != len(trace_inputs) + 1:
        raise ValueError("trace must have exactly one more output than inputs")
    n = n_states
    found: set[tuple[int, ...]] = set()
    for delta in itertools.product(range(n), repeat=n * n_inputs):
        forced = [-1] * n
        forced[0] = trace_outputs[0]
        ok = True
        s = 0
        for j, i_idx in enumerate(trace_inputs):
            s = delta[s * n_inputs + i_idx]
            req = trace_outputs[j + 1]
            if forced[s] < 0:
                forced[s] = req
            elif forced[s] != req:
                ok = False
                break
        if not ok:
            continue
        free = [s for s in range(n) if forced[s] < 0]
        for completion in itertools.product(range(n_outputs), repeat=len(free)):
            lam = forced[:]
            for s, v in zip(free, completion):
                lam[s] = v
            found.add(_minimized_encoding(n, n_inputs, delta, lam))
    return found
