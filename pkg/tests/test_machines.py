import random

import pytest

from moorelimit import (
    AlphabetError,
    DegenerateAlphabetError,
    Experiment,
    Machine,
    Trace,
    canonical_encoding,
    canonical_form,
    consistent,
    distinguishing_experiment,
    equivalent,
    minimize,
    run,
    run_experiment,
    trace_to_fsm,
    witness_moore,
)


def constant(value=0, alphabet=(0, 1)):
    return Machine(
        state_count=1,
        input_alphabet=("a",),
        output_alphabet=alphabet,
        transition=((0,),),
        output=(value,),
    )


def toggle():
    return Machine(
        state_count=2,
        input_alphabet=("a",),
        output_alphabet=(0, 1),
        transition=((1,), (0,)),
        output=(0, 1),
    )


def toggle_unrolled():
    # four states walking 0 -> 1 -> 2 -> 3 -> 0 with outputs 0,1,0,1
    return Machine(
        state_count=4,
        input_alphabet=("a",),
        output_alphabet=(0, 1),
        transition=((1,), (2,), (3,), (0,)),
        output=(0, 1, 0, 1),
    )


def random_machine(rng, n_states=None, n_inputs=None, n_outputs=None):
    n = n_states or rng.randint(1, 5)
    ni = n_inputs or rng.randint(1, 2)
    no = n_outputs or rng.randint(1, 3)
    inputs = tuple("ab"[:ni])
    outputs = tuple(range(no))
    return Machine(
        state_count=n,
        input_alphabet=inputs,
        output_alphabet=outputs,
        transition=tuple(
            tuple(rng.randrange(n) for _ in range(ni)) for _ in range(n)
        ),
        output=tuple(rng.randrange(no) for _ in range(n)),
        initial=rng.randrange(n),
    )


# ---------------------------------------------------------------------------
# run / consistency


def test_run_constant_machine():
    assert run(constant(), "aa") == [0, 0, 0]


def test_run_toggle_machine():
    assert run(toggle(), "aa") == [0, 1, 0]


def test_run_empty_word_emits_initial_output():
    assert run(toggle(), ()) == [0]


def test_run_rejects_unknown_input():
    with pytest.raises(AlphabetError):
        run(toggle(), "ax")


def test_run_length_property():
    rng = random.Random(7)
    for _ in range(200):
        m = random_machine(rng)
        word = tuple(
            m.input_alphabet[rng.randrange(len(m.input_alphabet))]
            for _ in range(rng.randint(0, 8))
        )
        outs = run(m, word)
        assert len(outs) == len(word) + 1
        assert all(sym in m.output_alphabet for sym in outs)


def test_consistent_true_and_false():
    assert consistent(constant(), Trace((0, 0)))
    assert not consistent(constant(), Trace((0, 1)))
    assert consistent(toggle(), Trace((0, 1, 0)))


def test_consistent_rejects_foreign_symbol():
    with pytest.raises(AlphabetError):
        consistent(constant(alphabet=(0,)), Trace((0, 7)))


def test_run_experiment_fresh_copies():
    exp = Experiment((("a",), ("a", "a")))
    assert run_experiment(toggle(), exp) == [[0, 1], [0, 1, 0]]


# ---------------------------------------------------------------------------
# equivalence / distinguishing experiments


def test_minimize_preserves_behavior():
    assert equivalent(toggle_unrolled(), minimize(toggle_unrolled()))


def test_constants_with_different_outputs_differ():
    assert not equivalent(constant(0), constant(1))


def test_toggle_equivalent_to_unrolling():
    assert equivalent(toggle(), toggle_unrolled())


def test_equivalent_requires_shared_alphabets():
    other = Machine(
        state_count=1,
        input_alphabet=("b",),
        output_alphabet=(0, 1),
        transition=((0,),),
        output=(0,),
    )
    with pytest.raises(AlphabetError):
        equivalent(constant(), other)


def test_distinguishing_empty_word_when_initial_outputs_differ():
    exp = distinguishing_experiment(constant(0), constant(1))
    assert exp == Experiment(((),))


def test_distinguishing_none_for_equivalent_machines():
    assert distinguishing_experiment(toggle(), toggle_unrolled()) is None


def test_distinguishing_prefers_alphabet_order_on_ties():
    # successor under either input gives away the difference at depth 1;
    # the reported word must use the first input symbol
    flat = Machine(
        state_count=1,
        input_alphabet=("a", "b"),
        output_alphabet=(0, 1),
        transition=((0, 0),),
        output=(0,),
    )
    forked = Machine(
        state_count=2,
        input_alphabet=("a", "b"),
        output_alphabet=(0, 1),
        transition=((1, 1), (1, 1)),
        output=(0, 1),
    )
    assert distinguishing_experiment(flat, forked) == Experiment((("a",),))


def test_distinguishing_word_is_minimal():
    rng = random.Random(11)
    found = 0
    for _ in range(300):
        a = random_machine(rng, n_outputs=2)
        b = random_machine(rng, n_outputs=2)
        if set(a.input_alphabet) != set(b.input_alphabet):
            continue
        exp = distinguishing_experiment(a, b)
        if exp is None:
            assert equivalent(a, b)
            continue
        found += 1
        (word,) = exp.words
        assert run(a, word) != run(b, word)
        # no strictly shorter word separates
        shorter = []
        frontier = [()]
        for _ in range(len(word)):
            shorter.extend(frontier)
            frontier = [w + (sym,) for w in frontier for sym in a.input_alphabet]
        for w in shorter:
            assert run(a, w) == run(b, w)
    assert found > 50


# ---------------------------------------------------------------------------
# minimization / canonical forms


def test_minimize_collapses_output_equivalent_states():
    m = Machine(
        state_count=2,
        input_alphabet=("a",),
        output_alphabet=(0, 1),
        transition=((1,), (0,)),
        output=(0, 0),
    )
    assert minimize(m).state_count == 1


def test_minimize_keeps_minimal_machine():
    assert minimize(toggle()) == canonical_form(toggle())


def test_minimize_unrolled_toggle():
    small = minimize(toggle_unrolled())
    assert small.state_count == 2
    assert equivalent(small, toggle())


def test_minimize_idempotent_and_equivalent_on_random_machines():
    rng = random.Random(13)
    for _ in range(150):
        m = random_machine(rng)
        small = minimize(m)
        assert equivalent(m, small)
        again = minimize(small)
        assert again == small


def test_canonical_form_removes_unreachable_state():
    m = Machine(
        state_count=3,
        input_alphabet=("a",),
        output_alphabet=(0, 1),
        transition=((0,), (2,), (1,)),
        output=(0, 1, 1),
    )
    trimmed = canonical_form(m)
    assert trimmed.state_count == 1
    assert trimmed.output == (0,)


def test_canonical_form_renumbers_relabeled_machines_identically():
    reversed_toggle = Machine(
        state_count=2,
        input_alphabet=("a",),
        output_alphabet=(0, 1),
        transition=((1,), (0,)),
        output=(1, 0),
        initial=1,
    )
    assert canonical_form(reversed_toggle) == canonical_form(toggle())


def test_canonical_form_idempotent_on_random_machines():
    rng = random.Random(17)
    for _ in range(100):
        m = random_machine(rng)
        c = canonical_form(m)
        assert canonical_form(c) == c
        assert canonical_encoding(c) == canonical_encoding(canonical_form(c))


def test_canonical_encoding_distinguishes_outputs():
    assert canonical_encoding(constant(0)) != canonical_encoding(constant(1))


# ---------------------------------------------------------------------------
# machine/trace validation


def test_machine_rejects_bad_transition_target():
    with pytest.raises(ValueError):
        Machine(
            state_count=1,
            input_alphabet=("a",),
            output_alphabet=(0,),
            transition=((1,),),
            output=(0,),
        )


def test_machine_rejects_short_transition_row():
    with pytest.raises(ValueError):
        Machine(
            state_count=1,
            input_alphabet=("a", "b"),
            output_alphabet=(0,),
            transition=((0,),),
            output=(0,),
        )


def test_machine_rejects_output_outside_alphabet():
    with pytest.raises(AlphabetError):
        Machine(
            state_count=1,
            input_alphabet=("a",),
            output_alphabet=(0,),
            transition=((0,),),
            output=(1,),
        )


def test_machine_rejects_bad_initial():
    with pytest.raises(ValueError):
        Machine(
            state_count=1,
            input_alphabet=("a",),
            output_alphabet=(0,),
            transition=((0,),),
            output=(0,),
            initial=1,
        )


def test_machine_rejects_duplicate_alphabet_symbols():
    with pytest.raises(ValueError):
        Machine(
            state_count=1,
            input_alphabet=("a", "a"),
            output_alphabet=(0,),
            transition=((0, 0),),
            output=(0,),
        )


def test_trace_requires_matching_input_length():
    with pytest.raises(ValueError):
        Trace((0, 1, 0), ("a",))


def test_trace_defaults_to_trivial_inputs():
    t = Trace((0, 1, 0))
    assert t.inputs == ("a", "a")
    assert len(t) == 3


def test_trace_must_be_nonempty():
    with pytest.raises(ValueError):
        Trace(())


def test_experiment_must_hold_a_word():
    with pytest.raises(ValueError):
        Experiment(())


# ---------------------------------------------------------------------------
# trace_to_fsm / witness_moore


def test_trace_to_fsm_chain_shape():
    m = trace_to_fsm(Trace((0, 1, 0)))
    assert m.state_count == 3
    assert m.output == (0, 1, 0)
    assert m.transition[-1] == (2,)
    assert consistent(m, Trace((0, 1, 0)))


def test_trace_to_fsm_constant_chain_minimizes_to_one_state():
    chain = trace_to_fsm(Trace((3, 3, 3)), output_alphabet=(3, 7))
    assert chain.state_count == 3
    assert minimize(chain).state_count == 1


def test_trace_to_fsm_always_consistent():
    rng = random.Random(19)
    for _ in range(100):
        outputs = tuple(rng.randrange(3) for _ in range(rng.randint(1, 8)))
        t = Trace(outputs)
        assert consistent(trace_to_fsm(t, output_alphabet=(0, 1, 2)), t)


def test_witness_two_step_trace():
    pair = witness_moore(Trace((0, 1)))
    assert pair.machine_a.state_count == 2
    assert pair.machine_b.state_count == 3
    assert pair.separating.words == (("a", "a"),)
    assert run_experiment(pair.machine_a, pair.separating) == [[0, 1, 1]]
    assert run_experiment(pair.machine_b, pair.separating) == [[0, 1, 0]]


def test_witness_constant_trace_with_spare_symbol():
    pair = witness_moore(Trace((3, 3, 3)), output_alphabet=(3, 7))
    assert pair.machine_a.state_count == 1
    assert pair.machine_b.state_count == 4
    assert pair.separating.words == (("a", "a", "a"),)


def test_witness_degenerate_alphabet():
    with pytest.raises(DegenerateAlphabetError):
        witness_moore(Trace((0,)))


def test_witness_alphabet_must_cover_trace():
    with pytest.raises(AlphabetError):
        witness_moore(Trace((0, 2)), output_alphabet=(0, 1))


def test_witness_properties_on_random_traces():
    rng = random.Random(23)
    for _ in range(60):
        n_out = rng.choice([2, 3])
        outputs = tuple(rng.randrange(n_out) for _ in range(rng.randint(1, 8)))
        trace = Trace(outputs)
        pair = witness_moore(trace, output_alphabet=tuple(range(n_out)))
        assert consistent(pair.machine_a, trace)
        assert consistent(pair.machine_b, trace)
        assert not equivalent(pair.machine_a, pair.machine_b)
        outs_a = run_experiment(pair.machine_a, pair.separating)
        outs_b = run_experiment(pair.machine_b, pair.separating)
        assert outs_a != outs_b


def test_witness_with_recorded_inputs():
    trace = Trace((0, 1, 1), ("b", "a"))
    pair = witness_moore(trace, input_alphabet=("a", "b"))
    assert consistent(pair.machine_a, trace)
    assert consistent(pair.machine_b, trace)
    assert not equivalent(pair.machine_a, pair.machine_b)
