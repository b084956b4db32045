import random

import pytest
from hypothesis import given, settings, strategies as st

from otmlab import (
    DEFAULT_LIMITS,
    OMEGA,
    ONE,
    ZERO,
    Configuration,
    Program,
    SimulationLimits,
    Word,
    add,
    claim2_simulate,
    encode_program,
    enumerate_program,
    format_program,
    format_word,
    limit_jump,
    mul,
    nat,
    parse_program,
    parse_word,
    power,
    run,
    step,
    word_length,
)
from reference_tm import reference_trace

W2 = power(OMEGA, nat(2))
W3 = power(OMEGA, nat(3))

SWEEP = parse_program(
    """
    #tapes 2
    #start q0
    #halt qH
    q0 1,0 -> q0 1,0 R,S
    q0 1,1 -> q0 1,1 R,S
    q0 0,0 -> qH 0,0 S,S
    q0 0,1 -> qH 0,1 S,S
    """
)

# always moves right; its halt state has no incoming edge at all
GO_RIGHT = parse_program(
    """
    #tapes 2
    #start q0
    #halt qH
    q0 0,0 -> q0 0,0 R,S
    q0 1,0 -> q0 1,0 R,S
    q0 0,1 -> q0 0,1 R,S
    q0 1,1 -> q0 1,1 R,S
    """
)

# flips cell 0 between 1 and 0 forever; the halt rows only fire if tape 1
# ever holds a 1, which never happens, so halting stays possible on paper
ALT_WRITER = parse_program(
    """
    #tapes 2
    #start q0
    #halt qH
    q0 0,0 -> q1 1,0 S,S
    q0 1,0 -> q1 1,0 S,S
    q1 0,0 -> q0 0,0 S,S
    q1 1,0 -> q0 0,0 S,S
    q0 0,1 -> qH 0,1 S,S
    q0 1,1 -> qH 1,1 S,S
    q1 0,1 -> qH 0,1 S,S
    q1 1,1 -> qH 1,1 S,S
    """
)

# net one cell right per three steps, but overshoots and comes back
STUTTER = parse_program(
    """
    #tapes 2
    #start q0
    #halt qH
    q0 0,0 -> q1 0,0 R,S
    q0 1,0 -> q1 1,0 R,S
    q1 0,0 -> q2 0,0 R,S
    q1 1,0 -> q2 1,0 R,S
    q2 0,0 -> q0 0,0 L,S
    q2 1,0 -> q0 1,0 L,S
    q0 0,1 -> qH 0,1 S,S
    q0 1,1 -> qH 1,1 S,S
    q1 0,1 -> qH 0,1 S,S
    q1 1,1 -> qH 1,1 S,S
    q2 0,1 -> qH 0,1 S,S
    q2 1,1 -> qH 1,1 S,S
    """
)


def tape_ones(runs):
    ones = set()
    acc = 0
    for length, bit in runs:
        n = length.as_int()
        if bit:
            ones.update(range(acc, acc + n))
        acc += n
    return frozenset(ones)


# --- words -------------------------------------------------------------------


def test_word_parse_examples():
    w = parse_word("1^3,0,1^(w^2)")
    assert w.runs == ((nat(3), 1), (ONE, 0), (W2, 1))
    assert word_length(w) == W2
    assert word_length(parse_word("1^w,0")) == add(OMEGA, ONE)
    assert parse_word("") == Word(())
    assert word_length(Word(())) == ZERO


def test_word_parser_merges_adjacent_runs():
    assert parse_word("1^2,1^3") == parse_word("1^5")
    assert parse_word("1,1,0,0,0") == parse_word("1^2,0^3")


def test_word_run_length_shorthand():
    assert parse_word("1^(w^2)") == parse_word("1^(w^2*1)")
    assert parse_word("1^(w)") == parse_word("1^w")


@pytest.mark.parametrize("bad", ["2", "1^", "^3", "1^0", "x", "1^w,", ",1", "1 0"])
def test_word_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_word(bad)


def test_word_invariants():
    with pytest.raises(ValueError):
        Word(((ZERO, 1),))
    with pytest.raises(ValueError):
        Word(((ONE, 1), (ONE, 1)))
    with pytest.raises(ValueError):
        Word(((ONE, 2),))


def small_lengths():
    exponents = st.integers(min_value=0, max_value=2)
    terms = st.lists(
        st.tuples(exponents, st.integers(min_value=1, max_value=3)),
        min_size=1,
        max_size=2,
    )

    def build(pairs):
        total = ZERO
        for e, c in sorted(pairs, reverse=True):
            total = add(total, mul(power(OMEGA, nat(e)), nat(c)))
        return total

    return terms.map(build).filter(lambda o: bool(o))


@settings(max_examples=60)
@given(
    st.lists(st.tuples(small_lengths(), st.integers(0, 1)), min_size=0, max_size=4)
)
def test_word_format_parse_round_trip(pairs):
    runs = []
    for length, bit in pairs:
        if runs and runs[-1][1] == bit:
            runs[-1] = (add(runs[-1][0], length), bit)
        else:
            runs.append((length, bit))
    w = Word(tuple(runs))
    assert parse_word(format_word(w)) == w


# --- programs ----------------------------------------------------------------


def test_program_parse_format_round_trip():
    again = parse_program(format_program(SWEEP))
    assert again == SWEEP
    assert again.state_names == SWEEP.state_names


def test_program_parse_errors():
    with pytest.raises(ValueError, match="missing #halt"):
        parse_program("q0 0,0 -> q0 0,0 R,S")
    with pytest.raises(ValueError, match="missing row"):
        parse_program("#halt qH\nq0 0,0 -> qH 0,0 S,S")
    with pytest.raises(ValueError, match="duplicate"):
        parse_program(
            "#halt qH\n"
            "q0 0,0 -> qH 0,0 S,S\nq0 0,1 -> qH 0,0 S,S\n"
            "q0 1,0 -> qH 0,0 S,S\nq0 1,1 -> qH 0,0 S,S\n"
            "q0 0,0 -> q0 0,0 R,S"
        )
    with pytest.raises(ValueError, match="move"):
        parse_program("#halt qH\nq0 0,0 -> qH 0,0 X,S")


def test_program_needs_two_tapes():
    with pytest.raises(ValueError, match="tapes"):
        Program(1, 1, 0, 0, {})


def test_halt_state_has_no_rules():
    with pytest.raises(ValueError, match="source state"):
        Program(2, 2, 0, 1, {(1, (0, 0)): (1, (0, 0), ("S", "S"))})


# --- successor steps ---------------------------------------------------------


def test_step_applies_table_row():
    table = {}
    for reads in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        table[(0, reads)] = (1, (0, 0), ("R", "S"))
    p = Program(2, 2, 0, 1, table)
    c = Configuration(0, (nat(5), ZERO), (((nat(6), 1),), ()))
    nxt = step(c, p)
    assert nxt.state == 1
    assert nxt.heads == (nat(6), ZERO)
    assert nxt.tapes[0] == ((nat(5), 1),)  # cell 5 rewritten to 0


def left_mover():
    table = {}
    for reads in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        table[(0, reads)] = (1, reads, ("L", "S"))
    return Program(2, 2, 0, 1, table)


def test_left_move_at_limit_resets_to_zero():
    c = Configuration(0, (OMEGA, ZERO), ((), ()))
    assert step(c, left_mover()).heads[0] == ZERO


def test_left_move_at_successor_decrements():
    c = Configuration(0, (add(OMEGA, ONE), ZERO), ((), ()))
    assert step(c, left_mover()).heads[0] == OMEGA


def test_left_move_at_zero_stays():
    c = Configuration(0, (ZERO, ZERO), ((), ()))
    assert step(c, left_mover()).heads[0] == ZERO


# --- finite conservativity ---------------------------------------------------


def random_program(rng):
    s = rng.randint(2, 4)
    table = {}
    for q in range(s - 1):
        for reads in [(0, 0), (0, 1), (1, 0), (1, 1)]:
            table[(q, reads)] = (
                rng.randrange(s),
                (rng.randint(0, 1), rng.randint(0, 1)),
                (rng.choice("LRS"), rng.choice("LRS")),
            )
    return Program(s, 2, 0, s - 1, table)


def corpus(count=20, max_steps=200):
    rng = random.Random(0xA11CE)
    found = []
    attempts = 0
    while len(found) < count and attempts < 600:
        attempts += 1
        p = random_program(rng)
        bits = [rng.randint(0, 1) for _ in range(rng.randint(0, 12))]
        _, halted = reference_trace(p.table, 2, p.start, p.halt, bits, max_steps)
        if halted:
            found.append((p, bits))
    return found


def test_agrees_with_finite_reference_step_for_step():
    samples = corpus()
    assert len(samples) == 20
    for p, bits in samples:
        expected, halted = reference_trace(p.table, 2, p.start, p.halt, bits, 200)
        assert halted
        seen = []
        word = parse_word(",".join(str(b) for b in bits))
        outcome = run(p, word, 1000, observer=seen.append)
        assert outcome.kind == "halted"
        assert all(s.kind in ("init", "step") for s in seen)
        assert len(seen) == len(expected)
        for stage, (state, heads, ones) in zip(seen, expected):
            assert stage.config.state == state
            assert tuple(h.as_int() for h in stage.config.heads) == heads
            assert tuple(tape_ones(t) for t in stage.config.tapes) == ones
        assert outcome.time == nat(len(expected) - 1)


# --- runs across limit stages ------------------------------------------------


def test_sweep_halts_on_finite_input():
    out = run(SWEEP, parse_word("1^3,0"), 100)
    assert out.kind == "halted"
    assert out.time == nat(4)  # the halting transition costs a step
    assert out.accept == 1
    assert out.output == parse_word("1^3")


def test_sweep_halts_just_past_omega():
    out = run(SWEEP, parse_word("1^w,0"), mul(OMEGA, nat(3)))
    assert out.kind == "halted"
    assert out.time == add(OMEGA, ONE)
    assert out.accept == 1
    assert out.output == parse_word("1^w")


def test_sweep_halts_just_past_omega_squared():
    out = run(SWEEP, parse_word("1^(w^2)"), mul(W2, nat(3)))
    assert out.kind == "halted"
    assert out.time == add(W2, ONE)


def test_sweep_halts_just_past_omega_cubed():
    out = run(SWEEP, parse_word("1^(w^3)"), mul(W3, nat(3)))
    assert out.kind == "halted"
    assert out.time == add(W3, ONE)


def test_budget_one_boundary():
    out = run(ALT_WRITER, Word(()), 1)
    assert out.kind == "out_of_budget"
    assert out.time == ONE


def test_halting_exactly_at_budget_counts():
    out = run(SWEEP, parse_word("1^3,0"), 4)
    assert out.kind == "halted"
    assert out.time == nat(4)
    short = run(SWEEP, parse_word("1^3,0"), 3)
    assert short.kind == "out_of_budget"
    assert short.time == nat(3)


def test_budget_zero_rejected():
    with pytest.raises(ValueError):
        run(SWEEP, Word(()), 0)


def test_start_equals_halt_halts_at_time_zero():
    p = parse_program("#tapes 2\n#start qH\n#halt qH\n")
    out = run(p, parse_word("1^2"), 5)
    assert out.kind == "halted"
    assert out.time == ZERO
    assert out.accept == 1
    assert out.output == parse_word("1^2")


def test_budget_monotonicity():
    a = run(SWEEP, parse_word("1^w,0"), mul(OMEGA, nat(2)))
    b = run(SWEEP, parse_word("1^w,0"), power(OMEGA, nat(4)))
    assert a.kind == b.kind == "halted"
    assert a.time == b.time
    assert a.output == b.output


def test_alternating_writer_limit_config():
    seen = []
    budget = add(OMEGA, nat(3))
    out = run(ALT_WRITER, Word(()), budget, observer=seen.append)
    assert out.kind == "out_of_budget"
    assert out.time == budget
    jumps = [s for s in seen if s.kind == "jump"]
    assert len(jumps) == 1
    jump = jumps[0]
    assert jump.clock == OMEGA
    assert jump.period == 2
    # liminf of the alternation: the smaller state, and the flapping cell at 0
    assert jump.config.state == 0
    assert jump.config.heads == (ZERO, ZERO)
    assert jump.config.tapes[0] == ()


def test_stutter_walk_is_honestly_undetermined():
    limits = SimulationLimits(window=16, depth=3, max_stages=400)
    out = run(STUTTER, parse_word("1^w"), OMEGA, limits)
    assert out.kind == "limit_undetermined"
    assert out.time.is_finite()


def test_unreachable_halt_is_certified_divergent():
    budget = mul(power(OMEGA, OMEGA), OMEGA)
    out = run(GO_RIGHT, parse_word("1^(w^2)"), budget)
    assert out.kind == "out_of_budget"
    assert out.time == budget
    assert out.ledger == (("halt_unreachable", budget),)


def test_trimmed_history_still_reaches_deep_towers():
    # the w^3 cascade needs the full retained window
    out = run(SWEEP, parse_word("1^(w^3),0,1^5"), power(OMEGA, nat(4)))
    assert out.kind == "halted"
    assert out.time == add(W3, ONE)


# --- the public pattern detector ---------------------------------------------


def collect_steps(p, word, count):
    configs = []
    c = Configuration(
        p.start,
        (ZERO,) * p.num_tapes,
        (tuple(word.runs),) + ((),) * (p.num_tapes - 1),
    )
    configs.append(c)
    for _ in range(count):
        c = step(c, p)
        configs.append(c)
    return configs


def test_limit_jump_right_sweep():
    trace = collect_steps(SWEEP, parse_word("1^w"), 12)
    found = limit_jump(trace, SWEEP)
    assert found is not None
    config, period = found
    assert period == 1
    assert config.state == 0
    assert config.heads[0] == OMEGA
    assert config.tapes[0] == ((OMEGA, 1),)  # tape unchanged


def test_limit_jump_refuses_a_sweep_that_provably_ends():
    # over a finite block the forward view shrinks every step, so no
    # translation-stable pattern exists and none may be reported
    trace = collect_steps(SWEEP, parse_word("1^30"), 12)
    assert limit_jump(trace, SWEEP) is None


def test_limit_jump_state_alternation():
    trace = collect_steps(ALT_WRITER, Word(()), 9)
    found = limit_jump(trace, ALT_WRITER)
    assert found is not None
    config, period = found
    assert period == 2
    assert config.state == 0  # liminf of q0/q1 is the smaller index
    assert config.heads == (ZERO, ZERO)


def test_limit_jump_needs_repetition():
    trace = collect_steps(STUTTER, parse_word("1^30"), 14)
    assert limit_jump(trace, STUTTER) is None
    assert limit_jump(collect_steps(SWEEP, parse_word("1^30"), 2), SWEEP) is None


# --- enumeration -------------------------------------------------------------


def test_small_indices_decode_to_null():
    null = enumerate_program(0)
    assert null.num_states == 2
    assert null.num_tapes == 2
    for i in (0, 1, 2, 3):
        assert enumerate_program(i) == null
    out = run(null, parse_word("1^4"), 10)
    assert out.kind == "halted"
    assert out.time == ONE
    assert out.accept == 0


def test_index_four_is_the_instant_halter():
    p = enumerate_program(4)
    assert p.num_states == 1
    assert p.start == p.halt == 0
    assert p.table == {}
    assert run(p, parse_word("1"), 5).time == ZERO


def test_encode_round_trip_on_fixtures():
    for p in (SWEEP, GO_RIGHT, ALT_WRITER, STUTTER, enumerate_program(0)):
        i = encode_program(p)
        assert enumerate_program(i) == p


def test_encode_rejects_noncanonical_layout():
    table = {}
    for reads in [(0, 0), (0, 1), (1, 0), (1, 1)]:
        table[(1, reads)] = (0, reads, ("S", "S"))
    backwards = Program(2, 2, 1, 0, table)
    with pytest.raises(ValueError):
        encode_program(backwards)


def test_wellformed_indices_below_2_16_decode_injectively():
    null = enumerate_program(0)
    shapes = set()
    wellformed = 0
    for i in range(1, 1 << 16):
        p = enumerate_program(i)
        if p == null and i != encode_program(null):
            continue
        if encode_program(p) != i:
            continue
        wellformed += 1
        shape = (p.num_states, p.num_tapes, tuple(sorted(p.table.items())))
        assert shape not in shapes
        shapes.add(shape)
    assert wellformed > 0


@settings(max_examples=30)
@given(st.integers(min_value=0, max_value=1 << 40))
def test_enumerate_is_total_and_reencodable(i):
    p = enumerate_program(i)
    assert p.num_states >= 1 and p.num_tapes >= 2
    j = encode_program(p)
    assert enumerate_program(j) == p


# --- stopwatch-bounded simulation --------------------------------------------


def go_right_index():
    return encode_program(GO_RIGHT)


def test_claim2_requires_long_input():
    with pytest.raises(ValueError):
        claim2_simulate(0, parse_word("1^w"))


def test_claim2_instant_halter_total():
    out = claim2_simulate(encode_program(enumerate_program(0)), parse_word("1^(w^2)"))
    assert out.kind == "halted"
    assert out.time == add(W2, nat(6))
    ledger = dict(out.ledger)
    assert ledger["scan"] == OMEGA
    assert ledger["setup"] == W2
    assert ledger["per_sim_step"] == nat(6)
    assert ledger["inner_steps"] == ONE


def test_claim2_sweeper_total():
    sweeper = parse_program(format_program(SWEEP))
    out = claim2_simulate(encode_program(sweeper), parse_word("1^(w^2)"))
    assert out.kind == "halted"
    assert out.time == add(mul(W2, nat(2)), nat(6))


@pytest.mark.parametrize(
    "text,expected_total",
    [
        ("1^(w^2)", mul(W2, nat(3))),
        ("1^(w^2*2)", mul(W2, nat(6))),
        ("1^(w^3)", mul(W3, nat(3))),
    ],
)
def test_claim2_exhausted_stopwatch_totals(text, expected_total):
    w = parse_word(text)
    out = claim2_simulate(go_right_index(), w)
    assert out.kind == "out_of_budget"
    assert out.time == expected_total
    length = word_length(w)
    assert dict(out.ledger)["inner_steps"] == mul(length, nat(2))
    # bound: below |w|*4, and the exhauster really used both stopwatch laps
    assert out.time < mul(length, nat(4))
    assert not out.time < mul(length, nat(2))


def test_claim2_bigger_table_same_ordinal_total():
    rows = {}
    for reads in [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]:
        rows[(0, reads)] = (0, reads, ("R", "S", "S"))
    wide = Program(2, 3, 0, 1, rows)
    w = parse_word("1^(w^2)")
    narrow_out = claim2_simulate(go_right_index(), w)
    wide_out = claim2_simulate(encode_program(wide), w)
    assert narrow_out.time == wide_out.time == mul(W2, nat(3))
    assert dict(narrow_out.ledger)["per_sim_step"] == nat(6)
    assert dict(wide_out.ledger)["per_sim_step"] == nat(10)
