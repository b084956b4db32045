"""Multitape machine simulation over transfinite time.

Tapes hold binary words of ordinal length, stored as run-length pairs with an
implicit tail of 0s.  A program is a deterministic table over one shared state
and k independent heads.  Successor steps apply the table; at limit times the
machine state is the liminf of the earlier states, every cell is the liminf of
its earlier values, and every head sits at the liminf of its earlier positions
(a left move from a limit position, or from 0, resets that head to 0).

Limit times are reached by *jumps*: the run loop watches its recent history
for a translation-periodic pattern (same state, same forward tape view, heads
advancing by a constant offset per period) and, when it finds one that is
provably stable, appends the config at the next limit time directly.  Jumps
compose: a detected pattern may itself consist of earlier jumps, which is how
clocks like w^2 and w^3 are reached in finitely many stages.  Detection is
deliberately conservative; anything unprovable ends as limit_undetermined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    _left_difference,
    _pred,
    add,
    compare,
    format_ordinal,
    mul,
    nat,
    parse_ordinal,
)

Runs = tuple[tuple[Ordinal, int], ...]


def _as_ordinal(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return nat(x)
    raise TypeError(f"expected an ordinal, got {x!r}")


# --- words -------------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A binary word of ordinal length, as (run length, bit) pairs."""

    runs: Runs = ()

    def __post_init__(self):
        fixed = []
        prev = None
        for length, bit in self.runs:
            length = _as_ordinal(length)
            if bit not in (0, 1):
                raise ValueError(f"bit must be 0 or 1, got {bit!r}")
            if not length:
                raise ValueError("run length must be at least 1")
            if prev == bit:
                raise ValueError("adjacent runs must have distinct bits")
            fixed.append((length, bit))
            prev = bit
        object.__setattr__(self, "runs", tuple(fixed))


def word_length(w: Word) -> Ordinal:
    total = ZERO
    for length, _ in w.runs:
        total = add(total, length)
    return total


def _parse_run_length(text: str) -> Ordinal:
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    try:
        return parse_ordinal(text)
    except ValueError:
        # allow the coefficient-1 shorthand w^2, w^(w) inside run lengths
        if text.startswith("w^") and "*" not in text:
            return parse_ordinal(text + "*1")
        raise


def parse_word(text: str) -> Word:
    """Parse a word literal like 1^3,0,1^(w^2); empty text is the empty word."""
    if text == "":
        return Word(())
    pieces = []
    for part in text.split(","):
        if not part or part[0] not in "01":
            raise ValueError(f"bad run {part!r}: must start with a bit")
        bit = int(part[0])
        if len(part) == 1:
            length = ONE
        elif part[1] != "^":
            raise ValueError(f"bad run {part!r}: expected '^' after the bit")
        else:
            length = _parse_run_length(part[2:])
        if not length:
            raise ValueError(f"bad run {part!r}: zero length")
        if pieces and pieces[-1][1] == bit:
            pieces[-1] = (add(pieces[-1][0], length), bit)
        else:
            pieces.append((length, bit))
    return Word(tuple(pieces))


def format_word(w: Word) -> str:
    out = []
    for length, bit in w.runs:
        if length == ONE:
            out.append(str(bit))
        elif length == OMEGA:
            out.append(f"{bit}^w")
        elif length.is_finite():
            out.append(f"{bit}^{length.as_int()}")
        else:
            out.append(f"{bit}^({format_ordinal(length)})")
    return ",".join(out)


# --- programs ----------------------------------------------------------------

_MOVES = ("L", "R", "S")


@dataclass(frozen=True)
class Program:
    """Deterministic table machine: one state register, k binary tapes."""

    num_states: int
    num_tapes: int
    start: int
    halt: int
    table: dict
    state_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.num_tapes < 2:
            raise ValueError("a program needs at least 2 tapes")
        if self.num_states < 1:
            raise ValueError("a program needs at least 1 state")
        for q in (self.start, self.halt):
            if not 0 <= q < self.num_states:
                raise ValueError(f"state {q} out of range")
        if not self.state_names:
            object.__setattr__(
                self, "state_names", tuple(f"q{i}" for i in range(self.num_states))
            )
        if len(self.state_names) != self.num_states:
            raise ValueError("state_names length mismatch")
        k = self.num_tapes
        for (q, reads), (nx, writes, moves) in self.table.items():
            if not 0 <= q < self.num_states or q == self.halt:
                raise ValueError(f"bad source state in row {(q, reads)}")
            if not 0 <= nx < self.num_states:
                raise ValueError(f"bad target state in row {(q, reads)}")
            for vec in (reads, writes):
                if len(vec) != k or any(b not in (0, 1) for b in vec):
                    raise ValueError(f"bad bit vector in row {(q, reads)}")
            if len(moves) != k or any(m not in _MOVES for m in moves):
                raise ValueError(f"bad move vector in row {(q, reads)}")
        for q in range(self.num_states):
            if q == self.halt:
                continue
            for reads in itertools.product((0, 1), repeat=k):
                if (q, reads) not in self.table:
                    name = self.state_names[q]
                    raise ValueError(f"missing row for {name} reading {reads}")


def parse_program(text: str) -> Program:
    """Parse assembly lines `q0 1,0 -> q1 0,0 R,S` plus #tapes/#start/#halt.

    States are numbered in order of first appearance in the rule lines; names
    that only occur in directives are appended afterwards.  Lines starting
    with '#' that are not directives are comments.
    """
    tapes = 2
    start_name = None
    halt_name = None
    index: dict[str, int] = {}

    def intern(name: str) -> int:
        if name not in index:
            index[name] = len(index)
        return index[name]

    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line.split()
            if parts[0] == "#tapes":
                tapes = int(parts[1])
            elif parts[0] == "#start":
                start_name = parts[1]
            elif parts[0] == "#halt":
                halt_name = parts[1]
            continue
        if "->" not in line:
            raise ValueError(f"line {lineno}: expected '->' in rule {line!r}")
        lhs, rhs = line.split("->")
        left = lhs.split()
        right = rhs.split()
        if len(left) != 2 or len(right) != 3:
            raise ValueError(f"line {lineno}: malformed rule {line!r}")
        src = intern(left[0])
        reads = _parse_bits(left[1], tapes, lineno)
        dst = intern(right[0])
        writes = _parse_bits(right[1], tapes, lineno)
        moves = tuple(right[2].split(","))
        if len(moves) != tapes or any(m not in _MOVES for m in moves):
            raise ValueError(f"line {lineno}: bad move vector {right[2]!r}")
        rows.append(((src, reads), (dst, writes, moves)))

    if halt_name is None:
        raise ValueError("missing #halt directive")
    if start_name is not None:
        intern(start_name)
    halt = intern(halt_name)
    if not index:
        raise ValueError("program has no states")
    start = index[start_name] if start_name is not None else 0
    names = tuple(sorted(index, key=index.get))
    table = {}
    for key, val in rows:
        if key in table:
            raise ValueError(f"duplicate rule for {names[key[0]]} reading {key[1]}")
        table[key] = val
    return Program(len(index), tapes, start, halt, table, names)


def _parse_bits(text: str, k: int, lineno: int) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != k or any(p not in ("0", "1") for p in parts):
        raise ValueError(f"line {lineno}: bad bit vector {text!r}")
    return tuple(int(p) for p in parts)


def format_program(p: Program) -> str:
    lines = [
        f"#tapes {p.num_tapes}",
        f"#start {p.state_names[p.start]}",
        f"#halt {p.state_names[p.halt]}",
    ]
    for (q, reads), (nx, writes, moves) in sorted(p.table.items()):
        lines.append(
            f"{p.state_names[q]} {','.join(map(str, reads))}"
            f" -> {p.state_names[nx]} {','.join(map(str, writes))}"
            f" {','.join(moves)}"
        )
    return "\n".join(lines) + "\n"


# --- configurations and tape primitives --------------------------------------


@dataclass(frozen=True)
class Configuration:
    state: int
    heads: tuple[Ordinal, ...]
    tapes: tuple[Runs, ...]


def _canon(pieces) -> Runs:
    out = []
    for length, bit in pieces:
        if not length:
            continue
        if out and out[-1][1] == bit:
            out[-1] = (add(out[-1][0], length), bit)
        else:
            out.append((length, bit))
    while out and out[-1][1] == 0:
        out.pop()
    return tuple(out)


def _tape_read(runs: Runs, pos: Ordinal) -> int:
    acc = ZERO
    for length, bit in runs:
        acc = add(acc, length)
        if compare(pos, acc) < 0:
            return bit
    return 0


def _tape_split(runs: Runs, pos: Ordinal):
    """Split into (pieces covering [0, pos), canonical suffix from pos)."""
    acc = ZERO
    prefix = []
    for i, (length, bit) in enumerate(runs):
        end = add(acc, length)
        if compare(pos, end) < 0:
            off = _left_difference(acc, pos)
            if off:
                prefix.append((off, bit))
            rest = _left_difference(off, length)
            return prefix, ((rest, bit),) + runs[i + 1 :]
        prefix.append((length, bit))
        acc = end
    pad = _left_difference(acc, pos)
    if pad:
        prefix.append((pad, 0))
    return prefix, ()


def _tape_suffix(runs: Runs, pos: Ordinal) -> Runs:
    return _tape_split(runs, pos)[1]


def _tape_write(runs: Runs, pos: Ordinal, bit: int) -> Runs:
    prefix, suffix = _tape_split(runs, pos)
    if suffix:
        length0, bit0 = suffix[0]
        rest = _left_difference(ONE, length0)
        return _canon(prefix + [(ONE, bit), (rest, bit0)] + list(suffix[1:]))
    return _canon(prefix + [(ONE, bit)])


def _overwrite(runs: Runs, lo: Ordinal, hi: Ordinal, bit: int) -> Runs:
    prefix, _ = _tape_split(runs, lo)
    suffix = _tape_suffix(runs, hi)
    return _canon(prefix + [(_left_difference(lo, hi), bit)] + list(suffix))


def _tape_and(a: Runs, b: Runs) -> Runs:
    out = []
    i = j = 0
    ra, rb = list(a), list(b)
    while i < len(ra) and j < len(rb):
        la, ba = ra[i]
        lb, bb = rb[j]
        c = compare(la, lb)
        take = la if c <= 0 else lb
        out.append((take, ba & bb))
        if c < 0:
            i += 1
            rb[j] = (_left_difference(la, lb), bb)
        elif c > 0:
            j += 1
            ra[i] = (_left_difference(lb, la), ba)
        else:
            i += 1
            j += 1
    return _canon(out)


def _segment_constant(runs: Runs, lo: Ordinal, hi: Ordinal):
    """The single bit filling cells [lo, hi), or None if the segment varies."""
    length = _left_difference(lo, hi)
    seen = set()
    acc = ZERO
    for run_length, bit in _tape_suffix(runs, lo):
        if compare(acc, length) >= 0:
            break
        seen.add(bit)
        acc = add(acc, run_length)
    if compare(acc, length) < 0:
        seen.add(0)
    if len(seen) == 1:
        return seen.pop()
    return None


# --- successor step ----------------------------------------------------------


def _move_head(h: Ordinal, m: str) -> Ordinal:
    if m == "R":
        return add(h, ONE)
    if m == "S":
        return h
    if h.is_successor():
        return _pred(h)
    return ZERO  # left move at a limit position, or at 0, resets


def _step_with_moves(c: Configuration, p: Program):
    reads = tuple(
        _tape_read(c.tapes[t], c.heads[t]) for t in range(p.num_tapes)
    )
    nx, writes, moves = p.table[(c.state, reads)]
    tapes = tuple(
        _tape_write(c.tapes[t], c.heads[t], writes[t]) for t in range(p.num_tapes)
    )
    heads = tuple(_move_head(c.heads[t], moves[t]) for t in range(p.num_tapes))
    return Configuration(nx, heads, tapes), moves


def step(c: Configuration, p: Program) -> Configuration:
    """One successor step; requires c.state != p.halt."""
    return _step_with_moves(c, p)[0]


# --- run loop with limit jumps -----------------------------------------------


@dataclass(frozen=True)
class SimulationLimits:
    window: int = 64  # concrete steps between detection attempts
    depth: int = 3  # jump spans must have leading exponent < depth
    max_stages: int = 50_000


DEFAULT_LIMITS = SimulationLimits()


@dataclass(frozen=True)
class RunOutcome:
    kind: str  # halted | out_of_budget | limit_undetermined
    time: Ordinal
    output: Word | None = None
    accept: int | None = None
    ledger: tuple[tuple[str, Ordinal], ...] = ()


@dataclass(frozen=True)
class _Stage:
    """One history entry: a reached configuration plus interval summaries.

    A step stage summarizes only itself.  A jump stage stands for the whole
    open interval of times it skipped, so its min_heads/min_tapes/l_flags
    aggregate that interval (min_heads as sound lower bounds, min_tapes as
    exact per-cell minima, l_flags as "some skipped step moved left").
    """

    clock: Ordinal
    config: Configuration
    kind: str  # init | step | jump
    period: int
    min_heads: tuple[Ordinal, ...]
    max_heads: tuple[Ordinal, ...]
    min_tapes: tuple[Runs, ...]
    l_flags: tuple[bool, ...]


def _ldiff(lo: Ordinal, hi: Ordinal):
    try:
        return _left_difference(lo, hi)
    except ValueError:
        return None


def _check_candidate(stages, i0, i1, i2, limits):
    """Try the pattern hypothesis stages[i0] -> stages[i1] -> stages[i2].

    Accepts only when the evolution after i1 provably replays the observed
    leg forever: equal states and forward tape views at all three anchors,
    equal clock spans, equal head offsets per tape, no head dipping below its
    leg start, and for advancing tapes no overshoot past the leg end, no left
    moves, and constant settled/minimum segments.  Returns the jump stage.
    """
    a, b, c = stages[i0], stages[i1], stages[i2]
    if not (a.config.state == b.config.state == c.config.state):
        return None
    span = _left_difference(a.clock, b.clock)
    if span != _left_difference(b.clock, c.clock):
        return None
    if compare(span.terms[0][0], nat(limits.depth)) >= 0:
        return None
    k = len(a.config.heads)
    deltas = []
    for t in range(k):
        d1 = _ldiff(a.config.heads[t], b.config.heads[t])
        d2 = _ldiff(b.config.heads[t], c.config.heads[t])
        if d1 is None or d1 != d2:
            return None
        deltas.append(d1)
    for t in range(k):
        view = _tape_suffix(a.config.tapes[t], a.config.heads[t])
        if view != _tape_suffix(b.config.tapes[t], b.config.heads[t]):
            return None
        if view != _tape_suffix(c.config.tapes[t], c.config.heads[t]):
            return None
    for lo, hi in ((i0, i1), (i1, i2)):
        start_heads = stages[lo].config.heads
        end_heads = stages[hi].config.heads
        for s in stages[lo + 1 : hi + 1]:
            for t in range(k):
                if compare(s.min_heads[t], start_heads[t]) < 0:
                    return None  # dipped below the leg start
                if deltas[t]:
                    if compare(s.max_heads[t], end_heads[t]) > 0:
                        return None  # overshot the leg end
                    if s.l_flags[t]:
                        return None  # a left move may behave differently shifted
    period = stages[i1 + 1 : i2 + 1]
    lam = add(b.clock, mul(span, OMEGA))
    state_star = min(s.config.state for s in period)
    heads_star = []
    tapes_star = []
    min_tapes = []
    max_heads = []
    for t in range(k):
        and_tape = period[0].min_tapes[t]
        for s in period[1:]:
            and_tape = _tape_and(and_tape, s.min_tapes[t])
        h1 = b.config.heads[t]
        h2 = c.config.heads[t]
        if not deltas[t]:
            heads_star.append(h1)
            tapes_star.append(and_tape)
            min_tapes.append(and_tape)
            max_heads.append(max(s.max_heads[t] for s in period))
            continue
        settled = _segment_constant(c.config.tapes[t], h1, h2)
        floor = _segment_constant(and_tape, h1, add(h2, ONE))
        if settled is None or floor is None:
            return None
        h_star = add(h1, mul(deltas[t], OMEGA))
        heads_star.append(h_star)
        tapes_star.append(_overwrite(c.config.tapes[t], h2, h_star, settled))
        if floor == 1:
            min_tapes.append(and_tape)
        else:
            min_tapes.append(_overwrite(and_tape, h2, h_star, 0))
        max_heads.append(h_star)
    min_heads = tuple(
        min(s.min_heads[t] for s in period) for t in range(k)
    )
    l_flags = tuple(any(s.l_flags[t] for s in period) for t in range(k))
    return _Stage(
        lam,
        Configuration(state_star, tuple(heads_star), tuple(tapes_star)),
        "jump",
        i2 - i1,
        min_heads,
        tuple(max_heads),
        tuple(min_tapes),
        l_flags,
    )


def _find_candidate(stages, limits):
    n = len(stages) - 1
    for m in range(1, n // 2 + 1):
        found = _check_candidate(stages, n - 2 * m, n - m, n, limits)
        if found is not None:
            return found
    return None


def limit_jump(trace, p: Program):
    """Compute the limit configuration of a plain configuration history.

    trace is a sequence of consecutive Configurations (one per step).  If a
    provably stable pattern ends the trace, returns (limit configuration,
    period); otherwise None.  Left moves are invisible in a bare trace, so a
    head that decreased or sat at 0 is conservatively treated as suspect.
    """
    if len(trace) < 3:
        return None
    k = p.num_tapes
    stages = []
    prev = None
    for idx, cfg in enumerate(trace):
        if len(cfg.heads) != k or len(cfg.tapes) != k:
            raise ValueError("configuration shape does not match the program")
        flags = (False,) * k
        if prev is not None:
            flags = tuple(
                compare(cfg.heads[t], prev.heads[t]) < 0
                or (not cfg.heads[t] and not prev.heads[t])
                for t in range(k)
            )
        stages.append(
            _Stage(nat(idx), cfg, "step", 0, cfg.heads, cfg.heads, cfg.tapes, flags)
        )
        prev = cfg
    found = _find_candidate(stages, DEFAULT_LIMITS)
    if found is None:
        return None
    return found.config, found.period


def _halt_reachable(p: Program) -> bool:
    edges: dict[int, set[int]] = {}
    for (q, _), (nx, _, _) in p.table.items():
        edges.setdefault(q, set()).add(nx)
    seen = {p.start}
    frontier = [p.start]
    while frontier:
        q = frontier.pop()
        for nx in edges.get(q, ()):
            if nx not in seen:
                seen.add(nx)
                frontier.append(nx)
    return p.halt in seen


def _halted(config: Configuration, clock: Ordinal) -> RunOutcome:
    return RunOutcome(
        "halted",
        clock,
        output=Word(config.tapes[0]),
        accept=_tape_read(config.tapes[0], ZERO),
    )


def run(
    p: Program,
    input: Word,
    budget,
    limits: SimulationLimits = DEFAULT_LIMITS,
    observer=None,
) -> RunOutcome:
    """Run p on input until it halts, the ordinal budget is hit, or the limit
    detector gives up.  The reported time of a halted outcome is exact."""
    budget = _as_ordinal(budget)
    if not budget:
        raise ValueError("budget must be at least 1")
    k = p.num_tapes
    if not _halt_reachable(p):
        # the halt state cannot ever be entered: liminf states are visited
        # states, so the run is a certified non-halter
        return RunOutcome(
            "out_of_budget", budget, ledger=(("halt_unreachable", budget),)
        )
    config = Configuration(
        p.start, (ZERO,) * k, (_canon(input.runs),) + ((),) * (k - 1)
    )
    if config.state == p.halt:
        return _halted(config, ZERO)
    clock = ZERO
    stage = _Stage(
        ZERO, config, "init", 0, config.heads, config.heads, config.tapes, (False,) * k
    )
    stages = [stage]
    if observer is not None:
        observer(stage)
    appended = 1
    keep = 4 * limits.window + 16
    since = 0
    while True:
        if appended >= limits.max_stages:
            return RunOutcome("limit_undetermined", clock)
        config, moves = _step_with_moves(config, p)
        clock = add(clock, ONE)
        stage = _Stage(
            clock,
            config,
            "step",
            0,
            config.heads,
            config.heads,
            config.tapes,
            tuple(m == "L" for m in moves),
        )
        stages.append(stage)
        appended += 1
        if observer is not None:
            observer(stage)
        if len(stages) > keep:
            del stages[: len(stages) - keep]
        if config.state == p.halt:
            return _halted(config, clock)
        if compare(clock, budget) >= 0:
            return RunOutcome("out_of_budget", budget)
        since += 1
        if since <= limits.window:
            continue
        since = 0
        while True:  # cascade: a fresh jump may complete a larger pattern
            found = _find_candidate(stages, limits)
            if found is None:
                break
            if compare(found.clock, budget) >= 0:
                return RunOutcome("out_of_budget", budget)
            stages.append(found)
            appended += 1
            if observer is not None:
                observer(found)
            if len(stages) > keep:
                del stages[: len(stages) - keep]
            clock = found.clock
            config = found.config
            if config.state == p.halt:
                return _halted(config, clock)


# --- canonical program enumeration -------------------------------------------
#
# Index layout, reading the binary expansion of i with its leading 1 removed:
# unary state count (s-1 ones, then 0), unary tape count (k-2 ones, then 0),
# then one fixed-width row per (state, read vector) in lexicographic order:
# target state in max(1, bitlen(s-1)) bits, k write bits, 2 bits per move
# (L=00, R=01, S=10).  Start is state 0, halt is state s-1.  Any index that
# fails to decode maps to the null program.

_MOVE_BITS = {"00": "L", "01": "R", "10": "S"}
_BITS_MOVE = {v: k for k, v in _MOVE_BITS.items()}


def _null_program() -> Program:
    table = {
        (0, reads): (1, (0, 0), ("S", "S"))
        for reads in itertools.product((0, 1), repeat=2)
    }
    return Program(2, 2, 0, 1, table)


def _decode_payload(bits: str):
    pos = 0
    ones = 0
    while pos < len(bits) and bits[pos] == "1":
        ones += 1
        pos += 1
    if pos >= len(bits):
        return None
    pos += 1
    s = ones + 1
    ones = 0
    while pos < len(bits) and bits[pos] == "1":
        ones += 1
        pos += 1
    if pos >= len(bits):
        return None
    pos += 1
    k = ones + 2
    width = max(1, (s - 1).bit_length())
    row = width + k + 2 * k
    body = len(bits) - pos
    if s == 1:
        if body:
            return None
    else:
        if k > body.bit_length() + 1:
            return None  # 2**k alone would exceed the payload
        if body != (s - 1) * (2 ** k) * row:
            return None
    table = {}
    for q in range(s - 1):
        for reads in itertools.product((0, 1), repeat=k):
            chunk = bits[pos : pos + row]
            pos += row
            nx = int(chunk[:width], 2)
            if nx >= s:
                return None
            writes = tuple(int(ch) for ch in chunk[width : width + k])
            moves = []
            for t in range(k):
                mb = chunk[width + k + 2 * t : width + k + 2 * t + 2]
                if mb not in _MOVE_BITS:
                    return None
                moves.append(_MOVE_BITS[mb])
            table[(q, reads)] = (nx, writes, tuple(moves))
    return Program(s, k, 0, s - 1, table)


def enumerate_program(i: int) -> Program:
    """Total program enumeration; malformed indices give the null program."""
    if not isinstance(i, int) or i < 1:
        return _null_program()
    decoded = _decode_payload(bin(i)[3:])
    return decoded if decoded is not None else _null_program()


def encode_program(p: Program) -> int:
    """Inverse of enumerate_program on its canonical image."""
    if p.start != 0 or p.halt != p.num_states - 1:
        raise ValueError("encodable programs start at state 0 and halt at the last")
    s, k = p.num_states, p.num_tapes
    width = max(1, (s - 1).bit_length())
    bits = ["1", "1" * (s - 1) + "0", "1" * (k - 2) + "0"]
    for q in range(s - 1):
        for reads in itertools.product((0, 1), repeat=k):
            nx, writes, moves = p.table[(q, reads)]
            bits.append(format(nx, f"0{width}b"))
            bits.append("".join(map(str, writes)))
            bits.append("".join(_BITS_MOVE[m] for m in moves))
    return int("".join(bits), 2)


# --- budgeted simulation with stopwatch accounting ---------------------------


def claim2_simulate(i: int, w: Word, limits: SimulationLimits = DEFAULT_LIMITS):
    """Simulate program i on w under a two-lap stopwatch of length |w|.

    Three phases: scan an initial w-block to read off i, set up the decoded
    table and two stopwatch tracks of length |w|, then run the program while
    a stopwatch head advances once per simulated step, stopping when the
    second track is exhausted (i.e. after |w|*2 simulated steps).  Each
    simulated step costs the table-size constant c, so the reported total
    stays below |w|*4 however long the program runs.
    """
    length = word_length(w)
    if compare(length, mul(OMEGA, OMEGA)) < 0:
        raise ValueError("input must have length at least w^2")
    p = enumerate_program(i)
    inner = run(p, w, mul(length, nat(2)), limits)
    c = len(p.table) + p.num_states
    simulate = mul(nat(c), inner.time)
    total = add(add(OMEGA, length), simulate)
    ledger = (
        ("scan", OMEGA),
        ("setup", length),
        ("simulate", simulate),
        ("per_sim_step", nat(c)),
        ("inner_steps", inner.time),
    )
    return RunOutcome(inner.kind, total, inner.output, inner.accept, ledger)
