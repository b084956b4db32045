"""otmlab: a desk-scale lab for transfinite machine experiments.

Exact Cantor-normal-form ordinal arithmetic, a multitape machine interpreter
with liminf limit-stage semantics and ordinal budgets, budgeted diagonal
language deciders, and an instrumented first-order model checker over
pairing-coded structures.
"""

from .ordinal import (
    CnfSplit,
    OMEGA,
    ONE,
    Ordinal,
    OrdinalParseError,
    ZERO,
    add,
    cnf_split,
    compare,
    format_ordinal,
    mul,
    nat,
    omega_pow,
    pair,
    parse_ordinal,
    power,
    unpair,
)
from .machine import (
    DEFAULT_LIMITS,
    Configuration,
    Program,
    RunOutcome,
    SimulationLimits,
    Word,
    claim2_simulate,
    encode_program,
    enumerate_program,
    format_program,
    format_word,
    limit_jump,
    parse_program,
    parse_word,
    run,
    step,
    word_length,
)

__version__ = "0.1.0"
