"""A deterministic register machine with step-bounded execution.

The machine has 4 registers and 5 opcodes (HALT, INC, DECJZ, JMP,
ORACLE).  Programs are finite instruction lists numbered by the
package-wide sequence encoding, so *every* natural decodes to a program
and ``decode_program(encode_program(p)) == p``.  Register 0 holds the
input and, on halting, the output; running off the end of the program is
an implicit HALT.  Executing any instruction (including the halting one)
costs one step, so the quickest halt takes exactly 1 step.

Everything here is budgeted: ``run`` either halts within its step budget
or reports that it is still running, and halting facts produced by
:func:`enumerate_halting` and :func:`jump_bit` are relative to explicit
``(p_max, s_max)`` budgets.  The budgeted halting table is the ground
truth all the lower-bound demonstrations are checked against.

The inner stepping loop is provided by a compiled extension when
available, with a pure-Python fallback selected at import time (set
``PACLAB_ENGINE=pure`` to force the fallback).  Both engines implement
the same contract and are property-tested against each other.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional

from .. import encodings
from ..errors import IndexNotHalting
from . import _engine_py

try:  # pragma: no cover - exercised only when the extension is built
    from . import _engine_cy  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover
    _engine_cy = None

if os.environ.get("PACLAB_ENGINE") == "pure" or _engine_cy is None:
    _engine = _engine_py
    ENGINE = "pure"
else:
    _engine = _engine_cy
    ENGINE = "compiled"

STATUS_HALTED = 0
STATUS_RUNNING = 1
STATUS_READ_BEYOND = 2

OP_HALT, OP_INC, OP_DECJZ, OP_JMP, OP_ORACLE = range(5)
_OP_NAMES = ("HALT", "INC", "DECJZ", "JMP", "ORACLE")
_REGISTERS = 4

#: Arguments beyond this bound route the run to the pure engine.
_ENGINE_LIMIT = 2**62


@dataclass(frozen=True)
class Instr:
    """One instruction; ``a``/``b`` meaning depends on the opcode.

    INC a: increment register a.        DECJZ a b: if register a is zero
    jump to b, else decrement.          JMP b: jump to b.
    ORACLE a b: register b := oracle cell indexed by register a.
    """

    op: int
    a: int = 0
    b: int = 0

    def __post_init__(self):
        if not 0 <= self.op < 5:
            raise ValueError("unknown opcode")
        if self.op in (OP_INC, OP_DECJZ, OP_ORACLE) and not 0 <= self.a < _REGISTERS:
            raise ValueError("register out of range")
        if self.op == OP_ORACLE and not 0 <= self.b < _REGISTERS:
            raise ValueError("register out of range")
        if self.a < 0 or self.b < 0:
            raise ValueError("arguments are naturals")


HALT = Instr(OP_HALT)


def instr_code(ins: Instr) -> int:
    if ins.op == OP_HALT:
        arg = 0
    elif ins.op == OP_INC:
        arg = ins.a
    elif ins.op == OP_DECJZ:
        arg = ins.a + _REGISTERS * ins.b
    elif ins.op == OP_JMP:
        arg = ins.b
    else:
        arg = ins.a + _REGISTERS * ins.b
    return ins.op + 5 * arg


def decode_instr(code: int) -> Instr:
    op, arg = code % 5, code // 5
    if op == OP_HALT:
        return Instr(OP_HALT)
    if op == OP_INC:
        return Instr(OP_INC, a=arg % _REGISTERS)
    if op == OP_DECJZ:
        return Instr(OP_DECJZ, a=arg % _REGISTERS, b=arg // _REGISTERS)
    if op == OP_JMP:
        return Instr(OP_JMP, b=arg)
    return Instr(OP_ORACLE, a=arg % _REGISTERS, b=(arg // _REGISTERS) % _REGISTERS)


def encode_program(instrs: Iterable[Instr]) -> int:
    return encodings.encode_seq([instr_code(i) for i in instrs])


def decode_program(code: int) -> tuple[Instr, ...]:
    return tuple(decode_instr(c) for c in encodings.decode_seq(code))


#: The one-instruction halting program.
HALT_PROGRAM = encode_program([HALT])
#: The canonical non-halting program (jump to self).
LOOP_PROGRAM = encode_program([Instr(OP_JMP, b=0)])


def disasm(code: int) -> str:
    """Human-readable dump of a program, one instruction per line."""
    lines = []
    for i, ins in enumerate(decode_program(code)):
        if ins.op == OP_HALT:
            text = "HALT"
        elif ins.op == OP_INC:
            text = f"INC r{ins.a}"
        elif ins.op == OP_DECJZ:
            text = f"DECJZ r{ins.a} -> {ins.b}"
        elif ins.op == OP_JMP:
            text = f"JMP {ins.b}"
        else:
            text = f"ORACLE r{ins.a} -> r{ins.b}"
        lines.append(f"{i}: {text}")
    return "\n".join(lines) if lines else "(empty program)"


@dataclass(frozen=True)
class ExecOutcome:
    """Result of a budgeted run.

    ``steps`` is the halting step count when ``halted`` and ``None``
    otherwise; ``budget`` records the budget the run was given.
    """

    halted: bool
    steps: Optional[int]
    output: Optional[int]
    budget: int

    def __post_init__(self):
        if self.halted and not 1 <= self.steps <= self.budget:
            raise ValueError("halting step count out of range")


_compiled: dict[int, tuple[list[int], list[int], list[int]]] = {}


def _compile(code: int) -> tuple[list[int], list[int], list[int]]:
    got = _compiled.get(code)
    if got is None:
        instrs = decode_program(code)
        got = _compiled[code] = (
            [i.op for i in instrs],
            [i.a for i in instrs],
            [i.b for i in instrs],
        )
    return got


def _execute(code: int, input_value: int, budget: int, tape=None, cell_bound=-1):
    if budget < 1:
        raise ValueError("budget must be >= 1")
    ops, aa, bb = _compile(code)
    engine = _engine
    if engine is not _engine_py and (
        input_value + budget >= _ENGINE_LIMIT
        or any(b >= _ENGINE_LIMIT for b in bb)
    ):
        engine = _engine_py  # arguments too large for the C engine
    return engine.run_program(ops, aa, bb, input_value, budget, tape, cell_bound)


def run(program: int, input_value: int, budget: int) -> ExecOutcome:
    """Run ``program`` on ``input_value`` for at most ``budget`` steps.

    Deterministic and monotone in the budget: a halt at budget ``b`` is
    reproduced identically at every larger budget.
    """
    status, steps, value = _execute(program, input_value, budget)
    if status == STATUS_HALTED:
        return ExecOutcome(True, steps, value, budget)
    return ExecOutcome(False, None, None, budget)


@dataclass(frozen=True)
class OracleTape:
    """A total function N -> N with finite support (0 off support)."""

    cells: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for idx, val in self.cells:
            if idx < 0 or val < 0:
                raise ValueError("tape entries are naturals")
            if val == 0:
                raise ValueError("support entries must be nonzero")
            if idx in seen:
                raise ValueError("duplicate tape cell")
            seen.add(idx)
        object.__setattr__(self, "cells", tuple(sorted(self.cells)))

    @classmethod
    def from_dict(cls, mapping: dict[int, int]) -> "OracleTape":
        return cls(tuple((i, v) for i, v in mapping.items() if v != 0))

    def value(self, index: int) -> int:
        return dict(self.cells).get(index, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.cells)

    def to_sequence(self) -> tuple[int, ...]:
        """The tape as a finitely supported sequence."""
        if not self.cells:
            return ()
        top = max(i for i, _ in self.cells)
        d = self.as_dict()
        return tuple(d.get(i, 0) for i in range(top + 1))

    def baire_id(self) -> int:
        """This tape's ideal id in Baire space."""
        return encodings.encode_supported(self.to_sequence())

    @classmethod
    def from_baire_id(cls, ideal: int) -> "OracleTape":
        seq = encodings.decode_supported(ideal)
        return cls.from_dict({i: v for i, v in enumerate(seq)})


EMPTY_TAPE = OracleTape()


def run_oracle(program: int, tape: OracleTape, input_value: int,
               budget: int) -> ExecOutcome:
    """As :func:`run`, with ORACLE instructions consulting ``tape``."""
    status, steps, value = _execute(program, input_value, budget, tape.as_dict())
    if status == STATUS_HALTED:
        return ExecOutcome(True, steps, value, budget)
    return ExecOutcome(False, None, None, budget)


def run_partial_oracle(program: int, tape: OracleTape, cell_bound: int,
                       input_value: int, budget: int):
    """Run with only tape cells below ``cell_bound`` known.

    Returns ``(status, steps, value)``; status ``STATUS_READ_BEYOND``
    means the run touched an unknown cell (its index is in ``value``)
    and nothing about the outcome is certified.
    """
    return _execute(program, input_value, budget, tape.as_dict(), cell_bound)


@dataclass(frozen=True)
class HaltingEnumeration:
    """Programs ``p <= p_max`` halting on input 0 within ``s_max`` steps.

    Entries are ordered by dovetail discovery: increasing halting step
    count, ties by program number.  Nothing outside the budgets is
    claimed; the table is complete relative to ``(p_max, s_max)`` only.
    """

    entries: tuple[tuple[int, int], ...]  # (program, halt_steps)
    p_max: int
    s_max: int

    def __post_init__(self):
        programs = [p for p, _ in self.entries]
        if len(set(programs)) != len(programs):
            raise ValueError("repeated program in halting enumeration")
        steps = [(s, p) for p, s in self.entries]
        if steps != sorted(steps):
            raise ValueError("entries not in dovetail order")

    def __len__(self) -> int:
        return len(self.entries)

    def programs(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    def halts(self, program: int) -> bool:
        return any(p == program for p, _ in self.entries)


def enumerate_halting(p_max: int, s_max: int) -> HaltingEnumeration:
    """Dovetail over programs ``<= p_max`` and step counts ``<= s_max``."""
    if p_max < 1 or s_max < 1:
        raise ValueError("budgets must be >= 1")
    found = []
    for p in range(p_max + 1):
        outcome = run(p, 0, s_max)
        if outcome.halted:
            found.append((outcome.steps, p))
    found.sort()
    return HaltingEnumeration(
        entries=tuple((p, s) for s, p in found), p_max=p_max, s_max=s_max
    )


def halt_time_equiv(n0: int, n1: int, budget: int) -> int:
    """1 iff ``n1`` halts on input 0 in exactly as many steps as ``n0``.

    ``n0`` must halt within ``budget`` (it is supposed to come from a
    halting enumeration); otherwise :class:`IndexNotHalting` is raised.
    The check runs ``n1`` for exactly that many steps.
    """
    first = run(n0, 0, budget)
    if not first.halted:
        raise IndexNotHalting(f"program {n0} still running after {budget} steps")
    k = first.steps
    second = run(n1, 0, k)
    return 1 if (second.halted and second.steps == k) else 0


def jump_bit(tape: OracleTape, e: int, budget: int) -> int:
    """Budgeted stand-in for the jump: 1 iff ``{e}^tape(0)`` halts.

    Budget-relative by construction; callers must quote the budget
    alongside the bit.
    """
    return 1 if run_oracle(e, tape, 0, budget).halted else 0
