"""Pure-Python stepping engine for the register machine.

Same contract as the compiled engine in ``_engine_cy.pyx``; selected at
import time by :mod:`paclab.machines` when the extension is missing.

``run_program(ops, arg_a, arg_b, input_value, budget, tape, cell_bound)``
returns ``(status, steps, value)`` where status 0 means halted (value is
the output register), 1 means the budget ran out, and 2 means an oracle
read touched a cell at index >= ``cell_bound`` (value is that cell).
"""

STATUS_HALTED = 0
STATUS_RUNNING = 1
STATUS_READ_BEYOND = 2


def run_program(ops, arg_a, arg_b, input_value, budget, tape=None, cell_bound=-1):
    regs = [input_value, 0, 0, 0]
    n = len(ops)
    pc = 0
    steps = 0
    while steps < budget:
        steps += 1
        if pc >= n:  # running off the end is an implicit halt
            return STATUS_HALTED, steps, regs[0]
        op = ops[pc]
        if op == 0:  # HALT
            return STATUS_HALTED, steps, regs[0]
        if op == 1:  # INC
            regs[arg_a[pc]] += 1
            pc += 1
        elif op == 2:  # DECJZ
            r = arg_a[pc]
            if regs[r] == 0:
                pc = arg_b[pc]
            else:
                regs[r] -= 1
                pc += 1
        elif op == 3:  # JMP
            pc = arg_b[pc]
        else:  # ORACLE
            cell = regs[arg_a[pc]]
            if 0 <= cell_bound <= cell:
                return STATUS_READ_BEYOND, steps, cell
            regs[arg_b[pc]] = tape.get(cell, 0) if tape is not None else 0
            pc += 1
    return STATUS_RUNNING, steps, 0
