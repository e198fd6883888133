# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled stepping engine for the register machine.

Mirrors ``_engine_py.run_program`` instruction for instruction; the two
engines are interchangeable and property-tested against each other.
"""

from libc.stdlib cimport free, malloc

STATUS_HALTED = 0
STATUS_RUNNING = 1
STATUS_READ_BEYOND = 2


def run_program(ops, arg_a, arg_b, input_value, budget, tape=None, cell_bound=-1):
    cdef Py_ssize_t n = len(ops)
    cdef long long *cops = NULL
    cdef long long *ca = NULL
    cdef long long *cb = NULL
    cdef long long regs[4]
    cdef long long pc = 0
    cdef long long steps = 0
    cdef long long cbudget = budget
    cdef long long cbound = cell_bound
    cdef long long op, r, cell
    cdef Py_ssize_t i

    cops = <long long *> malloc(n * sizeof(long long))
    ca = <long long *> malloc(n * sizeof(long long))
    cb = <long long *> malloc(n * sizeof(long long))
    if n and (cops == NULL or ca == NULL or cb == NULL):
        free(cops); free(ca); free(cb)
        raise MemoryError()
    try:
        for i in range(n):
            cops[i] = ops[i]
            ca[i] = arg_a[i]
            cb[i] = arg_b[i]
        regs[0] = input_value
        regs[1] = 0
        regs[2] = 0
        regs[3] = 0
        while steps < cbudget:
            steps += 1
            if pc >= n:
                return STATUS_HALTED, steps, regs[0]
            op = cops[pc]
            if op == 0:
                return STATUS_HALTED, steps, regs[0]
            if op == 1:
                regs[ca[pc]] += 1
                pc += 1
            elif op == 2:
                r = ca[pc]
                if regs[r] == 0:
                    pc = cb[pc]
                else:
                    regs[r] -= 1
                    pc += 1
            elif op == 3:
                pc = cb[pc]
            else:
                cell = regs[ca[pc]]
                if 0 <= cbound <= cell:
                    return STATUS_READ_BEYOND, steps, cell
                if tape is not None:
                    regs[cb[pc]] = tape.get(cell, 0)
                else:
                    regs[cb[pc]] = 0
                pc += 1
        return STATUS_RUNNING, steps, 0
    finally:
        free(cops)
        free(ca)
        free(cb)
