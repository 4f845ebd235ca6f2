"""Shared table builders for the test suite."""

from itertools import product

import pivotal as pv


def bool_table(n, mask):
    """Table whose value at point index i is bit i of mask."""
    return pv.FunctionTable(pv.BOOL, pv.BOOL, n, tuple((mask >> i) & 1 for i in range(1 << n)))


def from_fn(n, fn, domain=pv.BOOL, codomain=pv.BOOL):
    return pv.FunctionTable.from_function(domain, codomain, n, fn)


def all_bool_tables(n):
    for mask in range(1 << (1 << n)):
        yield bool_table(n, mask)


AND2 = bool_table(2, 0b1000)
OR2 = bool_table(2, 0b1110)
XOR2 = bool_table(2, 0b0110)
PARITY3 = from_fn(3, lambda x: x[0] ^ x[1] ^ x[2])
ID1 = bool_table(1, 0b10)
NEG1 = bool_table(1, 0b01)
CONST0_1 = bool_table(1, 0b00)
CONST1_1 = bool_table(1, 0b11)


def chain3():
    return pv.chain_sort(3)


def chain3_elems():
    s = chain3()
    return s.elements  # (0, 1/2, 1)
