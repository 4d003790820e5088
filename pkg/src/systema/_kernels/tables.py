"""Integer encoding of finite carriers for the sweep kernels.

The kernels work on flat operation tables indexed by element position in
the canonical enumeration, so both backends (compiled and pure) share one
wire format: plain lists of ints.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class OpTables:
    elements: tuple      # canonical enumeration, payloads
    size: int
    add: list            # flat size*size: add[a*size+b]
    mul: list
    neg: list            # size
    tangible: list       # size, 0/1
    quasi: list          # size, 0/1: quasi-zero membership
    zero: int
    one: int             # -1 when the instance has no unit

    def tangible_indices(self):
        return [i for i, t in enumerate(self.tangible) if t]


def op_tables(system):
    if not system.is_finite:
        raise ValueError(f"{system.name}: kernels need a finite carrier")
    elems = system.elements
    n = len(elems)
    index = {e: i for i, e in enumerate(elems)}
    add = [0] * (n * n)
    mul = [0] * (n * n)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            add[i * n + j] = index[system.add(a, b)]
            mul[i * n + j] = index[system.mul(a, b)]
    return OpTables(
        elements=elems,
        size=n,
        add=add,
        mul=mul,
        neg=[index[system.negate(e)] for e in elems],
        tangible=[1 if system.is_tangible(e) else 0 for e in elems],
        quasi=[1 if system.is_quasi_zero(e) else 0 for e in elems],
        zero=index[system.zero],
        one=index[system.one] if system.one is not None else -1,
    )
