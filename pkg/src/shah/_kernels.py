"""Compiled inner loops.

Every floating-point expression here must match ``tinkerbell.step``
operation for operation. Numba is used without ``fastmath`` so LLVM is not
allowed to reassociate or contract into fused multiply-adds.
"""

import numpy as np
from numba import njit

OK = 0
DIVERGED = 1
STARVED = 2
EXHAUSTED = 3

DIVERGENCE_BOUND = 10.0


@njit(inline="always")
def tb_step(x, y, c1, c2, c3, c4):
    xn = x * x - y * y + c1 * x + c2 * y
    yn = 2.0 * x * y + c3 * x + c4 * y
    return xn, yn


@njit(inline="always")
def in_bounds(x, y):
    # written so that NaN compares as out of bounds
    return abs(x) <= DIVERGENCE_BOUND and abs(y) <= DIVERGENCE_BOUND


@njit(inline="always")
def parity(y):
    v = np.int64(y * 1e9)
    return np.uint8(abs(v % 2))


@njit
def advance(ctx, which, steps):
    """Step map ``which`` (0 or 1) of ``ctx`` in place; return (status, index)."""
    j = 2 * which
    x = ctx[j]
    y = ctx[j + 1]
    c1, c2, c3, c4 = ctx[4], ctx[5], ctx[6], ctx[7]
    for i in range(steps):
        x, y = tb_step(x, y, c1, c2, c3, c4)
        if not in_bounds(x, y):
            ctx[j] = x
            ctx[j + 1] = y
            return DIVERGED, i + 1
    ctx[j] = x
    ctx[j + 1] = y
    return OK, steps


@njit
def orbit(x, y, c1, c2, c3, c4, out):
    """Fill ``out`` (shape (count, 2)) with the orbit starting at (x, y)."""
    count = out.shape[0]
    if count == 0:
        return OK, 0
    out[0, 0] = x
    out[0, 1] = y
    for i in range(1, count):
        x, y = tb_step(x, y, c1, c2, c3, c4)
        if not in_bounds(x, y):
            return DIVERGED, i
        out[i, 0] = x
        out[i, 1] = y
    return OK, count


@njit
def tinkerbell_pair(ctx):
    """Advance both maps one step; return (a, s, status)."""
    c1, c2, c3, c4 = ctx[4], ctx[5], ctx[6], ctx[7]
    x1, y1 = tb_step(ctx[0], ctx[1], c1, c2, c3, c4)
    x2, y2 = tb_step(ctx[2], ctx[3], c1, c2, c3, c4)
    ctx[0] = x1
    ctx[1] = y1
    ctx[2] = x2
    ctx[3] = y2
    if not (in_bounds(x1, y1) and in_bounds(x2, y2)):
        return np.uint8(0), np.uint8(0), DIVERGED
    return parity(y1), parity(y2), OK


@njit
def injected_pair(ctx):
    """ctx = (cursor, a, s); reads the next pair from the arrays."""
    cursor, a, s = ctx
    i = cursor[0]
    if i >= a.size:
        return np.uint8(0), np.uint8(0), EXHAUSTED
    cursor[0] = i + 1
    return a[i], s[i], OK


@njit
def shrink_fill(out, next_pair, ctx, starvation_limit):
    """Fill ``out`` with bits a_i for which s_i == 1.

    Returns (status, bits_written, pairs_consumed).
    """
    k = 0
    run = 0
    pairs = 0
    while k < out.size:
        a, s, status = next_pair(ctx)
        if status != OK:
            return status, k, pairs
        pairs += 1
        if s == 1:
            out[k] = a
            k += 1
            run = 0
        else:
            run += 1
            if run >= starvation_limit:
                return STARVED, k, pairs
    return OK, k, pairs
