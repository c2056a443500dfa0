"""The Tinkerbell map and the bit-extraction transform applied to its orbit.

    x' = x^2 - y^2 + c1*x + c2*y
    y' = 2*x*y + c3*x + c4*y

All arithmetic is plain IEEE-754 double precision, evaluated left to right,
so an orbit is bit-identical on every platform. The compiled loops in
``_kernels`` repeat exactly the same expression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from ._kernels import DIVERGENCE_BOUND
from .errors import DivergenceError

__all__ = [
    "DIVERGENCE_BOUND",
    "DEFAULT_PARAMS",
    "TinkerbellParams",
    "TinkerbellState",
    "step",
    "iterate",
    "orbit",
    "extract_bit",
]


@dataclass(frozen=True)
class TinkerbellParams:
    c1: float = 0.9
    c2: float = -0.6013
    c3: float = 2.0
    c4: float = 0.50

    def __post_init__(self):
        for name in ("c1", "c2", "c3", "c4"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"map coefficient {name}={value!r} is not finite")
            object.__setattr__(self, name, float(value))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.c1, self.c2, self.c3, self.c4)


DEFAULT_PARAMS = TinkerbellParams()


@dataclass(frozen=True)
class TinkerbellState:
    x: float
    y: float
    params: TinkerbellParams = DEFAULT_PARAMS

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not _bounded(self.x, self.y):
            raise DivergenceError(
                f"state ({self.x!r}, {self.y!r}) is outside the bound {DIVERGENCE_BOUND}"
            )


def _bounded(x: float, y: float) -> bool:
    return abs(x) <= DIVERGENCE_BOUND and abs(y) <= DIVERGENCE_BOUND


def step(state: TinkerbellState) -> TinkerbellState:
    """Advance the map by one iteration.

    Raises DivergenceError if the new point leaves the box
    ``|x|, |y| <= DIVERGENCE_BOUND``.
    """
    x, y = state.x, state.y
    c1, c2, c3, c4 = state.params.as_tuple()
    xn = x * x - y * y + c1 * x + c2 * y
    yn = 2.0 * x * y + c3 * x + c4 * y
    if not _bounded(xn, yn):
        raise DivergenceError(f"orbit escaped to ({xn!r}, {yn!r})", index=1)
    return replace(state, x=xn, y=yn)


def iterate(state: TinkerbellState, steps: int) -> TinkerbellState:
    """Apply ``step`` ``steps`` times (compiled loop, same arithmetic)."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    p = state.params
    ctx = np.array([state.x, state.y, 0.0, 0.0, p.c1, p.c2, p.c3, p.c4])
    status, index = _kernels.advance(ctx, 0, steps)
    if status != _kernels.OK:
        raise DivergenceError(f"orbit escaped at iteration {index}", index=index)
    return TinkerbellState(float(ctx[0]), float(ctx[1]), p)


def orbit(state: TinkerbellState, count: int) -> np.ndarray:
    """Return ``count`` consecutive points as a (count, 2) array.

    Row 0 is the starting point itself. On escape, DivergenceError carries the
    index of the first offending point.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    out = np.empty((count, 2), dtype=np.float64)
    status, index = _kernels.orbit(state.x, state.y, *state.params.as_tuple(), out)
    if status != _kernels.OK:
        raise DivergenceError(f"orbit escaped at iteration {index}", index=index)
    return out


def extract_bit(y: float) -> int:
    """Parity of the integer part of ``y * 1e9``, truncated toward zero."""
    if not math.isfinite(y):
        raise ValueError("extract_bit needs a finite value")
    return abs(math.trunc(y * 1e9)) % 2
