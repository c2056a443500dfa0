"""Pseudo-random bit generator built from two Tinkerbell maps and the
shrinking rule.

Both maps advance in lockstep. Each step yields a candidate bit ``a`` taken
from the first map's ``y`` coordinate and a selector bit ``s`` taken from the
second's. The candidate is emitted only when ``s == 1``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import (
    DivergenceError,
    ExhaustedError,
    InvalidKeyError,
    StarvationError,
)
from .tinkerbell import DEFAULT_PARAMS, TinkerbellParams, TinkerbellState

__all__ = [
    "SEED_LIMIT",
    "STARVATION_LIMIT",
    "ShahKey",
    "DEFAULT_KEY",
    "Keystream",
    "InjectedPairStream",
    "pack_bits",
]

SEED_LIMIT = 1.5
STARVATION_LIMIT = 10**6


@dataclass(frozen=True)
class ShahKey:
    """Secret key: the two maps' starting points and their warm-up counts."""

    x10: float
    y10: float
    x20: float
    y20: float
    m_warmup: int = 3500
    n_warmup: int = 3500

    def __post_init__(self):
        for name in ("x10", "y10", "x20", "y20"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidKeyError(f"seed {name}={value!r} is not finite")
            object.__setattr__(self, name, value)
        for name in ("m_warmup", "n_warmup"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise InvalidKeyError(f"{name} must be a non-negative integer, got {value!r}")
            object.__setattr__(self, name, int(value))

    @property
    def seeds(self) -> tuple[float, float, float, float]:
        return (self.x10, self.y10, self.x20, self.y20)

    def check_range(self) -> "ShahKey":
        """Raise InvalidKeyError unless every seed lies in [-1.5, 1.5]."""
        for name, value in zip(("x10", "y10", "x20", "y20"), self.seeds):
            if abs(value) > SEED_LIMIT:
                raise InvalidKeyError(
                    f"seed {name}={value!r} is outside [-{SEED_LIMIT}, {SEED_LIMIT}]"
                )
        return self

    def with_seeds(self, **changes) -> "ShahKey":
        fields = dict(
            x10=self.x10, y10=self.y10, x20=self.x20, y20=self.y20,
            m_warmup=self.m_warmup, n_warmup=self.n_warmup,
        )
        fields.update(changes)
        return ShahKey(**fields)

    # Key file: "x10 y10 x20 y20 M N", seeds with 17 significant digits.
    def to_text(self) -> str:
        seeds = " ".join("%.17g" % v for v in self.seeds)
        return f"{seeds} {self.m_warmup} {self.n_warmup}\n"

    @classmethod
    def from_text(cls, text: str) -> "ShahKey":
        fields = text.split()
        if len(fields) != 6:
            raise InvalidKeyError(
                f"key text needs 4 seeds and 2 warm-up counts, got {len(fields)} fields"
            )
        try:
            seeds = [float(f) for f in fields[:4]]
            counts = [int(f) for f in fields[4:]]
        except ValueError as exc:
            raise InvalidKeyError(f"malformed key text: {exc}") from None
        return cls(*seeds, *counts)

    def save(self, path: str | os.PathLike) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ShahKey":
        return cls.from_text(Path(path).read_text())


DEFAULT_KEY = ShahKey(
    x10=-0.423555643379287,
    y10=-0.762576287931311,
    x20=-0.276976682878721,
    y20=-0.348339839900213,
    m_warmup=3500,
    n_warmup=3500,
)


def pack_bits(bits: np.ndarray) -> bytes:
    """Pack a 0/1 array MSB-first; length must be a multiple of 8."""
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 8:
        raise ValueError("bit count must be a multiple of 8")
    return np.packbits(bits).tobytes()


class _ShrinkingStream:
    """Shared bit-drawing logic; subclasses provide the pair source."""

    _next_pair = None

    def __init__(self):
        self.emitted_count = 0
        self.pairs_consumed = 0

    def _context(self):
        raise NotImplementedError

    def _raise(self, status, written):
        raise NotImplementedError

    def next_bits(self, count: int) -> np.ndarray:
        """Draw ``count`` bits as a uint8 array of zeros and ones."""
        if count < 0:
            raise ValueError("count must be non-negative")
        out = np.empty(count, dtype=np.uint8)
        if count == 0:
            return out
        status, written, pairs = _kernels.shrink_fill(
            out, self._next_pair, self._context(), STARVATION_LIMIT
        )
        self.emitted_count += int(written)
        self.pairs_consumed += int(pairs)
        if status != _kernels.OK:
            self._raise(status, written)
        return out

    def next_bit(self) -> int:
        return int(self.next_bits(1)[0])

    def export_bytes(self, byte_count: int) -> bytes:
        """Draw ``8 * byte_count`` bits and pack them MSB-first."""
        return pack_bits(self.next_bits(8 * byte_count))


class Keystream(_ShrinkingStream):
    """Stateful bit source for one key.

    Construction runs the warm-up iterations. The stream is a plain mutable
    object: use one per thread, or ``clone()`` it.
    """

    _next_pair = staticmethod(_kernels.tinkerbell_pair)

    def __init__(self, key: ShahKey = DEFAULT_KEY, params: TinkerbellParams = DEFAULT_PARAMS):
        super().__init__()
        self.key = key
        self.params = params
        self._ctx = np.array([*key.seeds, *params.as_tuple()], dtype=np.float64)
        for which, steps in ((0, key.m_warmup), (1, key.n_warmup)):
            status, index = _kernels.advance(self._ctx, which, steps)
            if status != _kernels.OK:
                raise DivergenceError(
                    f"map {which + 1} diverged during warm-up at iteration {index}",
                    index=index,
                )

    @property
    def map_a(self) -> TinkerbellState:
        return TinkerbellState(float(self._ctx[0]), float(self._ctx[1]), self.params)

    @property
    def map_b(self) -> TinkerbellState:
        return TinkerbellState(float(self._ctx[2]), float(self._ctx[3]), self.params)

    def clone(self) -> "Keystream":
        twin = object.__new__(Keystream)
        twin.__dict__.update(self.__dict__)
        twin._ctx = self._ctx.copy()
        return twin

    def _context(self):
        return self._ctx

    def _raise(self, status, written):
        if status == _kernels.DIVERGED:
            raise DivergenceError(
                f"keystream diverged after {self.emitted_count} output bits"
            )
        raise StarvationError(
            f"{STARVATION_LIMIT} consecutive pairs had selector bit 0 "
            f"after {self.emitted_count} output bits"
        )


class InjectedPairStream(_ShrinkingStream):
    """Runs the shrinking rule over caller-supplied (a, s) bit sequences.

    Exists so the decimation logic can be checked independently of the
    chaotic maps. Raises ExhaustedError when the pairs run out.
    """

    _next_pair = staticmethod(_kernels.injected_pair)

    def __init__(self, a, s):
        super().__init__()
        a = np.asarray(a, dtype=np.uint8)
        s = np.asarray(s, dtype=np.uint8)
        if a.shape != s.shape or a.ndim != 1:
            raise ValueError("a and s must be 1-D sequences of equal length")
        self._ctx = (np.zeros(1, dtype=np.int64), a.copy(), s.copy())

    def clone(self) -> "InjectedPairStream":
        twin = object.__new__(InjectedPairStream)
        twin.__dict__.update(self.__dict__)
        cursor, a, s = self._ctx
        twin._ctx = (cursor.copy(), a, s)
        return twin

    def _context(self):
        return self._ctx

    def _raise(self, status, written):
        if status == _kernels.EXHAUSTED:
            raise ExhaustedError("injected pair sequence exhausted")
        raise StarvationError(f"{STARVATION_LIMIT} consecutive zero selector bits")
