"""Diffusion, collision and ENT-style statistics.

Test messages come from numpy's PCG64 generator seeded with
``SeedSequence(rng_seed, spawn_key=...)``. Trial ``i`` always uses the same
sub-seed, so a report depends only on its arguments and not on how trials
are scheduled.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateSampleError, InsufficientDataError, LengthMismatchError
from .hashing import check_size, digest
from .shrink_prng import DEFAULT_KEY, ShahKey

__all__ = [
    "DiffusionReport",
    "CollisionReport",
    "EntReport",
    "diffusion_stats",
    "run_type_a_diffusion",
    "run_type_b_diffusion",
    "absolute_difference",
    "positional_hits",
    "run_collision_test",
    "ent_suite",
    "hamming",
]

Hasher = Callable[[bytes], bytes]


def _report_text(pairs) -> str:
    return "".join(f"{k}={v}\n" for k, v in pairs)


def _report_csv(pairs) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["statistic", "value"])
    writer.writerows(pairs)
    return buf.getvalue()


@dataclass(frozen=True)
class DiffusionReport:
    n: int
    trials: int
    b_min: int
    b_max: int
    b_mean: float
    p_mean_percent: float
    delta_b: float
    delta_p_percent: float

    def items(self):
        return list(asdict(self).items())

    def to_text(self) -> str:
        return _report_text(self.items())

    def to_csv(self) -> str:
        return _report_csv(self.items())


@dataclass(frozen=True, eq=False)
class CollisionReport:
    n: int
    trials: int
    variant: str
    message_bits: int
    d_min: int
    d_max: int
    d_mean: float
    hit_histogram: np.ndarray = field(repr=False)

    def items(self):
        return [
            ("n", self.n),
            ("trials", self.trials),
            ("variant", self.variant),
            ("message_bits", self.message_bits),
            ("d_min", self.d_min),
            ("d_max", self.d_max),
            ("d_mean", self.d_mean),
            ("d_mean_per_symbol", self.d_mean / (self.n // 8)),
        ]

    def to_text(self) -> str:
        hits = [(f"hits_{k}", int(c)) for k, c in enumerate(self.hit_histogram)]
        return _report_text(self.items() + hits)

    def to_csv(self) -> str:
        return _report_csv(self.items())

    def histogram_csv(self) -> str:
        return "k,count\n" + "".join(f"{k},{int(c)}\n" for k, c in enumerate(self.hit_histogram))

    def __eq__(self, other):
        if not isinstance(other, CollisionReport):
            return NotImplemented
        return self.items() == other.items() and np.array_equal(
            self.hit_histogram, other.hit_histogram
        )


@dataclass(frozen=True)
class EntReport:
    byte_count: int
    entropy_bits_per_byte: float
    chi_square: float
    arithmetic_mean: float
    monte_carlo_pi: float
    serial_correlation: float

    @property
    def monte_carlo_error_percent(self) -> float:
        return abs(self.monte_carlo_pi - math.pi) / math.pi * 100.0

    @property
    def optimum_compression_percent(self) -> float:
        return (8.0 - self.entropy_bits_per_byte) / 8.0 * 100.0

    def items(self):
        return list(asdict(self).items()) + [
            ("monte_carlo_error_percent", self.monte_carlo_error_percent),
            ("optimum_compression_percent", self.optimum_compression_percent),
        ]

    def to_text(self) -> str:
        return _report_text(self.items())

    def to_csv(self) -> str:
        return _report_csv(self.items())


def diffusion_stats(changed_bits, n: int) -> DiffusionReport:
    """Summarise per-trial Hamming distances B_i between paired n-bit digests."""
    b = np.asarray(changed_bits, dtype=np.float64)
    if b.ndim != 1 or b.size == 0:
        raise ValueError("need a non-empty 1-D sample of changed-bit counts")
    if np.any(b < 0) or np.any(b > n):
        raise ValueError(f"changed-bit counts must lie in [0, {n}]")
    if b.size == 1:
        raise DegenerateSampleError("sample standard deviation needs at least two trials")
    count = b.size
    mean = b.sum() / count
    p = mean / n
    delta_b = math.sqrt(((b - mean) ** 2).sum() / (count - 1))
    delta_p = math.sqrt(((b / n - p) ** 2).sum() / (count - 1))
    return DiffusionReport(
        n=n,
        trials=count,
        b_min=int(b.min()),
        b_max=int(b.max()),
        b_mean=float(mean),
        p_mean_percent=float(p * 100.0),
        delta_b=delta_b,
        delta_p_percent=delta_p * 100.0,
    )


def hamming(h1: bytes, h2: bytes) -> int:
    if len(h1) != len(h2):
        raise LengthMismatchError("digests differ in length")
    return (int.from_bytes(h1, "big") ^ int.from_bytes(h2, "big")).bit_count()


def _rng(rng_seed: int, *spawn_key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(rng_seed, spawn_key=spawn_key))


def _random_message(rng: np.random.Generator, message_bits: int) -> bytearray:
    return bytearray(rng.integers(0, 256, size=message_bits // 8, dtype=np.uint8).tobytes())


def _flip(message: bytearray, bit: int) -> bytes:
    flipped = bytearray(message)
    flipped[bit // 8] ^= 0x80 >> (bit % 8)
    return bytes(flipped)


def _default_hasher(key: ShahKey, n: int) -> Hasher:
    key.check_range()
    return lambda message: digest(message, key, n)


def _flip_pairs(hasher, n, trials, variant, message_bits, rng_seed):
    """Yield (original digest, flipped digest) for every trial."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if message_bits < 8 or message_bits % 8:
        raise ValueError("message_bits must be a positive multiple of 8")
    if variant == "B":
        fixed = _random_message(_rng(rng_seed, 0), message_bits)
        fixed_digest = hasher(bytes(fixed))
    elif variant != "A":
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    for i in range(trials):
        rng = _rng(rng_seed, 1, i)
        if variant == "A":
            message = _random_message(rng, message_bits)
            original = hasher(bytes(message))
        else:
            message, original = fixed, fixed_digest
        bit = int(rng.integers(0, message_bits))
        yield original, hasher(_flip(message, bit))


def _run_diffusion(variant, key, n, trials, rng_seed, message_bits, hasher):
    check_size(n)
    if trials < 2:
        raise DegenerateSampleError("diffusion runs need at least two trials")
    hasher = hasher or _default_hasher(key, n)
    message_bits = message_bits or 50 * n
    distances = [
        hamming(h1, h2)
        for h1, h2 in _flip_pairs(hasher, n, trials, variant, message_bits, rng_seed)
    ]
    return diffusion_stats(distances, n)


def run_type_a_diffusion(
    key: ShahKey = DEFAULT_KEY,
    n: int = 128,
    trials: int = 2048,
    rng_seed: int = 0,
    message_bits: Optional[int] = None,
    hasher: Optional[Hasher] = None,
) -> DiffusionReport:
    """Fresh random message of 50n bits per trial, one random bit flipped."""
    return _run_diffusion("A", key, n, trials, rng_seed, message_bits, hasher)


def run_type_b_diffusion(
    key: ShahKey = DEFAULT_KEY,
    n: int = 128,
    trials: int = 2048,
    rng_seed: int = 0,
    message_bits: Optional[int] = None,
    hasher: Optional[Hasher] = None,
) -> DiffusionReport:
    """One fixed random message of 50n bits; each trial flips one random bit of it."""
    return _run_diffusion("B", key, n, trials, rng_seed, message_bits, hasher)


def _symbols(h) -> bytes:
    if isinstance(h, str):
        return h.encode("latin-1")
    return bytes(h)


def absolute_difference(h1, h2) -> int:
    """Sum of |dec(e_i) - dec(e'_i)| over two equal-length symbol strings.

    Accepts ``bytes`` (each byte is one symbol) or ``str`` (code points < 256).
    """
    a, b = _symbols(h1), _symbols(h2)
    if len(a) != len(b):
        raise LengthMismatchError(f"lengths differ: {len(a)} vs {len(b)}")
    return sum(abs(x - y) for x, y in zip(a, b))


def positional_hits(h1, h2) -> int:
    a, b = _symbols(h1), _symbols(h2)
    if len(a) != len(b):
        raise LengthMismatchError(f"lengths differ: {len(a)} vs {len(b)}")
    return sum(x == y for x, y in zip(a, b))


def run_collision_test(
    key: ShahKey = DEFAULT_KEY,
    n: int = 128,
    trials: int = 2000,
    variant: str = "A",
    message_bits: Optional[int] = None,
    rng_seed: int = 0,
    hasher: Optional[Hasher] = None,
) -> CollisionReport:
    """Flip one bit per trial and compare the two digests byte by byte.

    Each digest byte is one ASCII symbol, so an n-bit digest has n/8 symbols.
    ``message_bits=n`` gives the single-block short-message variant.
    """
    check_size(n)
    hasher = hasher or _default_hasher(key, n)
    message_bits = message_bits or 50 * n
    symbols = n // 8
    hist = np.zeros(symbols + 1, dtype=np.int64)
    d = []
    for h1, h2 in _flip_pairs(hasher, n, trials, variant, message_bits, rng_seed):
        d.append(absolute_difference(h1, h2))
        hist[positional_hits(h1, h2)] += 1
    d = np.asarray(d, dtype=np.int64)
    return CollisionReport(
        n=n,
        trials=trials,
        variant=variant,
        message_bits=message_bits,
        d_min=int(d.min()),
        d_max=int(d.max()),
        d_mean=float(d.mean()),
        hit_histogram=hist,
    )


_MONTE_CARLO_RADIUS_SQ = float((256**3 - 1) ** 2)


def ent_suite(data) -> EntReport:
    """Byte-oriented randomness statistics in the style of the ENT program.

    Monte Carlo pi uses consecutive non-overlapping 6-byte points (24-bit x,
    24-bit y, big-endian). Serial correlation wraps the last byte onto the
    first, as ENT does, and is NaN for a constant input.
    """
    buf = np.frombuffer(bytes(data), dtype=np.uint8) if not isinstance(data, np.ndarray) else data.astype(np.uint8, copy=False).ravel()
    count = buf.size
    if count < 6:
        raise InsufficientDataError("need at least 6 bytes")

    freq = np.bincount(buf, minlength=256).astype(np.float64)
    prob = freq[freq > 0] / count
    entropy = float(-(prob * np.log2(prob)).sum())
    if entropy < 0:
        entropy = 0.0
    expected = count / 256.0
    chi_square = float(((freq - expected) ** 2).sum() / expected)
    values = buf.astype(np.float64)
    mean = float(values.sum() / count)

    points = buf[: count - count % 6].reshape(-1, 6).astype(np.int64)
    x = (points[:, 0] << 16) | (points[:, 1] << 8) | points[:, 2]
    y = (points[:, 3] << 16) | (points[:, 4] << 8) | points[:, 5]
    inside = np.count_nonzero((x * x + y * y).astype(np.float64) <= _MONTE_CARLO_RADIUS_SQ)
    pi_estimate = 4.0 * inside / points.shape[0]

    s1 = values.sum()
    s2 = (values * values).sum()
    s12 = (values * np.roll(values, -1)).sum()
    denom = count * s2 - s1 * s1
    serial = float((count * s12 - s1 * s1) / denom) if denom != 0 else float("nan")

    return EntReport(
        byte_count=int(count),
        entropy_bits_per_byte=entropy,
        chi_square=chi_square,
        arithmetic_mean=mean,
        monte_carlo_pi=float(pi_estimate),
        serial_correlation=serial,
    )
