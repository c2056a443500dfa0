"""The SHAH keyed hash.

One keystream is initialised from the key per call and consumed
continuously: ``m`` bits mask the padded message, then pass 1 draws one bit
per set bit of T, then pass 2 draws ``n`` bits per set bit of the updated T.
Bit index 0 of every vector is its most significant bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .shrink_prng import DEFAULT_KEY, Keystream, ShahKey
from .tinkerbell import DEFAULT_PARAMS, TinkerbellParams

__all__ = [
    "DIGEST_SIZES",
    "MAX_MESSAGE_BITS",
    "PaddedMessage",
    "check_size",
    "pad",
    "compress_blocks",
    "mix",
    "digest_bits",
    "digest",
    "digest_hex",
    "bits_to_hex",
]

DIGEST_SIZES = (128, 160, 256, 512, 1024)
MAX_MESSAGE_BITS = 2**32


def check_size(n: int) -> int:
    if n not in DIGEST_SIZES:
        raise ValueError(f"unsupported digest size {n!r}; choose one of {DIGEST_SIZES}")
    return n


@dataclass(frozen=True, eq=False)
class PaddedMessage:
    bits: np.ndarray  # uint8 0/1, length m
    n: int

    @property
    def m(self) -> int:
        return self.bits.size

    @property
    def p(self) -> int:
        return self.bits.size // self.n


def pad(message: bytes, n: int = 128) -> PaddedMessage:
    """Expand ``message`` MSB-first, append a 1 bit, then zeros up to a multiple of n.

    The 1 bit is appended even when the message already fills whole blocks.
    """
    check_size(n)
    data = np.frombuffer(bytes(message), dtype=np.uint8)
    if data.size * 8 > MAX_MESSAGE_BITS:
        raise ValueError(f"message longer than {MAX_MESSAGE_BITS} bits")
    msg_bits = np.unpackbits(data)
    m = (msg_bits.size // n + 1) * n
    bits = np.zeros(m, dtype=np.uint8)
    bits[: msg_bits.size] = msg_bits
    bits[msg_bits.size] = 1
    return PaddedMessage(bits, n)


def compress_blocks(padded: PaddedMessage, stream) -> np.ndarray:
    """Mask the padded message with ``m`` keystream bits and XOR-fold its blocks."""
    masked = padded.bits ^ stream.next_bits(padded.m)
    return np.bitwise_xor.reduce(masked.reshape(padded.p, padded.n), axis=0)


def mix(t: np.ndarray, stream) -> np.ndarray:
    """Run both keystream-driven passes over T and return the n-bit digest.

    Pass 2 is evaluated in closed form: every set bit of T contributes its
    n-bit keystream word rotated left once for each zero bit that follows it.
    """
    t = np.array(t, dtype=np.uint8)
    n = t.size

    ones = np.flatnonzero(t)
    t[ones] ^= stream.next_bits(ones.size)

    ones = np.flatnonzero(t)
    words = stream.next_bits(ones.size * n).reshape(ones.size, n)
    zeros_after = (n - 1 - ones) - (ones.size - 1 - np.arange(ones.size))
    cols = (np.arange(n)[None, :] + zeros_after[:, None]) % n
    rotated = np.take_along_axis(words, cols, axis=1)
    u = np.bitwise_xor.reduce(rotated, axis=0) if ones.size else np.zeros(n, np.uint8)
    return t ^ u


def digest_bits(
    message: bytes,
    key: ShahKey = DEFAULT_KEY,
    n: int = 128,
    params: TinkerbellParams = DEFAULT_PARAMS,
) -> np.ndarray:
    padded = pad(message, n)
    key.check_range()
    stream = Keystream(key, params)
    return mix(compress_blocks(padded, stream), stream)


def digest(
    message: bytes,
    key: ShahKey = DEFAULT_KEY,
    n: int = 128,
    params: TinkerbellParams = DEFAULT_PARAMS,
) -> bytes:
    """Return the n-bit digest as ``n // 8`` bytes."""
    return np.packbits(digest_bits(message, key, n, params)).tobytes()


def bits_to_hex(bits: np.ndarray) -> str:
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.size % 4:
        raise ValueError("bit count must be a multiple of 4")
    if bits.size == 0:
        return ""
    return format(int("".join("01"[b] for b in bits), 2), "0%dX" % (bits.size // 4))


def digest_hex(
    message: bytes,
    key: ShahKey = DEFAULT_KEY,
    n: int = 128,
    params: TinkerbellParams = DEFAULT_PARAMS,
) -> str:
    """Uppercase hexadecimal digest, ``n // 4`` characters."""
    return digest(message, key, n, params).hex().upper()
