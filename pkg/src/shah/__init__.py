"""SHAH: a keyed hash built on two irregularly decimated Tinkerbell maps."""

from .errors import (
    DegenerateSampleError,
    DivergenceError,
    ExhaustedError,
    InsufficientDataError,
    InvalidKeyError,
    LengthMismatchError,
    ShahError,
    StarvationError,
)
from .hashing import DIGEST_SIZES, digest, digest_bits, digest_hex
from .shrink_prng import DEFAULT_KEY, InjectedPairStream, Keystream, ShahKey
from .tinkerbell import DEFAULT_PARAMS, TinkerbellParams, TinkerbellState

__version__ = "0.1.0"
