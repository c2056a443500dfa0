"""Command-line front end.

Exit codes: 0 ok, 2 bad configuration or key, 3 generator failure
(divergence or starvation), 4 I/O failure, 5 key generation exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import analysis
from .errors import DivergenceError, InvalidKeyError, ShahError, StarvationError
from .hashing import DIGEST_SIZES, digest_hex
from .shrink_prng import DEFAULT_KEY, Keystream, ShahKey
from .tinkerbell import TinkerbellParams, TinkerbellState, orbit

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GENERATOR = 3
EXIT_IO = 4
EXIT_KEYGEN = 5

KEYGEN_ATTEMPTS = 100
KEYGEN_RANGE = 0.9
KEYGEN_PROBE_BITS = 1024


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _size(text):
    try:
        n = int(text)
    except ValueError:
        n = None
    if n not in DIGEST_SIZES:
        raise CliError(
            f"unsupported digest size {text!r} (choose from {', '.join(map(str, DIGEST_SIZES))})",
            EXIT_CONFIG,
        )
    return n


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _add_key_options(p):
    group = p.add_mutually_exclusive_group()
    group.add_argument("--key", metavar="PATH", help="key file (default: built-in key)")
    group.add_argument("--seeds", nargs=4, type=float, metavar=("X10", "Y10", "X20", "Y20"))
    p.add_argument("--warmup", nargs=2, type=int, metavar=("M", "N"), default=None)


def _load_key(args) -> ShahKey:
    try:
        if args.key:
            key = ShahKey.load(args.key)
        elif args.seeds:
            key = ShahKey(*args.seeds)
        else:
            key = DEFAULT_KEY
        if args.warmup:
            key = key.with_seeds(m_warmup=args.warmup[0], n_warmup=args.warmup[1])
        return key.check_range()
    except OSError as exc:
        raise CliError(f"cannot read key file: {exc}", EXIT_IO) from None


def _read_input(path) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(f"cannot read input: {exc}", EXIT_IO) from None


def _write(path, data, mode="w"):
    try:
        with open(path, mode) as fh:
            fh.write(data)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def cmd_hash(args):
    n = _size(args.n)
    key = _load_key(args)
    message = _read_input(args.input)
    sys.stdout.write(digest_hex(message, key, n) + "\n")


def cmd_randgen(args):
    key = _load_key(args)
    data = Keystream(key).export_bytes(args.bytes)
    _write(args.output, data, "wb")


def cmd_keygen(args):
    if args.default:
        key = DEFAULT_KEY
    else:
        rng = np.random.default_rng(args.seed)
        for _ in range(KEYGEN_ATTEMPTS):
            seeds = rng.uniform(-KEYGEN_RANGE, KEYGEN_RANGE, size=4)
            candidate = ShahKey(*(float(v) for v in seeds))
            try:
                Keystream(candidate).next_bits(KEYGEN_PROBE_BITS)
            except (DivergenceError, StarvationError):
                continue
            key = candidate
            break
        else:
            raise CliError(
                f"{KEYGEN_ATTEMPTS} consecutive candidate keys diverged", EXIT_KEYGEN
            )
    if args.output:
        _write(args.output, key.to_text())
    else:
        sys.stdout.write(key.to_text())


def cmd_orbit(args):
    params = TinkerbellParams(*args.params)
    start = TinkerbellState(args.x0, args.y0, params)
    try:
        points = orbit(start, args.count)
    except DivergenceError as exc:
        raise CliError(f"orbit diverged at iteration {exc.index}", EXIT_GENERATOR) from None
    text = "".join("%.17g %.17g\n" % (x, y) for x, y in points)
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)


def _emit_report(args, report, extra=None):
    if args.output:
        _write(f"{args.output}.txt", report.to_text())
        _write(f"{args.output}.csv", report.to_csv())
        if extra:
            _write(f"{args.output}_hits.csv", extra)
    else:
        sys.stdout.write(report.to_text())


def cmd_analyze(args):
    if args.kind == "ent":
        report = analysis.ent_suite(_read_input(args.input))
        _emit_report(args, report)
        return
    n = _size(args.n)
    key = _load_key(args)
    if args.kind == "diffusion":
        run = analysis.run_type_a_diffusion if args.type == "A" else analysis.run_type_b_diffusion
        report = run(key, n, args.trials, args.seed, args.message_bits)
        _emit_report(args, report)
    else:
        report = analysis.run_collision_test(
            key, n, args.trials, args.type, args.message_bits, args.seed
        )
        _emit_report(args, report, report.histogram_csv())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shah", description="SHAH keyed hash and its statistical test harness"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hash", help="print the hex digest of a file or stdin")
    p.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    p.add_argument("--n", default="128", help="digest size in bits")
    _add_key_options(p)
    p.set_defaults(func=cmd_hash)

    p = sub.add_parser("randgen", help="write raw keystream bytes (MSB-first)")
    p.add_argument("--bytes", type=_positive, required=True)
    p.add_argument("-o", "--output", required=True)
    _add_key_options(p)
    p.set_defaults(func=cmd_randgen)

    p = sub.add_parser("keygen", help="write a key file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--default", action="store_true", help="the built-in reference key")
    g.add_argument("--seed", type=int, default=None, help="seed for reproducible keys")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("orbit", help="write Tinkerbell orbit points as 'x y' lines")
    p.add_argument("--x0", type=float, default=DEFAULT_KEY.x10)
    p.add_argument("--y0", type=float, default=DEFAULT_KEY.y10)
    p.add_argument("--params", nargs=4, type=float, metavar=("C1", "C2", "C3", "C4"),
                   default=(0.9, -0.6013, 2.0, 0.5))
    p.add_argument("--count", type=int, default=100001)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("analyze", help="run a statistical test")
    kinds = p.add_subparsers(dest="kind", required=True)
    for kind in ("diffusion", "collision"):
        k = kinds.add_parser(kind)
        k.add_argument("--type", choices=("A", "B"), default="A")
        k.add_argument("--n", default="128")
        k.add_argument("--trials", type=_positive,
                       default=2048 if kind == "diffusion" else 2000)
        k.add_argument("--seed", type=int, default=0)
        k.add_argument("--message-bits", type=_positive, default=None,
                       help="message length L in bits (default 50n)")
        k.add_argument("-o", "--output", help="write OUTPUT.txt and OUTPUT.csv")
        _add_key_options(k)
        k.set_defaults(func=cmd_analyze)
    k = kinds.add_parser("ent")
    k.add_argument("input", help="byte file, '-' for stdin")
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CliError as exc:
        print(f"shah: {exc}", file=sys.stderr)
        return exc.code
    except (DivergenceError, StarvationError) as exc:
        print(f"shah: generator failure: {exc}", file=sys.stderr)
        return EXIT_GENERATOR
    except (InvalidKeyError, ValueError) as exc:
        print(f"shah: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ShahError as exc:
        print(f"shah: {exc}", file=sys.stderr)
        return EXIT_GENERATOR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
