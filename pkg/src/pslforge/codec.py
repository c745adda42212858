"""Hexadecimal sequence encoding.

-1 maps to bit 0 and +1 to bit 1, b_0 is the most significant bit, and the
resulting integer is written as minimal lowercase hex. The length is not
recoverable from the text (leading -1's vanish), so decoding needs ``n``.
"""

from __future__ import annotations

import re

from .sequence import BinarySequence, SequenceError

_HEX_RE = re.compile(r"[0-9a-f]+")


class CodecError(ValueError):
    pass


class HexParseError(CodecError):
    pass


class LengthMismatchError(CodecError):
    pass


def normalize(raw: str) -> str:
    """Strip all whitespace and lowercase. Published tables wrap hex strings."""
    text = "".join(raw.split()).lower()
    if not text:
        raise HexParseError("empty hex string")
    return text


def encode(seq) -> str:
    if not isinstance(seq, BinarySequence):
        seq = BinarySequence.from_array(seq)
    value = 0
    for b in seq:
        value = (value << 1) | (b > 0)
    return format(value, "x")


def decode(hex_text: str, n: int) -> BinarySequence:
    if n < 2:
        raise SequenceError(f"sequence length must be >= 2, got {n}")
    text = normalize(hex_text)
    if text.startswith("0x"):
        text = text[2:]
    if not _HEX_RE.fullmatch(text):
        raise HexParseError(f"invalid hex string {hex_text!r}")
    value = int(text, 16)
    if value >> n:
        raise LengthMismatchError(f"hex value {text} needs {value.bit_length()} bits, more than n={n}")
    return BinarySequence(tuple(1 if (value >> (n - 1 - i)) & 1 else -1 for i in range(n)))
