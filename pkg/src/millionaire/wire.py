"""Byte encodings for message payloads.

Unsigned big integers travel as 2-byte big-endian length followed by
big-endian magnitude bytes (at least one byte, so zero is b"\\x00").  Signed
words travel as fixed-width two's complement.
"""

from __future__ import annotations


def encode_uint(n: int) -> bytes:
    if n < 0:
        raise ValueError("encode_uint takes non-negative integers")
    body = n.to_bytes(max(1, (n.bit_length() + 7) // 8), "big")
    if len(body) > 0xFFFF:
        raise ValueError("integer too large for 16-bit length prefix")
    return len(body).to_bytes(2, "big") + body


def decode_uint(buf: bytes, offset: int = 0) -> tuple[int, int]:
    """Returns (value, next_offset)."""
    if offset + 2 > len(buf):
        raise ValueError("truncated length prefix")
    n = int.from_bytes(buf[offset : offset + 2], "big")
    end = offset + 2 + n
    if end > len(buf):
        raise ValueError("truncated integer body")
    return int.from_bytes(buf[offset + 2 : end], "big"), end


def encode_uints(*values: int) -> bytes:
    return b"".join(encode_uint(v) for v in values)


def decode_uints(buf: bytes, count: int) -> list[int]:
    out = []
    offset = 0
    for _ in range(count):
        v, offset = decode_uint(buf, offset)
        out.append(v)
    if offset != len(buf):
        raise ValueError("trailing bytes after decoding")
    return out


def encode_signed_word(value: int, width_bits: int) -> bytes:
    half = 1 << (width_bits - 1)
    if not -half <= value < half:
        raise ValueError(f"{value} does not fit {width_bits}-bit two's complement")
    nbytes = (width_bits + 7) // 8
    return (value & ((1 << (8 * nbytes)) - 1)).to_bytes(nbytes, "big")

def decode_signed_word(buf: bytes, width_bits: int) -> int:
    nbytes = (width_bits + 7) // 8
    if len(buf) != nbytes:
        raise ValueError(f"expected {nbytes} bytes, got {len(buf)}")
    raw = int.from_bytes(buf, "big") & ((1 << width_bits) - 1)
    if raw >= 1 << (width_bits - 1):
        raw -= 1 << width_bits
    return raw
