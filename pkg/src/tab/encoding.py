"""Canonical byte encoding shared by hashing, signing, and file export.

Every structure that gets hashed or signed is serialized as a length-prefixed
concatenation of its fields in declared order. Integers are big-endian and
fixed width, so the same logical record always produces the same bytes.
"""

from __future__ import annotations

import json
import struct


def enc_u32(value: int) -> bytes:
    return struct.pack(">I", value)


def enc_u64(value: int) -> bytes:
    return struct.pack(">Q", value)


def enc_i64(value: int) -> bytes:
    return struct.pack(">q", value)


def enc_bytes(data: bytes) -> bytes:
    """Length-prefixed byte string: u32 length followed by the raw bytes."""
    return enc_u32(len(data)) + data


def enc_str(text: str) -> bytes:
    return enc_bytes(text.encode("utf-8"))


def enc_int_vector(values) -> bytes:
    """Count-prefixed sequence of signed 64-bit integers."""
    out = [enc_u32(len(values))]
    out.extend(enc_i64(v) for v in values)
    return b"".join(out)


def enc_bigint(value: int, width: int) -> bytes:
    """Non-negative integer as a fixed-width big-endian string."""
    return value.to_bytes(width, "big")


def canonical_json(obj) -> bytes:
    """Deterministic JSON bytes: sorted keys, no whitespace, UTF-8."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")
