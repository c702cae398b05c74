"""Message bit streams: MSB-first byte packing and 32-bit length framing.

A framed stream is a 32-bit big-endian payload bit-count followed by the
payload bits themselves. The frame makes extraction self-describing: the
receiver needs no out-of-band message length.
"""

from __future__ import annotations

from typing import Sequence

FRAME_BITS = 32
MAX_PAYLOAD_BITS = (1 << FRAME_BITS) - 1


class CapacityError(ValueError):
    """The message does not fit the carrier (or the 32-bit frame)."""


class FramingError(ValueError):
    """The extracted stream carries no consistent length frame."""


def bytes_to_bits(data: bytes | bytearray) -> list[int]:
    """Unpack bytes into bits, MSB first within each byte."""
    out = []
    append = out.append
    for byte in data:
        for shift in (7, 6, 5, 4, 3, 2, 1, 0):
            append((byte >> shift) & 1)
    return out


def bits_to_bytes(bits: Sequence[int]) -> bytes:
    """Pack bits (MSB first) back into bytes; inverse of bytes_to_bits."""
    if len(bits) % 8:
        raise ValueError(f"bit count {len(bits)} is not a whole number of bytes")
    out = bytearray(len(bits) // 8)
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i : i + 8]:
            byte = (byte << 1) | (b & 1)
        out[i // 8] = byte
    return bytes(out)


def frame_bits(payload_bits: Sequence[int]) -> list[int]:
    """Prefix payload bits with their 32-bit big-endian count."""
    n = len(payload_bits)
    if n > MAX_PAYLOAD_BITS:
        raise CapacityError(f"payload of {n} bits exceeds the 32-bit frame limit")
    prefix = [(n >> shift) & 1 for shift in range(FRAME_BITS - 1, -1, -1)]
    body = [b & 1 for b in payload_bits]
    return prefix + body


def frame_message(payload: bytes | bytearray) -> list[int]:
    """Frame a byte payload: 32-bit bit-count prefix, then MSB-first bits."""
    return frame_bits(bytes_to_bits(payload))


def frame_length(bits: Sequence[int]) -> int:
    """Read the payload bit count out of a stream's first 32 bits."""
    if len(bits) < FRAME_BITS:
        raise FramingError(f"stream of {len(bits)} bits is shorter than the 32-bit prefix")
    n = 0
    for b in bits[:FRAME_BITS]:
        n = (n << 1) | (b & 1)
    return n


def unframe_bits(bits: Sequence[int]) -> list[int]:
    """Strip the length frame and return exactly the declared payload bits."""
    declared = frame_length(bits)
    if declared > len(bits) - FRAME_BITS:
        raise FramingError(
            f"declared payload of {declared} bits exceeds the {len(bits) - FRAME_BITS} available"
        )
    return [b & 1 for b in bits[FRAME_BITS : FRAME_BITS + declared]]


def unframe_message(bits: Sequence[int]) -> bytes:
    """Unframe and repack to bytes; inverse of frame_message."""
    payload = unframe_bits(bits)
    if len(payload) % 8:
        raise FramingError(f"declared payload of {len(payload)} bits is not a whole number of bytes")
    return bits_to_bytes(payload)
