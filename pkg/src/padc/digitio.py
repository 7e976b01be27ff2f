"""Ordered base-P digit streams and the self-describing container format.

For P = 2 digits are packed eight per byte, first-pushed digit in the
most significant bit, final byte zero-padded; the padding is invisible
because readers zero-extend past the declared digit count anyway.  For
P > 2 each digit occupies one byte (clarity over density; those grids
are an experimental mode).

Container layout (multi-byte integers little-endian):

    bytes 0-3   magic "PADC"
    byte  4     version (1)
    byte  5     P
    byte  6     N
    byte  7     flags: bit0 = midpoint renorm enabled, bit1 = flush mode
                (0 = shortest point, trimmed; 1 = left edge, full path)
    byte  8     model id: 0 static, 1 adaptive, 2 huffman, 3 unary
    bytes 9-10  alphabet size S (u16, excluding the end marker)
    ...         model payload:
                  static   -> (S+1) u32 counts, end marker last
                  huffman  -> S u8 canonical code lengths (P=2 only,
                              0 = symbol absent)
                  adaptive -> empty
                  unary    -> 1 byte, the repeated symbol's value
    ...         u64 digit count
    ...         packed digits

Writers and readers are single-owner objects; distinct instances are
independent.
"""

import struct
from dataclasses import dataclass

from .core import GridParams

MAGIC = b"PADC"
VERSION = 1

FLAG_AR = 0x01
FLAG_FLUSH_LEFT = 0x02

MODEL_IDS = {"static": 0, "adaptive": 1, "huffman": 2, "unary": 3}
MODEL_KINDS = {v: k for k, v in MODEL_IDS.items()}

_HEADER = struct.Struct("<4sBBBBBH")
_COUNT = struct.Struct("<Q")


class ContainerError(ValueError):
    """Raised for malformed or unsupported container bytes."""


class DigitWriter:
    def __init__(self, params: GridParams):
        self.params = params
        self.digit_count = 0
        self._buf = bytearray()
        self._acc = 0
        self._nbits = 0

    def push(self, digit: int):
        if not 0 <= digit < self.params.P:
            raise ValueError(f"digit {digit} out of range for P={self.params.P}")
        self.digit_count += 1
        if self.params.P == 2:
            self._acc = (self._acc << 1) | digit
            self._nbits += 1
            if self._nbits == 8:
                self._buf.append(self._acc)
                self._acc = 0
                self._nbits = 0
        else:
            self._buf.append(digit)

    def push_digits(self, digits):
        for d in digits:
            self.push(d)

    def push_repeat(self, digit: int, n: int):
        if not 0 <= digit < self.params.P:
            raise ValueError(f"digit {digit} out of range for P={self.params.P}")
        for _ in range(n):
            self.push(digit)

    def to_bytes(self) -> bytes:
        out = bytes(self._buf)
        if self._nbits:
            out += bytes([self._acc << (8 - self._nbits)])
        return out


class DigitReader:
    """Sequential digit reader; reads past the declared count return 0."""

    def __init__(self, params: GridParams, payload: bytes, declared_count: int):
        self.params = params
        self.payload = payload
        self.declared_count = declared_count
        self.consumed = 0

    @classmethod
    def from_digits(cls, params: GridParams, digits) -> "DigitReader":
        w = DigitWriter(params)
        w.push_digits(digits)
        return cls(params, w.to_bytes(), w.digit_count)

    def get_digit(self) -> int:
        i = self.consumed
        self.consumed += 1
        if i >= self.declared_count:
            return 0
        if self.params.P == 2:
            return (self.payload[i >> 3] >> (7 - (i & 7))) & 1
        return self.payload[i]

    def get_digits(self, n: int):
        return [self.get_digit() for _ in range(n)]


def payload_length(params: GridParams, digit_count: int) -> int:
    if params.P == 2:
        return (digit_count + 7) // 8
    return digit_count


@dataclass
class ContainerHeader:
    params: GridParams
    ar: bool
    flush: str  # "min" or "left"
    model_kind: str
    alphabet_size: int
    model_data: object  # counts / lengths / symbol byte / None
    digit_count: int


def write_container(header: ContainerHeader, digit_payload: bytes) -> bytes:
    params = header.params
    if header.model_kind not in MODEL_IDS:
        raise ValueError(f"unknown model kind {header.model_kind!r}")
    if not 0 <= header.alphabet_size <= 0xFFFF:
        raise ValueError("alphabet size out of range")
    flags = (FLAG_AR if header.ar else 0) | (
        FLAG_FLUSH_LEFT if header.flush == "left" else 0
    )
    out = bytearray(
        _HEADER.pack(
            MAGIC,
            VERSION,
            params.P,
            params.N,
            flags,
            MODEL_IDS[header.model_kind],
            header.alphabet_size,
        )
    )
    if header.model_kind == "static":
        counts = list(header.model_data)
        if len(counts) != header.alphabet_size + 1:
            raise ValueError("static model needs S+1 counts")
        for c in counts:
            if not 1 <= c <= 0xFFFFFFFF:
                raise ValueError(f"count {c} does not fit u32")
            out += struct.pack("<I", c)
    elif header.model_kind == "huffman":
        if params.P != 2:
            raise ValueError("huffman containers support P=2 only")
        lengths = list(header.model_data)
        if len(lengths) != header.alphabet_size:
            raise ValueError("huffman model needs S code lengths")
        for ln in lengths:
            if not 0 <= ln <= 0xFF:
                raise ValueError(f"code length {ln} does not fit u8")
            out.append(ln)
    elif header.model_kind == "unary":
        sym = int(header.model_data or 0)
        if not 0 <= sym <= 0xFF:
            raise ValueError("unary symbol value must fit one byte")
        out.append(sym)
    # adaptive: empty payload
    out += _COUNT.pack(header.digit_count)
    expected = payload_length(params, header.digit_count)
    if len(digit_payload) != expected:
        raise ValueError(
            f"digit payload of {len(digit_payload)} bytes, expected {expected}"
        )
    out += digit_payload
    return bytes(out)


def read_container(data: bytes):
    """Parse container bytes into (ContainerHeader, DigitReader)."""
    if len(data) < _HEADER.size:
        raise ContainerError("truncated header")
    magic, version, p, n, flags, model_id, alphabet_size = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ContainerError("bad magic")
    if version != VERSION:
        raise ContainerError(f"unsupported version {version}")
    if flags & ~(FLAG_AR | FLAG_FLUSH_LEFT):
        raise ContainerError(f"unknown flag bits 0x{flags:02x}")
    if model_id not in MODEL_KINDS:
        raise ContainerError(f"unknown model id {model_id}")
    try:
        params = GridParams(p, n)
    except ValueError as e:
        raise ContainerError(str(e)) from None
    kind = MODEL_KINDS[model_id]
    pos = _HEADER.size
    if kind == "static":
        want = 4 * (alphabet_size + 1)
        if len(data) < pos + want:
            raise ContainerError("truncated model payload")
        counts = list(
            struct.unpack_from(f"<{alphabet_size + 1}I", data, pos)
        )
        if any(c < 1 for c in counts):
            raise ContainerError("static model count below 1")
        pos += want
        model_data = counts
    elif kind == "huffman":
        if p != 2:
            raise ContainerError("huffman containers support P=2 only")
        if len(data) < pos + alphabet_size:
            raise ContainerError("truncated model payload")
        model_data = list(data[pos : pos + alphabet_size])
        pos += alphabet_size
    elif kind == "unary":
        if len(data) < pos + 1:
            raise ContainerError("truncated model payload")
        model_data = data[pos]
        pos += 1
    else:
        model_data = None
    if len(data) < pos + _COUNT.size:
        raise ContainerError("truncated digit count")
    (digit_count,) = _COUNT.unpack_from(data, pos)
    pos += _COUNT.size
    expected = payload_length(params, digit_count)
    payload = data[pos:]
    if len(payload) < expected:
        raise ContainerError("truncated payload")
    if len(payload) > expected:
        raise ContainerError("trailing bytes after payload")
    header = ContainerHeader(
        params=params,
        ar=bool(flags & FLAG_AR),
        flush="left" if flags & FLAG_FLUSH_LEFT else "min",
        model_kind=kind,
        alphabet_size=alphabet_size,
        model_data=model_data,
        digit_count=digit_count,
    )
    return header, DigitReader(params, payload, digit_count)
