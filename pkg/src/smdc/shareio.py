"""Binary container for encoder outputs.

Layout (little endian):

    magic "SMDC" | version u8 | length u8 | wiretap u8 | encoder u8
    | field u16 | source_count u8
    | source_count * symbols u32      (symbols this encoder holds per source)
    | source_count * byte_length u64  (original file size per source)
    | body, one byte per symbol, sources in order

The field id is the prime itself for GF(p) with p <= 251, or 0x0100 for
GF(2^8) with the default polynomial.  Symbols therefore always fit in
one body byte.  Prime fields carry each payload byte as the smallest
number of base-p digits that can hold 0..255; GF(2^8) stores bytes
directly.
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass

from .errors import (DecodeFailureError, ParameterError, ShareFormatError)
from .fields import (BINARY8, DEFAULT_BINARY8_POLY, FieldSpec, _is_prime,
                     binary8_field, prime_field)
from .multilevel import SmdcParams, SmdcShareBundle, decode, encode, plan

MAGIC = b"SMDC"
VERSION = 1
BINARY8_FIELD_ID = 0x0100
MAX_PRIME_FIELD_ID = 251

_HEAD = struct.Struct("<4sBBBBHB")


def field_to_id(field: FieldSpec) -> int:
    if field.kind == BINARY8:
        if field.modulus != DEFAULT_BINARY8_POLY:
            raise ParameterError(
                "share files only carry the default GF(2^8) polynomial")
        return BINARY8_FIELD_ID
    if field.modulus > MAX_PRIME_FIELD_ID:
        raise ParameterError(
            f"share files store one symbol per byte; GF({field.modulus}) "
            f"does not fit")
    return field.modulus


def field_from_id(fid: int) -> FieldSpec:
    if fid == BINARY8_FIELD_ID:
        return binary8_field()
    if 2 <= fid <= MAX_PRIME_FIELD_ID and _is_prime(fid):
        return prime_field(fid)
    raise ShareFormatError(f"unknown field id {fid:#06x}")


def symbols_per_byte(field: FieldSpec) -> int:
    if field.kind == BINARY8:
        return 1
    t, span = 1, field.modulus
    while span < 256:
        t += 1
        span *= field.modulus
    return t


def bytes_to_symbols(field: FieldSpec, data: bytes) -> list[int]:
    """Big endian base-q digits, symbols_per_byte() of them per byte."""
    if field.kind == BINARY8:
        return list(data)
    p = field.modulus
    t = symbols_per_byte(field)
    out = []
    for b in data:
        digits = []
        for _ in range(t):
            digits.append(b % p)
            b //= p
        out.extend(reversed(digits))
    return out


def symbols_to_bytes(field: FieldSpec, symbols, n_bytes: int) -> bytes:
    symbols = list(symbols)
    t = symbols_per_byte(field)
    if len(symbols) != n_bytes * t:
        raise DecodeFailureError(
            f"expected {n_bytes * t} recovered symbols, got {len(symbols)}")
    if field.kind == BINARY8:
        return bytes(symbols)
    p = field.modulus
    out = bytearray()
    for i in range(n_bytes):
        b = 0
        for d in symbols[i * t:(i + 1) * t]:
            b = b * p + d
        if not 0 <= b <= 255:
            raise DecodeFailureError("recovered symbols do not form bytes")
        out.append(b)
    return bytes(out)


@dataclass(frozen=True)
class ShareFile:
    """One encoder's full output: a symbol tuple per source, plus the
    geometry needed to rebuild the code at join time."""

    length: int
    wiretap: int
    encoder: int
    field: FieldSpec
    byte_lengths: tuple[int, ...]
    payloads: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not 1 <= self.wiretap < self.length <= 255:
            raise ParameterError("need 1 <= wiretap < length <= 255")
        if not 1 <= self.encoder <= self.length:
            raise ParameterError(f"encoder {self.encoder} out of range")
        expected = self.length - self.wiretap
        if len(self.byte_lengths) != expected or len(self.payloads) != expected:
            raise ParameterError(f"need {expected} per-source entries")
        object.__setattr__(self, "byte_lengths",
                           tuple(int(v) for v in self.byte_lengths))
        object.__setattr__(self, "payloads",
                           tuple(tuple(int(v) for v in p)
                                 for p in self.payloads))
        # the header stores u32 symbol counts and u64 byte lengths
        if any(len(p) > 0xFFFFFFFF for p in self.payloads):
            raise ParameterError("payload too large for a 4-byte symbol count")
        if any(not 0 <= n <= 0xFFFFFFFFFFFFFFFF for n in self.byte_lengths):
            raise ParameterError("byte length does not fit in 8 bytes")


def dump_share(share: ShareFile) -> bytes:
    fid = field_to_id(share.field)
    order = share.field.order
    parts = [_HEAD.pack(MAGIC, VERSION, share.length, share.wiretap,
                        share.encoder, fid, len(share.payloads))]
    for payload in share.payloads:
        parts.append(struct.pack("<I", len(payload)))
    for n in share.byte_lengths:
        parts.append(struct.pack("<Q", n))
    for payload in share.payloads:
        for v in payload:
            if not 0 <= v < order:
                raise ParameterError(f"symbol {v} outside GF({order})")
        parts.append(bytes(payload))
    return b"".join(parts)


def load_share(blob: bytes) -> ShareFile:
    if len(blob) < _HEAD.size:
        raise ShareFormatError("share file is truncated")
    magic, version, length, wiretap, encoder, fid, n_src = \
        _HEAD.unpack_from(blob)
    if magic != MAGIC:
        raise ShareFormatError("not a share file (bad magic)")
    if version != VERSION:
        raise ShareFormatError(f"unsupported share file version {version}")
    if not 1 <= wiretap < length:
        raise ShareFormatError(
            f"inconsistent geometry: length {length}, wiretap {wiretap}")
    if not 1 <= encoder <= length:
        raise ShareFormatError(f"encoder index {encoder} out of range")
    field = field_from_id(fid)
    if n_src != length - wiretap:
        raise ShareFormatError(
            f"expected {length - wiretap} sources, header says {n_src}")
    at = _HEAD.size
    need = n_src * 4 + n_src * 8
    if len(blob) < at + need:
        raise ShareFormatError("share file is truncated")
    counts = struct.unpack_from(f"<{n_src}I", blob, at)
    at += n_src * 4
    byte_lengths = struct.unpack_from(f"<{n_src}Q", blob, at)
    at += n_src * 8
    if len(blob) != at + sum(counts):
        raise ShareFormatError(
            f"body holds {len(blob) - at} bytes, header promises {sum(counts)}")
    order = field.order
    payloads = []
    for c in counts:
        chunk = blob[at:at + c]
        at += c
        if any(v >= order for v in chunk):
            raise ShareFormatError(f"symbol outside GF({order}) in body")
        payloads.append(tuple(chunk))
    return ShareFile(length, wiretap, encoder, field,
                     tuple(byte_lengths), tuple(payloads))


def write_share(path, share: ShareFile) -> None:
    _atomic_write(path, dump_share(share))


def read_share(path) -> ShareFile:
    with open(path, "rb") as fh:
        return load_share(fh.read())


def _atomic_write(path, data: bytes) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-share-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# --- splitting and joining whole files ----------------------------------------------


def split_files(field: FieldSpec, length: int, wiretap: int,
                datas, source=None) -> list[ShareFile]:
    """Encode K = length - wiretap byte strings, priority order, into one
    ShareFile per encoder."""
    sources = [bytes_to_symbols(field, bytes(d)) for d in datas]
    params = SmdcParams(field, length, wiretap,
                        tuple(len(s) for s in sources))
    bundle = encode(params, sources, source)
    byte_lengths = tuple(len(d) for d in datas)
    return [ShareFile(length, wiretap, l, field, byte_lengths,
                      bundle.payloads[l])
            for l in range(1, length + 1)]


def join_files(shares) -> list[bytes]:
    """Recover the leading sources from any consistent set of shares.

    With u shares present, sources 1..(u - wiretap) come back
    byte-identical; fewer than wiretap + 1 shares raise
    InsufficientSharesError before anything is produced.
    """
    shares = list(shares)
    if not shares:
        raise ParameterError("no shares given")
    head = shares[0]
    for s in shares[1:]:
        if (s.length, s.wiretap, s.field, s.byte_lengths) != \
                (head.length, head.wiretap, head.field, head.byte_lengths):
            raise ShareFormatError("share headers disagree; these files "
                                   "do not belong to one split")
    encoders = [s.encoder for s in shares]
    if len(set(encoders)) != len(encoders):
        dup = sorted(l for l in set(encoders) if encoders.count(l) > 1)
        raise ShareFormatError(f"duplicate share for encoder {dup[0]}")
    field = head.field
    t = symbols_per_byte(field)
    params = SmdcParams(field, head.length, head.wiretap,
                        tuple(n * t for n in head.byte_lengths))
    layout = plan(params)
    for s in shares:
        for k, level in enumerate(layout.levels):
            want = level.emitted(s.encoder)
            if len(s.payloads[k]) != want:
                raise ShareFormatError(
                    f"encoder {s.encoder} carries {len(s.payloads[k])} "
                    f"symbols for source {k + 1}, geometry requires {want}")
    bundle = SmdcShareBundle(layout, {s.encoder: s.payloads for s in shares})
    decoded = decode(bundle)
    return [symbols_to_bytes(field, syms, head.byte_lengths[i])
            for i, syms in enumerate(decoded)]
