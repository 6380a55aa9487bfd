"""Coset coding on Vandermonde generators.

One code turns a block of message symbols plus fresh uniform key symbols
into L share symbols, one per encoder.  Any `threshold` shares recover
the message; any `wiretap` shares are statistically independent of it,
because the key columns of every such row subset have full row rank.

The generator is the L x threshold Vandermonde matrix on the
CosetCodeSpec nodes; columns 0..wiretap-1 multiply the key, the rest
the message.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    DecodeFailureError,
    InsufficientSharesError,
    ParameterError,
)
from .fields import FieldSpec, array_matmul, solve_linear_int, vandermonde_int
from .randomness import as_symbol_source


@dataclass(frozen=True)
class CosetCodeSpec:
    """Shape of one code: L outputs, `wiretap` tolerated taps, decode
    from any `threshold` outputs.  Nodes default to 1..L."""

    field: FieldSpec
    length: int
    wiretap: int
    threshold: int
    nodes: tuple[int, ...] = ()

    def __post_init__(self):
        if not 1 <= self.wiretap < self.threshold <= self.length:
            raise ParameterError(
                f"need 1 <= wiretap < threshold <= length, got "
                f"({self.length}, {self.wiretap}, {self.threshold})")
        if not self.nodes:
            object.__setattr__(self, "nodes",
                               tuple(range(1, self.length + 1)))
        if len(self.nodes) != self.length:
            raise ParameterError("need one node per encoder")
        if len(set(self.nodes)) != self.length:
            raise ParameterError("nodes must be distinct")
        for v in self.nodes:
            if not 0 <= v < self.field.order:
                raise ParameterError(f"node {v} outside {self.field}")

    @property
    def key_symbols(self) -> int:
        return self.wiretap

    @property
    def message_symbols(self) -> int:
        return self.threshold - self.wiretap


@lru_cache(maxsize=None)
def generator_matrix(spec: CosetCodeSpec) -> tuple[tuple[int, ...], ...]:
    rows = vandermonde_int(spec.field, spec.nodes, spec.threshold)
    return tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def _decode_solver(spec: CosetCodeSpec, ids: tuple[int, ...]):
    """Inverse of the square submatrix for the first `threshold` of ids,
    plus the generator rows of any extra ids for consistency checking."""
    gen = generator_matrix(spec)
    lead = ids[:spec.threshold]
    a = [list(gen[i - 1]) for i in lead]
    m = spec.threshold
    cols = []
    for j in range(m):
        e = [0] * m
        e[j] = 1
        cols.append(solve_linear_int(spec.field, a, e))
    inv = tuple(tuple(cols[j][i] for j in range(m)) for i in range(m))
    extra = tuple(gen[i - 1] for i in ids[m:])
    return inv, extra


def _check_ids(spec: CosetCodeSpec, ids) -> tuple[int, ...]:
    ids = tuple(int(i) for i in ids)
    for i in ids:
        if not 1 <= i <= spec.length:
            raise ParameterError(f"share index {i} out of range 1..{spec.length}")
    if len(set(ids)) != len(ids):
        raise ParameterError("duplicate share indices")
    if len(ids) < spec.threshold:
        raise InsufficientSharesError(
            f"decoding needs {spec.threshold} distinct shares, got {len(ids)}",
            needed=spec.threshold, have=len(ids))
    return ids


def encode(spec: CosetCodeSpec, message, key) -> tuple[int, ...]:
    """One block: L share symbols from message and key symbols."""
    msg = [int(v) for v in message]
    k = [int(v) for v in key]
    if len(msg) != spec.message_symbols:
        raise ParameterError(
            f"message block must have {spec.message_symbols} symbols")
    if len(k) != spec.key_symbols:
        raise ParameterError(f"key block must have {spec.key_symbols} symbols")
    x = k + msg
    f = spec.field
    for v in x:
        f._check(v)
    out = []
    for row in generator_matrix(spec):
        acc = 0
        for c, v in zip(row, x):
            acc = f.add(acc, f.mul(c, v))
        out.append(acc)
    return tuple(out)


def decode(spec: CosetCodeSpec, observed) -> tuple[int, ...]:
    """Message block from (share_index, value) pairs, indices 1-based.

    Extra shares beyond the threshold are checked against the decoded
    block; disagreement raises DecodeFailureError.
    """
    pairs = [(int(i), int(v)) for i, v in observed]
    ids = _check_ids(spec, [i for i, _ in pairs])
    f = spec.field
    vals = [v for _, v in pairs]
    for v in vals:
        f._check(v)
    inv, extra = _decode_solver(spec, ids)
    m = spec.threshold
    x = []
    for row in inv:
        acc = 0
        for c, v in zip(row, vals[:m]):
            acc = f.add(acc, f.mul(c, v))
        x.append(acc)
    for row, val in zip(extra, vals[m:]):
        acc = 0
        for c, v in zip(row, x):
            acc = f.add(acc, f.mul(c, v))
        if acc != val:
            raise DecodeFailureError(
                "shares are inconsistent with any single codeword")
    return tuple(x[spec.wiretap:])


def keygen(spec: CosetCodeSpec, source=None) -> tuple[int, ...]:
    """Fresh uniform key symbols for one block."""
    src = as_symbol_source(source)
    return tuple(src.draw(spec.field.order, spec.key_symbols))


# --- bulk block paths ---------------------------------------------------------

def encode_blocks(spec: CosetCodeSpec, messages: np.ndarray,
                  keys: np.ndarray) -> np.ndarray:
    """Vectorized encode: (n, msg) and (n, key) arrays to (n, L) shares."""
    messages = np.asarray(messages, dtype=np.int64)
    keys = np.asarray(keys, dtype=np.int64)
    n = messages.shape[0]
    if messages.shape != (n, spec.message_symbols) or keys.shape != (n, spec.key_symbols):
        raise ParameterError("block arrays have the wrong shape")
    x = np.concatenate([keys, messages], axis=1)
    gen = np.array(generator_matrix(spec), dtype=np.int64)
    return array_matmul(spec.field, x, gen.T)


def decode_blocks(spec: CosetCodeSpec, ids, shares: np.ndarray) -> np.ndarray:
    """Vectorized decode of (n, len(ids)) share columns back to messages."""
    ids = _check_ids(spec, ids)
    shares = np.asarray(shares, dtype=np.int64)
    if shares.ndim != 2 or shares.shape[1] != len(ids):
        raise ParameterError("share array does not match the id list")
    inv, extra = _decode_solver(spec, ids)
    m = spec.threshold
    inv_np = np.array(inv, dtype=np.int64)
    x = array_matmul(spec.field, shares[:, :m], inv_np.T)
    if extra:
        extra_np = np.array(extra, dtype=np.int64)
        redo = array_matmul(spec.field, x, extra_np.T)
        if not np.array_equal(redo, shares[:, m:]):
            raise DecodeFailureError(
                "shares are inconsistent with any single codeword")
    return x[:, spec.wiretap:]
