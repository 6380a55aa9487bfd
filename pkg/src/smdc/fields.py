"""Arithmetic over the small finite fields used by the coding layers.

Two kinds of field are supported: prime fields GF(p) with p <= 2^16, and
the 256-element binary field GF(2^8) built from a degree-8 reduction
polynomial (given as a 9-bit mask, default 0x11B).  Scalar work goes
through :class:`FieldSpec` / :class:`FieldElement`; bulk block math uses
the numpy helpers at the bottom of the module.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldMismatchError, ParameterError, SingularMatrixError

PRIME = "prime"
BINARY8 = "binary8"

MAX_PRIME = 1 << 16
DEFAULT_BINARY8_POLY = 0x11B


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mul(a: int, b: int) -> int:
    # carry-less product of GF(2) polynomials
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _poly_mod(a: int, mod: int) -> int:
    md = mod.bit_length() - 1
    while a.bit_length() - 1 >= md:
        a ^= mod << (a.bit_length() - 1 - md)
    return a


def _is_irreducible_deg8(poly: int) -> bool:
    # a degree-8 polynomial over GF(2) is irreducible iff it has no
    # factor of degree 1..4
    if poly.bit_length() - 1 != 8:
        return False
    for d in range(2, 1 << 5):
        if _poly_mod(poly, d) == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Identifies one finite field and implements its scalar arithmetic.

    ``kind`` is "prime" or "binary8"; ``modulus`` is the prime p or the
    9-bit reduction polynomial mask.  Instances are value objects: two
    specs compare equal iff they describe the same field.
    """

    kind: str
    modulus: int

    def __post_init__(self):
        if self.kind == PRIME:
            if not (self.modulus <= MAX_PRIME and _is_prime(self.modulus)):
                raise ParameterError(f"{self.modulus} is not a usable prime modulus")
        elif self.kind == BINARY8:
            if not _is_irreducible_deg8(self.modulus):
                raise ParameterError(
                    f"0x{self.modulus:X} is not an irreducible degree-8 polynomial"
                )
        else:
            raise ParameterError(f"unknown field kind {self.kind!r}")

    @property
    def order(self) -> int:
        return self.modulus if self.kind == PRIME else 256

    def _check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ParameterError(f"{a} is not an element of {self}")
        return a

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self._check(int(value)), self)

    def add(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return (a + b) % self.modulus
        return a ^ b

    def neg(self, a: int) -> int:
        if self.kind == PRIME:
            return (-a) % self.modulus
        return a

    def sub(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return (a - b) % self.modulus
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if self.kind == PRIME:
            return (a * b) % self.modulus
        if a == 0 or b == 0:
            return 0
        exp, log = _binary8_tables(self.modulus)
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self.kind == PRIME:
            return pow(a, -1, self.modulus)
        exp, log = _binary8_tables(self.modulus)
        return exp[255 - log[a]]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def __repr__(self):
        if self.kind == PRIME:
            return f"GF({self.modulus})"
        return f"GF(2^8/0x{self.modulus:X})"


@lru_cache(maxsize=None)
def _binary8_tables(poly: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # log/exp tables over a generator of the multiplicative group
    def raw_mul(a, b):
        return _poly_mod(_poly_mul(a, b), poly)

    for g in range(2, 256):
        exp = [0] * 510
        log = [0] * 256
        x = 1
        ok = True
        for i in range(255):
            if i > 0 and x == 1:
                ok = False  # cycle shorter than 255, not a generator
                break
            exp[i] = x
            log[x] = i
            x = raw_mul(x, g)
        if ok and x == 1:
            for i in range(255, 510):
                exp[i] = exp[i - 255]
            return tuple(exp), tuple(log)
    raise AssertionError("no multiplicative generator found")  # pragma: no cover


@lru_cache(maxsize=None)
def _binary8_mul_table(poly: int) -> np.ndarray:
    spec = FieldSpec(BINARY8, poly)
    table = np.zeros((256, 256), dtype=np.uint8)
    for a in range(1, 256):
        for b in range(1, 256):
            table[a, b] = spec.mul(a, b)
    return table


def prime_field(p: int) -> FieldSpec:
    return FieldSpec(PRIME, p)


def binary8_field(poly: int = DEFAULT_BINARY8_POLY) -> FieldSpec:
    return FieldSpec(BINARY8, poly)


GF5 = prime_field(5)
GF7 = prime_field(7)
GF256 = binary8_field()


@dataclass(frozen=True)
class FieldElement:
    """One field element; binary operators require matching fields."""

    value: int
    spec: FieldSpec

    def __post_init__(self):
        self.spec._check(self.value)

    def _peer(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(
                    f"cannot combine {self.spec} and {other.spec} elements"
                )
            return other.value
        if isinstance(other, int):
            return self.spec._check(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        v = self._peer(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec.add(self.value, v), self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._peer(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec.sub(self.value, v), self.spec)

    def __mul__(self, other):
        v = self._peer(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec.mul(self.value, v), self.spec)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.spec.neg(self.value), self.spec)

    def __truediv__(self, other):
        v = self._peer(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec.mul(self.value, self.spec.inv(v)), self.spec)

    def __pow__(self, e: int):
        return FieldElement(self.spec.pow(self.value, e), self.spec)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec.inv(self.value), self.spec)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}:{self.spec}"


def _coerce_matrix(rows, spec: FieldSpec | None):
    """Normalize a matrix of FieldElement/int entries to ints plus a spec."""
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, FieldElement):
                if spec is None:
                    spec = x.spec
                elif x.spec != spec:
                    raise FieldMismatchError("mixed fields in matrix")
                r.append(x.value)
            else:
                r.append(int(x))
        out.append(r)
    if spec is None:
        raise ParameterError("cannot infer field: pass spec or FieldElements")
    for r in out:
        for x in r:
            spec._check(x)
    return out, spec


def solve_linear_int(spec: FieldSpec, a: Sequence[Sequence[int]],
                     y: Sequence[int]) -> list[int]:
    """Solve the square system a.x = y over the field, on plain ints.

    Raises SingularMatrixError when the matrix has no inverse.
    """
    n = len(a)
    if n == 0:
        return []
    if any(len(row) != n for row in a) or len(y) != n:
        raise ParameterError("solve_linear expects a square system")
    # augmented Gaussian elimination with partial (first nonzero) pivoting
    m = [list(row) + [yv] for row, yv in zip(a, y)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise SingularMatrixError(f"matrix is singular at column {col}")
        m[col], m[pivot] = m[pivot], m[col]
        inv = spec.inv(m[col][col])
        m[col] = [spec.mul(inv, v) for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [spec.sub(v, spec.mul(f, w)) for v, w in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def solve_linear(a, y, spec: FieldSpec | None = None) -> list[FieldElement]:
    """Solve a square linear system given as FieldElement (or int) entries."""
    a_int, spec = _coerce_matrix(a, spec)
    y_int, _ = _coerce_matrix([y], spec)
    x = solve_linear_int(spec, a_int, y_int[0])
    return [FieldElement(v, spec) for v in x]


def matrix_rank(spec: FieldSpec, a: Sequence[Sequence[int]]) -> int:
    """Row rank of an arbitrary matrix over the field."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot = None
        for r in range(rank, rows):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = spec.inv(m[rank][col])
        m[rank] = [spec.mul(inv, v) for v in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [spec.sub(v, spec.mul(f, w)) for v, w in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def vandermonde_int(spec: FieldSpec, nodes: Sequence[int], width: int) -> list[list[int]]:
    """Vandermonde matrix on ints: entry (i, j) = nodes[i] ** j."""
    vals = [spec._check(int(v)) for v in nodes]
    if len(set(vals)) != len(vals):
        raise ParameterError("vandermonde nodes must be distinct")
    if width < 0:
        raise ParameterError("width must be nonnegative")
    out = []
    for v in vals:
        row = [1]
        for _ in range(width - 1):
            row.append(spec.mul(row[-1], v))
        out.append(row[:width])
    return out


def vandermonde(nodes, width: int, spec: FieldSpec | None = None) -> list[list[FieldElement]]:
    """Vandermonde matrix over FieldElements; nodes must be distinct."""
    node_rows, spec = _coerce_matrix([nodes], spec)
    m = vandermonde_int(spec, node_rows[0], width)
    return [[FieldElement(v, spec) for v in row] for row in m]


# ---------------------------------------------------------------------------
# bulk numpy paths (exact; used for multi-block encoding and file splitting)

def array_elements(spec: FieldSpec, data: Iterable[int]) -> np.ndarray:
    arr = np.asarray(list(data) if not isinstance(data, np.ndarray) else data,
                     dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= spec.order):
        raise ParameterError("array contains values outside the field")
    return arr


def array_matmul(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact field matrix product of int arrays (shapes (n,k) x (k,m))."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if spec.kind == PRIME:
        # values < 2^16 and inner dims are small: int64 never overflows here
        return (a @ b) % spec.modulus
    table = _binary8_mul_table(spec.modulus)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out ^= table[a[:, j][:, None], b[j, :][None, :]].astype(np.int64)
    return out
