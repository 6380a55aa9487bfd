"""Field arithmetic tests: frozen oracle values, axioms, Vandermonde minors."""

from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from smdc.errors import FieldMismatchError, ParameterError, SingularMatrixError
from smdc.fields import (
    FieldSpec,
    array_matmul,
    binary8_field,
    matrix_rank,
    prime_field,
    solve_linear,
    solve_linear_int,
    vandermonde,
    vandermonde_int,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17]


def ref_gf256_mul(a: int, b: int, poly: int = 0x11B) -> int:
    # independent shift-and-reduce reference, no shared code with the module
    r = 0
    for i in range(8):
        if (b >> i) & 1:
            r ^= a << i
    for bit in range(15, 7, -1):
        if r & (1 << bit):
            r ^= poly << (bit - 8)
    return r


def frac_det(rows) -> Fraction:
    # exact determinant by fraction-free-ish Gaussian elimination
    m = [[Fraction(v) for v in row] for row in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


# --- frozen scalar values ---------------------------------------------------

def test_prime_scalar_oracles():
    f5 = prime_field(5)
    assert f5.add(3, 4) == 2
    assert f5.mul(3, 4) == 2
    assert f5.sub(1, 3) == 3
    f7 = prime_field(7)
    assert f7.inv(3) == 5
    assert f7.mul(3, 5) == 1


def test_binary8_scalar_oracles():
    f = binary8_field()
    assert f.add(0x53, 0xCA) == 0x99
    # 0xCA is the multiplicative inverse of 0x53 under 0x11B
    assert f.mul(0x53, 0xCA) == 0x01
    assert f.inv(0x53) == 0xCA
    assert f.mul(0x02, 0x80) == 0x1B


def test_prime_inverse_matches_exhaustive_search():
    f = prime_field(11)
    for a in range(1, 11):
        brute = next(b for b in range(1, 11) if (a * b) % 11 == 1)
        assert f.inv(a) == brute


# --- constructors and validation --------------------------------------------

def test_field_spec_rejects_bad_moduli():
    with pytest.raises(ParameterError):
        prime_field(4)
    with pytest.raises(ParameterError):
        prime_field(1)
    with pytest.raises(ParameterError):
        prime_field((1 << 16) + 1)
    with pytest.raises(ParameterError):
        binary8_field(0x11C)  # divisible by x
    with pytest.raises(ParameterError):
        binary8_field(0x1FF)  # reducible: x^2+x+1 divides it
    with pytest.raises(ParameterError):
        FieldSpec("ternary", 3)


def test_alternative_reduction_polynomial_accepted():
    f = binary8_field(0x11D)
    for a in range(1, 256):
        assert f.mul(a, f.inv(a)) == 1


def test_specs_are_value_objects():
    assert prime_field(5) == prime_field(5)
    assert prime_field(5) != prime_field(7)
    assert binary8_field() == binary8_field(0x11B)


# --- axioms ------------------------------------------------------------------

@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_prime_field_axioms_exhaustive(p):
    f = prime_field(p)
    els = range(p)
    for a in els:
        assert f.add(a, 0) == a
        assert f.mul(a, 1) == a
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_binary8_mul_matches_reference_and_axioms():
    f = binary8_field()
    rng = np.random.default_rng(1001)
    trips = rng.integers(0, 256, size=(10_000, 3))
    for a, b, c in trips.tolist():
        ab = f.mul(a, b)
        assert ab == ref_gf256_mul(a, b)
        assert f.mul(ab, c) == f.mul(a, f.mul(b, c))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_binary8_inverses_exhaustive():
    f = binary8_field()
    for a in range(1, 256):
        assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_pow_matches_repeated_multiplication():
    f = prime_field(13)
    for a in range(1, 13):
        acc = 1
        for e in range(1, 6):
            acc = f.mul(acc, a)
            assert f.pow(a, e) == acc
        assert f.mul(f.pow(a, -2), f.pow(a, 2)) == 1


# --- element wrapper ----------------------------------------------------------

def test_element_operators():
    f = prime_field(5)
    a, b = f.element(3), f.element(4)
    assert int(a + b) == 2
    assert int(a * b) == 2
    assert int(a - b) == 4
    assert int(a / b) == int(a * b.inverse())
    assert int(-a) == 2
    assert int(a ** 3) == 2  # 27 mod 5


def test_element_rejects_cross_field_math():
    a = prime_field(5).element(3)
    b = prime_field(7).element(3)
    with pytest.raises(FieldMismatchError):
        _ = a + b
    with pytest.raises(ParameterError):
        prime_field(5).element(5)


# --- linear solving -----------------------------------------------------------

def test_solve_linear_frozen_case():
    f = prime_field(5)
    v = vandermonde_int(f, [1, 2], 2)
    assert v == [[1, 1], [1, 2]]
    assert solve_linear_int(f, v, [0, 3]) == [2, 3]
    # element-typed front end agrees
    xs = solve_linear([[f.element(1), f.element(1)], [f.element(1), f.element(2)]],
                      [f.element(0), f.element(3)])
    assert [int(x) for x in xs] == [2, 3]


def test_solve_linear_singular_raises():
    f = prime_field(5)
    with pytest.raises(SingularMatrixError):
        solve_linear_int(f, [[1, 2], [2, 4]], [1, 0])


def test_solve_linear_random_round_trip():
    rng = np.random.default_rng(7)
    f = prime_field(13)
    for _ in range(200):
        n = int(rng.integers(1, 5))
        a = rng.integers(0, 13, size=(n, n)).tolist()
        x = rng.integers(0, 13, size=n).tolist()
        if matrix_rank(f, a) < n:
            with pytest.raises(SingularMatrixError):
                solve_linear_int(f, a, x)
            continue
        y = [0] * n
        for i in range(n):
            acc = 0
            for j in range(n):
                acc = f.add(acc, f.mul(a[i][j], x[j]))
            y[i] = acc
        assert solve_linear_int(f, a, y) == x


def test_vandermonde_rejects_duplicates():
    with pytest.raises(ParameterError):
        vandermonde_int(prime_field(5), [1, 1], 2)
    with pytest.raises(ParameterError):
        vandermonde([1, 2], 2)  # no field information anywhere


# --- Vandermonde minors ---------------------------------------------------------

@pytest.mark.parametrize("p", [7, 11, 13])
def test_vandermonde_leading_minors_nonsingular_exhaustive(p):
    # decodability everywhere rests on this: any k rows x first k columns
    # of a Vandermonde on distinct nodes form an invertible matrix
    f = prime_field(p)
    top = min(6, p - 1)
    nodes = list(range(1, top + 1))
    v = vandermonde_int(f, nodes, top)
    for k in range(1, top + 1):
        for rows in combinations(range(top), k):
            sub = [v[r][:k] for r in rows]
            assert matrix_rank(f, sub) == k
            det = frac_det(sub)
            assert det % p != 0  # independent exact-integer oracle


def test_vandermonde_minors_nonsingular_binary8():
    f = binary8_field()
    nodes = list(range(1, 7))
    v = vandermonde_int(f, nodes, 6)
    for k in range(1, 7):
        for rows in combinations(range(6), k):
            assert matrix_rank(f, [v[r][:k] for r in rows]) == k


# --- bulk numpy path -------------------------------------------------------------

@pytest.mark.parametrize("field", [prime_field(5), prime_field(251), binary8_field()])
def test_array_matmul_matches_scalar_loop(field):
    rng = np.random.default_rng(42)
    q = field.order
    for _ in range(25):
        n, k, m = (int(v) for v in rng.integers(1, 6, size=3))
        a = rng.integers(0, q, size=(n, k))
        b = rng.integers(0, q, size=(k, m))
        got = array_matmul(field, a, b)
        for i in range(n):
            for j in range(m):
                acc = 0
                for t in range(k):
                    acc = field.add(acc, field.mul(int(a[i, t]), int(b[t, j])))
                assert got[i, j] == acc
