"""Exact rational linear programming via two-phase primal simplex.

Everything runs on Fractions, so optima come back exact; Bland's rule
keeps degenerate instances from cycling.  Problem sizes here are tiny
(rate regions over at most a few dozen rows), so no effort is spent on
sparse or revised variants.

solve_lp minimizes c.x subject to a_ge.x >= b_ge, a_eq.x == b_eq, x >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: str
    objective: Fraction | None
    x: tuple[Fraction, ...] | None


def _frac_rows(rows) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in rows]


def _objective_row(tab, basis, cost, width):
    obj = [Fraction(c) for c in cost] + [Fraction(0)] * (width - len(cost) + 1)
    for i, bv in enumerate(basis):
        cb = cost[bv] if bv < len(cost) else Fraction(0)
        if cb:
            for j in range(width + 1):
                obj[j] -= cb * tab[i][j]
    return obj


def _pivot(tab, obj, basis, r, c):
    piv = tab[r][c]
    tab[r] = [v / piv for v in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c]:
            f = row[c]
            tab[i] = [v - f * w for v, w in zip(row, tab[r])]
    if obj[c]:
        f = obj[c]
        for j in range(len(obj)):
            obj[j] -= f * tab[r][j]
    basis[r] = c


def _run_simplex(tab, obj, basis, width):
    """Bland-rule iterations; returns 'optimal' or 'unbounded'."""
    while True:
        enter = next((j for j in range(width) if obj[j] < 0), None)
        if enter is None:
            return OPTIMAL
        best = None
        for i, row in enumerate(tab):
            if row[enter] > 0:
                ratio = row[width] / row[enter]
                if best is None or ratio < best[0] or \
                        (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(tab, obj, basis, best[1], enter)


def solve_lp(c: Sequence, a_ge: Sequence[Sequence] = (), b_ge: Sequence = (),
            a_eq: Sequence[Sequence] = (), b_eq: Sequence = ()) -> LpResult:
    """Minimize c.x over {x >= 0 : a_ge.x >= b_ge, a_eq.x == b_eq}, exactly."""
    cost = [Fraction(v) for v in c]
    n = len(cost)
    ge = _frac_rows(a_ge)
    eq = _frac_rows(a_eq)
    rhs = [Fraction(v) for v in b_ge] + [Fraction(v) for v in b_eq]
    if any(len(r) != n for r in ge + eq) or len(rhs) != len(ge) + len(eq):
        raise ValueError("inconsistent LP dimensions")

    m = len(ge) + len(eq)
    n_sur = len(ge)
    width = n + n_sur + m  # original + surplus + artificial
    tab = []
    for i, row in enumerate(ge + eq):
        sur = [Fraction(0)] * n_sur
        if i < n_sur:
            sur[i] = Fraction(-1)
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        full = row + sur + art + [rhs[i]]
        if rhs[i] < 0:
            full = [-v for v in full[:-1]] + [-rhs[i]]
            full[n + n_sur + i] = Fraction(1)  # keep the artificial at +1
        tab.append(full)
    basis = [n + n_sur + i for i in range(m)]

    # phase 1: minimize the artificial total
    c1 = [Fraction(0)] * (n + n_sur) + [Fraction(1)] * m
    obj = _objective_row(tab, basis, c1, width)
    _run_simplex(tab, obj, basis, width)
    if -obj[width] != 0:  # leftover artificial mass
        return LpResult(INFEASIBLE, None, None)

    # drive remaining artificials out of the basis, dropping null rows
    keep = []
    for i in range(len(tab)):
        if basis[i] >= n + n_sur:
            col = next((j for j in range(n + n_sur) if tab[i][j] != 0), None)
            if col is None:
                continue  # redundant constraint
            _pivot(tab, obj, basis, i, col)
        keep.append(i)
    tab = [tab[i] for i in keep]
    basis = [basis[i] for i in keep]

    # phase 2 on the original objective, artificial columns frozen out
    width2 = n + n_sur
    tab = [row[:width2] + [row[width]] for row in tab]
    obj = _objective_row(tab, basis, cost, width2)
    status = _run_simplex(tab, obj, basis, width2)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, None, None)
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][width2]
    value = sum((cv * xv for cv, xv in zip(cost, x)), Fraction(0))
    return LpResult(OPTIMAL, value, tuple(x))
