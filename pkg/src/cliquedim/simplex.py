"""Exact primal simplex over Fractions with Bland's anti-cycling rule.

Solves   max c.x  s.t.  A x <= b,  x >= 0   with b >= 0, so the all-slack
basis is feasible and no phase-1 is needed.  Everything is exact rational
arithmetic; the returned dual vector is read off the final objective row, and
strong duality (c.x* == b.y*) is asserted before returning.

The packing LPs this package builds are always bounded (every variable
appears in at least one constraint with coefficient 1 and rhs 1), so an
unbounded ray signals a construction bug and raises InfeasibleModelError.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InfeasibleModelError

ZERO = Fraction(0)
ONE = Fraction(1)


def simplex_max(c, rows, b):
    """max c.x s.t. rows[i].x <= b[i], x >= 0.  Returns (value, x, y) exact.

    `rows` is a dense list of coefficient lists.  Requires b[i] >= 0.
    """
    m = len(rows)
    n = len(c)
    for bi in b:
        if bi < 0:
            raise InfeasibleModelError("rhs must be nonnegative for the slack basis")
    width = n + m + 1
    tab = []
    for i in range(m):
        row = [Fraction(v) for v in rows[i]] + [ZERO] * m + [Fraction(b[i])]
        row[n + i] = ONE
        tab.append(row)
    obj = [Fraction(v) for v in c] + [ZERO] * (m + 1)
    basis = [n + i for i in range(m)]

    while True:
        enter = -1
        for j in range(width - 1):
            if obj[j] > 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_ratio = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            raise InfeasibleModelError("LP is unbounded")
        piv = tab[leave]
        factor = piv[enter]
        if factor != 1:
            tab[leave] = piv = [v / factor for v in piv]
        for i in range(m):
            if i != leave:
                f = tab[i][enter]
                if f:
                    row = tab[i]
                    tab[i] = [row[j] - f * piv[j] for j in range(width)]
        f = obj[enter]
        if f:
            obj = [obj[j] - f * piv[j] for j in range(width)]
        basis[leave] = enter

    x = [ZERO] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tab[i][-1]
    y = [-obj[n + i] for i in range(m)]
    value = -obj[-1]
    assert all(v >= 0 for v in x) and all(v >= 0 for v in y)
    assert sum(ci * xi for ci, xi in zip(c, x)) == value
    assert sum(bi * yi for bi, yi in zip(b, y)) == value, "strong duality broke"
    return value, x, y


def solve_packing_lp(n_vars: int, row_masks):
    """max sum(x) s.t. sum_{j in mask} x_j <= 1 per mask, x >= 0.

    Returns (value, primal, dual) with dual parallel to row_masks.
    """
    c = [ONE] * n_vars
    rows = []
    for mask in row_masks:
        rows.append([ONE if (mask >> j) & 1 else ZERO for j in range(n_vars)])
    b = [ONE] * len(row_masks)
    return simplex_max(c, rows, b)
