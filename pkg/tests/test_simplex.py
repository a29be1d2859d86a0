"""Exact-rational simplex spot checks and a basis-enumeration cross-check."""

import random
from fractions import Fraction

import pytest

import oracles
from cliquedim.errors import InfeasibleModelError
from cliquedim.simplex import simplex_max, solve_packing_lp

F = Fraction


def test_two_variable_box():
    value, x, y = simplex_max([F(1), F(1)], [[F(1), F(0)], [F(0), F(1)]], [F(1), F(1)])
    assert value == 2
    assert x == [F(1), F(1)]
    assert y == [F(1), F(1)]


def test_scaled_single_constraint():
    value, x, y = simplex_max([F(3)], [[F(1)]], [F(5)])
    assert value == 15
    assert x == [F(5)]


def test_fractional_optimum_stays_exact():
    # max x1+x2+x3 s.t. pairwise sums <= 1: optimum 3/2 at (1/2,1/2,1/2)
    rows = [
        [F(1), F(1), F(0)],
        [F(0), F(1), F(1)],
        [F(1), F(0), F(1)],
    ]
    value, x, y = simplex_max([F(1)] * 3, rows, [F(1)] * 3)
    assert value == F(3, 2)
    assert x == [F(1, 2)] * 3


def test_zero_objective():
    value, x, _ = simplex_max([F(0), F(0)], [[F(1), F(1)]], [F(1)])
    assert value == 0


def test_negative_rhs_rejected():
    with pytest.raises(InfeasibleModelError):
        simplex_max([F(1)], [[F(1)]], [F(-1)])


def test_unbounded_detected():
    with pytest.raises(InfeasibleModelError):
        simplex_max([F(1), F(1)], [[F(1), F(0)]], [F(1)])


def test_degenerate_ties_terminate():
    # many constraints active at the origin-adjacent corner
    rows = [
        [F(1), F(0)],
        [F(1), F(0)],
        [F(1), F(1)],
        [F(0), F(1)],
    ]
    value, x, y = simplex_max([F(2), F(1)], rows, [F(1), F(1), F(1), F(1)])
    assert value == 2
    assert sum(r[0] * x[0] + r[1] * x[1] for r in rows) <= 4


def test_dual_is_feasible():
    rows = [
        [F(1), F(1), F(0), F(1)],
        [F(0), F(1), F(1), F(0)],
        [F(1), F(0), F(1), F(1)],
    ]
    c = [F(1)] * 4
    value, x, y = simplex_max(c, rows, [F(1)] * 3)
    for j in range(4):
        assert sum(rows[i][j] * y[i] for i in range(3)) >= c[j]
    assert sum(y) == value  # strong duality with all-ones rhs


def test_packing_helper_shapes():
    value, primal, dual = solve_packing_lp(3, [0b011, 0b110, 0b101])
    assert value == F(3, 2)
    assert len(primal) == 3 and len(dual) == 3


def test_packing_against_basis_enumeration():
    rng = random.Random(20240817)
    for _ in range(10):
        n = rng.randrange(3, 9)
        c = rng.randrange(2, 5)
        masks = []
        for _ in range(c):
            masks.append(rng.randrange(1, 1 << n))
        covered = 0
        for vm in masks:
            covered |= vm
        missing = ((1 << n) - 1) & ~covered
        if missing:
            masks.append(missing)  # keep the region bounded
        value, primal, dual = solve_packing_lp(n, masks)
        assert value == oracles.bfs_packing_value(n, masks)
        # primal feasibility, exact
        for vm in masks:
            assert sum(primal[j] for j in range(n) if (vm >> j) & 1) <= 1
        # dual covering feasibility, exact
        for j in range(n):
            assert sum(dual[i] for i, vm in enumerate(masks) if (vm >> j) & 1) >= 1
