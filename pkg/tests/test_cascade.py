"""Cascade iteration: fixed points, conservation laws, two-scale oracle."""

import math
import random
from fractions import Fraction

import pytest

from latwav.cascade import (
    cascade_step,
    initial_grid,
    level_difference,
    run_cascade,
    support_bounding_box,
    translate_gram,
)
from latwav.errors import LevelBudgetExceededError
from latwav.filters import (
    daubechies4_1d,
    dilation_1d,
    haar_1d,
    quincunx_daubechies4,
    quincunx_haar,
    quincunx_matrix,
)
from latwav.transfer import Filter

BUNDLED = (haar_1d, daubechies4_1d, quincunx_haar, quincunx_daubechies4)


def value_at(grid, t):
    """Exact cell lookup at a rational point (independent of the step code)."""
    a_pow = grid.matrix.A.power(grid.level)
    x = tuple(sum(r * c for r, c in zip(row, t)) for row in a_pow.rows)
    return grid.cells.get(tuple(int(c // 1) for c in x), 0.0)


def test_initial_grid():
    grid = initial_grid(quincunx_matrix())
    assert grid.level == 0
    assert grid.cells == {(0, 0): 1.0}
    assert grid.integral() == 1.0


def test_haar_fixed_point_exact():
    grid, diffs = run_cascade(haar_1d(), max_level=12)
    assert diffs == [0.0] * 12
    assert set(grid.cells.values()) == {1.0}
    assert set(grid.cells) == {(j,) for j in range(2 ** 12)}
    assert grid.integral() == 1.0


def test_quincunx_haar_indicator():
    grid, _ = run_cascade(quincunx_haar(), max_level=10)
    assert set(grid.cells.values()) == {1.0}
    assert len(grid.cells) == 2 ** 10
    assert grid.integral() == 1.0


def test_integral_conserved_every_level():
    for make in BUNDLED:
        filt = make()
        grid = initial_grid(filt.matrix)
        for _ in range(8):
            grid = cascade_step(grid, filt)
            assert abs(grid.integral() - 1.0) < 1e-9


def test_two_scale_pointwise_oracle():
    """new(t) == sqrt(2) * sum_n s_n * old(A t - n) at random rational points."""
    rnd = random.Random(13)
    for make in (daubechies4_1d, quincunx_daubechies4):
        filt = make()
        a_rows = filt.matrix.A.rows
        grid = initial_grid(filt.matrix)
        for _ in range(5):
            grid = cascade_step(grid, filt)
        nxt = cascade_step(grid, filt)
        for _ in range(100):
            t = tuple(
                Fraction(rnd.randint(-300, 700), 128) for _ in range(filt.dim)
            )
            at = tuple(sum(r * c for r, c in zip(row, t)) for row in a_rows)
            expected = math.sqrt(2.0) * sum(
                s * value_at(grid, tuple(a - c for a, c in zip(at, n)))
                for n, s in sorted(filt.coeffs.items())
            )
            assert abs(value_at(nxt, t) - expected) < 1e-12


def test_db4_convergence_and_gram():
    grid, diffs = run_cascade(daubechies4_1d(), max_level=12)
    assert diffs[-1] < 1e-3
    assert all(b < a for a, b in zip(diffs, diffs[1:]))
    gram = translate_gram(grid, [(m,) for m in range(-3, 4)])
    assert abs(gram[(0,)] - 1.0) < 1e-2
    for m in range(1, 4):
        assert abs(gram[(m,)]) < 1e-2
        assert abs(gram[(-m,)]) < 1e-2


def test_quincunx_haar_gram_exact():
    grid, _ = run_cascade(quincunx_haar(), max_level=10)
    gram = translate_gram(grid, [(0, 0), quincunx_matrix().coset_rep])
    assert gram[(0, 0)] == 1.0
    assert gram[quincunx_matrix().coset_rep] == 0.0


def test_quincunx_db4_differences_eventually_decrease():
    _, diffs = run_cascade(quincunx_daubechies4(), max_level=10)
    assert diffs[-1] < diffs[2]
    assert all(b <= a * 1.05 for a, b in zip(diffs[3:], diffs[4:]))


def test_level_difference_requires_consecutive_levels():
    filt = haar_1d()
    g0 = initial_grid(filt.matrix)
    g1 = cascade_step(g0, filt)
    g2 = cascade_step(g1, filt)
    assert level_difference(g1, g2) == 0.0
    with pytest.raises(ValueError):
        level_difference(g0, g2)


def test_cell_budget_enforced():
    with pytest.raises(LevelBudgetExceededError):
        run_cascade(daubechies4_1d(), max_level=8, cell_budget=100)


def test_matrix_mismatch_rejected():
    grid = initial_grid(quincunx_matrix())
    with pytest.raises(ValueError):
        cascade_step(grid, haar_1d())


def test_run_cascade_warns_for_non_solution():
    bad = Filter.from_coeffs(dilation_1d(), {(0,): 0.9, (1,): 0.6})
    with pytest.warns(UserWarning, match="convergence is not guaranteed"):
        run_cascade(bad, max_level=2)


def test_early_stop_on_tolerance():
    _, diffs = run_cascade(haar_1d(), max_level=12, tol=1e-6)
    assert diffs == [0.0]  # first difference is already below tol


def test_support_bounding_box_contains_cells():
    for make in BUNDLED:
        filt = make()
        lo, hi = support_bounding_box(filt)
        levels = 12
        grid = initial_grid(filt.matrix)
        det = filt.matrix.A.det()
        inv = [[x / det for x in row] for row in filt.matrix.A.adjugate().rows]
        for _ in range(levels):
            grid = cascade_step(grid, filt)
        for cell in grid.cells:
            # map the cell's low corner through A^-K
            x = [float(c) for c in cell]
            for _ in range(grid.level):
                x = [sum(r * v for r, v in zip(row, x)) for row in inv]
            for j in range(filt.dim):
                assert lo[j] - 1e-6 <= x[j] <= hi[j] + 1e-6


def test_support_bounding_box_haar():
    lo, hi = support_bounding_box(haar_1d())
    # attractor of {0,1} under /2 is [0, 1]; box pads by 1
    assert abs(lo[0] + 1.0) < 1e-6
    assert abs(hi[0] - 2.0) < 1e-6
