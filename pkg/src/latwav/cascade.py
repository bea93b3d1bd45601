"""Cascade approximation of the scaling function on sparse dyadic grids.

A level-K grid assigns a value to each integer cell j, meaning the function
is constant on A^-K(j + [0,1)^d); the cell volume is 2^-K because |det A| = 2.
One cascade step applies f -> sqrt(2) * sum_n s_n f(A. - n) exactly on these
piecewise-constant functions: the new value at cell j is
sqrt(2) * sum_n s_n * old(j - A^K n).

Cell indices grow like A^K and are kept as exact Python integers.  Because
the level-(K+1) cells are not nested in the level-K cells for a skew matrix,
the cross-level L2 difference resamples the coarser grid at the centers of
the finer cells; it is a convergence diagnostic, not a norm identity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import product

from .config import DEFAULT_CELL_BUDGET
from .errors import LevelBudgetExceededError
from .intlat import DilationMatrix, LatticePoint
from .transfer import Coefficient, Filter

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CascadeGrid:
    """Sparse piecewise-constant approximation at refinement level ``level``."""

    level: int
    matrix: DilationMatrix
    cells: dict[LatticePoint, Coefficient]

    @property
    def cell_volume(self) -> float:
        return 2.0 ** (-self.level)

    def integral(self) -> Coefficient:
        total = 0.0
        for value in self.cells.values():
            total = total + value
        return total * self.cell_volume


def initial_grid(matrix: DilationMatrix) -> CascadeGrid:
    """The indicator of the unit cube: value 1 on cell 0 at level 0."""
    origin = (0,) * matrix.dim
    return CascadeGrid(level=0, matrix=matrix, cells={origin: 1.0})


def cascade_step(grid: CascadeGrid, filt: Filter,
                 cell_budget: int = DEFAULT_CELL_BUDGET) -> CascadeGrid:
    """One application of the two-scale operator; level K -> K + 1."""
    if filt.matrix.A != grid.matrix.A:
        raise ValueError("filter and grid use different dilation matrices")
    a_pow = grid.matrix.A.power(grid.level)
    taps = [
        (a_pow.vec(n), SQRT2 * s) for n, s in sorted(filt.coeffs.items())
    ]
    new_cells: dict[LatticePoint, Coefficient] = {}
    for cell, value in grid.cells.items():
        for offset, weight in taps:
            target = tuple(c + o for c, o in zip(cell, offset))
            prev = new_cells.get(target)
            contrib = weight * value
            new_cells[target] = contrib if prev is None else prev + contrib
    if len(new_cells) > cell_budget:
        raise LevelBudgetExceededError(
            f"level {grid.level + 1} needs {len(new_cells)} cells, budget is {cell_budget}"
        )
    return CascadeGrid(level=grid.level + 1, matrix=grid.matrix, cells=new_cells)


def _parent_cell(adj_rows, det2: int, j: LatticePoint) -> LatticePoint:
    # Level-K cell containing the center of level-(K+1) cell j:
    # floor(A^-1 (j + 1/2)) computed as floor(adj(A) (2j+1) / (2 det)).
    doubled = tuple(2 * c + 1 for c in j)
    return tuple(
        sum(a * b for a, b in zip(row, doubled)) // det2 for row in adj_rows
    )


def _parent_maps(matrix: DilationMatrix):
    det = matrix.A.det()
    sign = 1 if det > 0 else -1
    adj_rows = tuple(
        tuple(sign * x for x in row) for row in matrix.A.adjugate().rows
    )
    return adj_rows, 2 * abs(det)


def level_difference(coarse: CascadeGrid, fine: CascadeGrid) -> float:
    """Sampled L2 distance between consecutive levels.

    The coarse function is evaluated at fine-cell centers; the sum runs over
    every fine cell where either function is nonzero.
    """
    if fine.level != coarse.level + 1:
        raise ValueError("grids must be consecutive levels")
    matrix = fine.matrix
    adj_rows, det2 = _parent_maps(matrix)
    d = matrix.dim

    compare = set(fine.cells)
    # Fine cells whose center lands in a populated coarse cell: scan the
    # integer bounding box of each coarse cell's image parallelepiped.
    a_rows = matrix.A.rows
    corners = list(product((0, 1), repeat=d))
    for i in coarse.cells:
        images = [
            tuple(sum(r * (ci + cc) for r, ci, cc in zip(row, i, corner)) for row in a_rows)
            for corner in corners
        ]
        lo = [min(im[t] for im in images) - 1 for t in range(d)]
        hi = [max(im[t] for im in images) + 1 for t in range(d)]
        for j in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
            if _parent_cell(adj_rows, det2, j) == i:
                compare.add(j)

    acc = 0.0
    for j in sorted(compare):
        vf = fine.cells.get(j, 0.0)
        vc = coarse.cells.get(_parent_cell(adj_rows, det2, j), 0.0)
        acc += abs(vf - vc) ** 2
    return math.sqrt(acc * fine.cell_volume)


def run_cascade(filt: Filter, max_level: int = 12, tol: float = 0.0,
                cell_budget: int = DEFAULT_CELL_BUDGET,
                residual_warn_tolerance: float = 1e-10,
                ) -> tuple[CascadeGrid, list[float]]:
    """Iterate the cascade from the unit-cube indicator.

    Returns the final grid and the per-step sampled L2 differences.  Stops
    early once a difference drops below ``tol`` (if positive).  Warns when
    the filter does not solve its system: the iteration is then not known to
    converge.
    """
    from .verify import lawton_residuals  # local import; verify imports transfer

    report = lawton_residuals(filt)
    if report.max_residual > residual_warn_tolerance:
        warnings.warn(
            f"filter residual {report.max_residual:.3e} exceeds "
            f"{residual_warn_tolerance:.1e}; cascade convergence is not guaranteed",
            stacklevel=2,
        )
    grid = initial_grid(filt.matrix)
    diffs: list[float] = []
    for _ in range(max_level):
        nxt = cascade_step(grid, filt, cell_budget)
        diffs.append(level_difference(grid, nxt))
        grid = nxt
        if tol > 0.0 and diffs[-1] < tol:
            break
    return grid, diffs


def translate_gram(grid: CascadeGrid,
                   window: list[LatticePoint]) -> dict[LatticePoint, Coefficient]:
    """Inner products of the grid function with its integer translates.

    G(m) = 2^-K sum_j v(j) conj(v(j - A^K m)), the exact integral of the
    piecewise-constant function against its translate by m.
    """
    a_pow = grid.matrix.A.power(grid.level)
    vol = grid.cell_volume
    out: dict[LatticePoint, Coefficient] = {}
    for m in window:
        offset = a_pow.vec(tuple(m))
        acc = 0.0
        for j, value in sorted(grid.cells.items()):
            other = grid.cells.get(tuple(c - o for c, o in zip(j, offset)))
            if other is not None:
                acc = acc + value * other.conjugate()
        out[tuple(m)] = acc * vol
    return out


def support_bounding_box(filt: Filter, tol: float = 1e-9,
                         max_iter: int = 500) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Axis-aligned box certified to contain the limit function's support.

    The support of the limit is the attractor sum_{j>=1} A^-j * support, so
    its bounding box is the sum of the per-term interval boxes of
    A^-j * hull(support).  Terms are accumulated until they stabilize below
    ``tol`` (they shrink geometrically since A is expansive); the result is
    padded by one unit on each side.  Interval iteration of the fixed-point
    map itself is not used: taking a bounding box at every step inflates the
    image of a skew matrix and need not converge.
    """
    d = filt.dim
    det = filt.matrix.A.det()
    ainv = [[x / det for x in row] for row in filt.matrix.A.adjugate().rows]
    pts = list(filt.coeffs)
    s_lo = [float(min(p[j] for p in pts)) for j in range(d)]
    s_hi = [float(max(p[j] for p in pts)) for j in range(d)]

    lo = [0.0] * d
    hi = [0.0] * d
    power = [[float(i == j) for j in range(d)] for i in range(d)]
    for _ in range(max_iter):
        power = [
            [sum(ainv[i][t] * power[t][j] for t in range(d)) for j in range(d)]
            for i in range(d)
        ]
        term = 0.0
        for i in range(d):
            a = sum(min(r * l, r * h) for r, l, h in zip(power[i], s_lo, s_hi))
            b = sum(max(r * l, r * h) for r, l, h in zip(power[i], s_lo, s_hi))
            lo[i] += a
            hi[i] += b
            term = max(term, abs(a), abs(b))
        if term < tol:
            break
    return tuple(x - 1.0 for x in lo), tuple(x + 1.0 for x in hi)
