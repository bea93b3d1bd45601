"""Finite supports, generated equations, and reduced Lawton systems.

A finite support L and a dilation matrix A determine the reduced system

    sum_{n in L} h_n * conj(h_{n+k}) = delta_{0,k}   for generators k,
    sum_{n in L} h_n = sqrt(2),

where the generators k range over (L - L) intersected with A*Z^d.  A
generator and its negation produce the same equation (up to conjugation), so
the canonical index set keeps the representative whose adapted-chart radix
value is nonnegative; that convention makes index sets of window supports
coincide with the encoding module's index windows without translation.

Everything is in standard coordinates; the adapted chart is used internally
for sign canonicalization and for the deterministic summation order (pairs
are ordered by the flattening order of the shift-normalized adapted support,
which is exactly the order their images get in a one-dimensional transfer).
"""

from __future__ import annotations

from dataclasses import dataclass

from .encode import (
    EncodingParams,
    flatten_order_key,
    radix_encode,
    window_exponent_for_extent,
)
from .errors import DimensionMismatchError, NotInLatticeError, NotSubsetError
from .intlat import DilationMatrix, LatticePoint, as_point, in_dilated_lattice, to_adapted


@dataclass(frozen=True)
class SupportSet:
    """Finite non-empty set of lattice points of one dimension."""

    points: frozenset[LatticePoint]
    dim: int

    @classmethod
    def from_points(cls, pts) -> "SupportSet":
        points = frozenset(as_point(p) for p in pts)
        if not points:
            raise ValueError("support must be non-empty")
        dims = {len(p) for p in points}
        if len(dims) != 1:
            raise DimensionMismatchError(f"mixed dimensions in support: {sorted(dims)}")
        return cls(points=points, dim=dims.pop())

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points

    def __len__(self) -> int:
        return len(self.points)

    def issubset(self, other: "SupportSet") -> bool:
        return self.points <= other.points


@dataclass(frozen=True)
class Equation:
    """One generated equation: ordered pairs (n, n+k) with both in the support."""

    k: LatticePoint
    pairs: tuple[tuple[LatticePoint, LatticePoint], ...]
    rhs: int

    def pair_set(self) -> frozenset:
        return frozenset(self.pairs)


@dataclass(frozen=True)
class ReducedSystem:
    """A reduced Lawton system with its canonical index set.

    ``support_order`` fixes the deterministic summation order used by the
    residual evaluator; ``window_exponent`` is the smallest N whose centered
    window contains all support differences in the adapted chart.
    """

    support: SupportSet
    matrix: DilationMatrix
    index_set: tuple[LatticePoint, ...]
    equations: dict[LatticePoint, Equation]
    window_exponent: int
    support_order: tuple[LatticePoint, ...]


def _adapted_frame(support: SupportSet, dil: DilationMatrix):
    """Adapted coordinates, their coordinatewise minimum, and the window
    exponent of the support differences."""
    adapted = {p: to_adapted(dil, p) for p in support.points}
    coords = list(adapted.values())
    c_min = tuple(min(c[j] for c in coords) for j in range(support.dim))
    extent = max(
        (c[j] - c_min[j] for c in coords for j in range(support.dim)), default=0
    )
    return adapted, c_min, window_exponent_for_extent(extent)


def _ordered_points(support: SupportSet, adapted, c_min) -> tuple[LatticePoint, ...]:
    def key(p):
        z = tuple(a - b for a, b in zip(adapted[p], c_min))
        return flatten_order_key(z)

    return tuple(sorted(support.points, key=key))


def _pairs_for(support: SupportSet, order, k: LatticePoint):
    shifted = [tuple(a + b for a, b in zip(n, k)) for n in order]
    return tuple((n, m) for n, m in zip(order, shifted) if m in support.points)


def generated_equation(support: SupportSet, dil: DilationMatrix,
                       k: LatticePoint) -> Equation | None:
    """The equation generated by k on this support, or None if trivial."""
    k = as_point(k)
    if len(k) != support.dim or support.dim != dil.dim:
        raise DimensionMismatchError("support, matrix and generator dimensions differ")
    if not in_dilated_lattice(dil, k):
        raise NotInLatticeError(f"generator {k} is not in A*Z^d")
    adapted, c_min, _ = _adapted_frame(support, dil)
    order = _ordered_points(support, adapted, c_min)
    pairs = _pairs_for(support, order, k)
    if not pairs:
        return None
    rhs = 1 if all(c == 0 for c in k) else 0
    return Equation(k=k, pairs=pairs, rhs=rhs)


def equations_equal_up_to_conjugation(e1: Equation, e2: Equation) -> bool:
    """Pair sets equal, or equal after transposing every pair of e2."""
    if e1.rhs != e2.rhs:
        return False
    s1, s2 = e1.pair_set(), e2.pair_set()
    return s1 == s2 or s1 == frozenset((b, a) for a, b in s2)


def build_reduced_system(support: SupportSet, dil: DilationMatrix) -> ReducedSystem:
    """Construct the reduced system with its canonical index set.

    The index set consists of one representative per generator pair {k, -k}:
    the one with nonnegative radix value in the adapted chart, listed in
    increasing radix order (so the zero generator always comes first).
    """
    if support.dim != dil.dim:
        raise DimensionMismatchError("support and matrix dimensions differ")
    adapted, c_min, n_exp = _adapted_frame(support, dil)
    order = _ordered_points(support, adapted, c_min)
    params = EncodingParams(support.dim, n_exp)

    candidates: dict[LatticePoint, int] = {}
    for a in support.points:
        ca = adapted[a]
        for b in support.points:
            cb = adapted[b]
            ck = tuple(x - y for x, y in zip(cb, ca))
            if ck[-1] % 2 != 0:
                continue
            value = radix_encode(params, ck)
            if value < 0:
                continue
            k = tuple(x - y for x, y in zip(b, a))
            candidates[k] = value

    index_set = tuple(sorted(candidates, key=candidates.__getitem__))
    equations = {}
    for k in index_set:
        pairs = _pairs_for(support, order, k)
        rhs = 1 if all(c == 0 for c in k) else 0
        equations[k] = Equation(k=k, pairs=pairs, rhs=rhs)
    return ReducedSystem(
        support=support,
        matrix=dil,
        index_set=index_set,
        equations=equations,
        window_exponent=n_exp,
        support_order=order,
    )


def restrict_index_set(parent: ReducedSystem, sub: SupportSet) -> tuple[LatticePoint, ...]:
    """The unique sub-index-set of the parent that indexes the sub-support's
    system: generators of the parent that still pair points inside ``sub``."""
    if not sub.issubset(parent.support):
        raise NotSubsetError("sub-support is not contained in the parent support")
    pts = sub.points
    kept = []
    for k in parent.index_set:
        if any(tuple(a + b for a, b in zip(n, k)) in pts for n in pts):
            kept.append(k)
    return tuple(kept)
