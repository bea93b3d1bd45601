"""Integer encodings that flatten lattice windows onto segments of Z.

All functions here operate on adapted-chart coordinates, i.e. they assume the
dilated lattice is exactly {(x, 2n)}.  Conversion from standard coordinates
happens in the transfer layer, never here.

For a window exponent N >= 1:

* ``radix_encode`` is the base-4^N positional value sum(n_j * 4^((j-1)N)).
  On the centered window (-2^N, 2^N)^d it is injective and its sign equals
  the sign of the rightmost nonzero coordinate.
* ``flatten_point`` maps (x, y) to floor(y/2)*2^((2d-3)N+2) +
  2*radix_encode(x) + (y odd), injective on the same window.
* ``encode_support`` / ``encode_index`` are flatten_point restricted to the
  support window [0, 2^N)^d and to the index window (even last coordinate,
  nonnegative radix value), with domain checks.

Dimension 1 degenerates to the identity on Z: the support window is
[0, 2^N), the index window the nonnegative even integers below 2^N, and all
encodings are the identity, so one-dimensional transfers reduce to shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DimensionTooSmallError, OutOfDomainError, WindowTooLargeError
from .intlat import LatticePoint, check_dim

DEFAULT_ENUMERATION_BUDGET = 1 << 20


@dataclass(frozen=True)
class EncodingParams:
    """Dimension and window exponent fixing one family of encodings."""

    dim: int
    window_exponent: int

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionTooSmallError("dimension must be >= 1")
        if self.window_exponent < 1:
            raise ValueError("window exponent must be >= 1")

    @property
    def window(self) -> int:
        """Half-open coordinate bound 2^N."""
        return 1 << self.window_exponent

    @property
    def base_weights(self) -> tuple[int, ...]:
        """Exact weights 4^((j-1)N), j = 1..dim."""
        n = self.window_exponent
        return tuple(1 << (2 * n * j) for j in range(self.dim))

    @property
    def row_stride(self) -> int:
        """Exact stride 2^((2d-3)N+2) separating even-coordinate rows (d >= 2)."""
        if self.dim < 2:
            raise DimensionTooSmallError("row stride is defined for dimension >= 2")
        return 1 << ((2 * self.dim - 3) * self.window_exponent + 2)


def radix_encode(params: EncodingParams, n: LatticePoint) -> int:
    """Base-4^N positional value of n; total on Z^d, injective on the window."""
    check_dim(n, params.dim)
    return sum(c * w for c, w in zip(n, params.base_weights))


def flatten_point(params: EncodingParams, p: LatticePoint) -> int:
    """Flatten p = (x, y) to an integer; requires dimension >= 2."""
    if params.dim < 2:
        raise DimensionTooSmallError("flattening requires dimension >= 2")
    check_dim(p, params.dim)
    x, y = p[:-1], p[-1]
    sub = EncodingParams(params.dim - 1, params.window_exponent)
    return (y // 2) * params.row_stride + 2 * radix_encode(sub, x) + (y & 1)


def in_support_window(params: EncodingParams, n: LatticePoint) -> bool:
    """Membership in [0, 2^N)^d."""
    check_dim(n, params.dim)
    return all(0 <= c < params.window for c in n)


def in_index_window(params: EncodingParams, k: LatticePoint) -> bool:
    """Membership in the index window: centered, even last coordinate,
    nonnegative radix value."""
    check_dim(k, params.dim)
    w = params.window
    if any(abs(c) >= w for c in k):
        return False
    if k[-1] % 2 != 0:
        return False
    return radix_encode(params, k) >= 0


def _require(ok: bool, what: str, p: LatticePoint, bound: str) -> None:
    if not ok:
        raise OutOfDomainError(f"{p} is outside the {what} window: {bound}")


def encode_support(params: EncodingParams, n: LatticePoint) -> int:
    """Flattening restricted to the support window (checked)."""
    check_dim(n, params.dim)
    for j, c in enumerate(n):
        _require(0 <= c < params.window, "support", n,
                 f"coordinate {j + 1} = {c} not in [0, {params.window - 1}]")
    if params.dim == 1:
        return n[0]
    return flatten_point(params, n)


def encode_index(params: EncodingParams, k: LatticePoint) -> int:
    """Flattening restricted to the index window (checked)."""
    check_dim(k, params.dim)
    w = params.window
    for j, c in enumerate(k):
        _require(abs(c) < w, "index", k,
                 f"coordinate {j + 1} = {c} not in [{1 - w}, {w - 1}]")
    _require(k[-1] % 2 == 0, "index", k, f"last coordinate {k[-1]} is odd")
    _require(radix_encode(params, k) >= 0, "index", k, "radix value is negative")
    if params.dim == 1:
        return k[0]
    return flatten_point(params, k)


def additivity_holds(params: EncodingParams, n: LatticePoint, k: LatticePoint) -> bool:
    """Whether flatten(n + k) == encode_support(n) + encode_index(k)."""
    sup = encode_support(params, n)
    idx = encode_index(params, k)
    total = tuple(a + b for a, b in zip(n, k))
    if params.dim == 1:
        return total[0] == sup + idx
    return flatten_point(params, total) == sup + idx


@dataclass(frozen=True)
class IndexWindow:
    """Materialized support window and index window for one parameter set."""

    params: EncodingParams
    support_points: tuple[LatticePoint, ...]
    index_points: tuple[LatticePoint, ...]


def enumerate_windows(params: EncodingParams,
                      budget: int = DEFAULT_ENUMERATION_BUDGET) -> IndexWindow:
    """Enumerate both windows; support ordered by encoding value, index by
    radix value."""
    d, w = params.dim, params.window
    size = w ** d
    if size > budget:
        raise WindowTooLargeError(
            f"support window has {size} points, budget is {budget}"
        )
    support = sorted(product(range(w), repeat=d),
                     key=lambda n: encode_support(params, n))
    index = sorted(
        (k for k in product(range(1 - w, w), repeat=d) if in_index_window(params, k)),
        key=lambda k: radix_encode(params, k),
    )
    return IndexWindow(params=params, support_points=tuple(support),
                       index_points=tuple(index))


def support_decode_table(params: EncodingParams,
                         budget: int = DEFAULT_ENUMERATION_BUDGET) -> dict[int, LatticePoint]:
    """Inverse of encode_support as a lookup table."""
    win = enumerate_windows(params, budget)
    return {encode_support(params, n): n for n in win.support_points}


def index_decode_table(params: EncodingParams,
                       budget: int = DEFAULT_ENUMERATION_BUDGET) -> dict[int, LatticePoint]:
    """Inverse of encode_index as a lookup table."""
    win = enumerate_windows(params, budget)
    return {encode_index(params, k): k for k in win.index_points}


def decode_support(params: EncodingParams, value: int) -> LatticePoint | None:
    """Inverse of encode_support, computed by radix decomposition.

    On the support window the flattening is floor(y/2)*stride + 2*sigma + (y
    odd) with 0 <= 2*sigma + 1 < stride and sigma a plain base-4^N number
    with digits below 2^N, so the value splits uniquely.  Returns None when
    the value is not the code of any window point.
    """
    d, n_exp = params.dim, params.window_exponent
    w = 1 << n_exp
    if d == 1:
        return (value,) if 0 <= value < w else None
    if value < 0:
        return None
    y_half, rest = divmod(value, params.row_stride)
    parity = rest & 1
    sigma = rest >> 1
    digits = []
    for _ in range(d - 1):
        sigma, digit = divmod(sigma, 1 << (2 * n_exp))
        if digit >= w:
            return None
        digits.append(digit)
    if sigma:
        return None
    y = 2 * y_half + parity
    if not 0 <= y < w:
        return None
    return tuple(digits) + (y,)


def decode_index(params: EncodingParams, value: int) -> LatticePoint | None:
    """Inverse of encode_index, computed by signed radix decomposition.

    The leading part 2*sigma of an index-window code can be negative, so the
    split of value = j*stride + 2*sigma is ambiguous by one stride; both
    candidates are tried and at most one decodes to window digits (the
    flattening is injective there).
    """
    d, n_exp = params.dim, params.window_exponent
    w = 1 << n_exp
    if d == 1:
        return (value,) if 0 <= value < w and value % 2 == 0 else None
    if value < 0 or value & 1:
        return None
    stride = params.row_stride
    base = 1 << (2 * n_exp)

    def signed_digits(sigma: int) -> LatticePoint | None:
        digits = []
        for _ in range(d - 1):
            sigma, digit = divmod(sigma, base)
            if digit >= base - (w - 1):
                digit -= base
                sigma += 1
            elif digit > w - 1:
                return None
            digits.append(digit)
        return tuple(digits) if sigma == 0 else None

    j0, rest = divmod(value, stride)
    for j, twice_sigma in ((j0, rest), (j0 + 1, rest - stride)):
        x = signed_digits(twice_sigma >> 1) if twice_sigma % 2 == 0 else None
        if x is None:
            continue
        k = x + (2 * j,)
        if in_index_window(params, k):
            return k
    return None


def window_exponent_for_extent(extent: int) -> int:
    """Smallest N >= 1 with extent <= 2^N - 1."""
    if extent < 0:
        raise ValueError("extent must be nonnegative")
    return max(1, int(extent).bit_length())


def flatten_order_key(p: LatticePoint):
    """Sort key reproducing the flattening order without fixing N.

    For window points the order induced by flatten_point does not depend on
    the window exponent: it compares floor(y/2) first, then the radix order
    of x (rightmost differing coordinate decides), then the parity of y.
    """
    if len(p) == 1:
        return (p[0],)
    x, y = p[:-1], p[-1]
    return (y // 2, tuple(reversed(x)), y & 1)
