"""Hilbert functions of complete intersections and Macaulay growth bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


def comb(n: int, k: int) -> int:
    """Binomial coefficient that is zero outside Pascal's triangle."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class HilbertFn:
    """A Hilbert function tabulated from degree 0 upward.

    When `complete` is true the function is zero beyond the table (the
    artinian case); otherwise indexing past the table is an error.
    """

    values: tuple[int, ...]
    complete: bool = True

    def __call__(self, t: int) -> int:
        if t < 0:
            return 0
        if t < len(self.values):
            return self.values[t]
        if self.complete:
            return 0
        raise IndexError(f"Hilbert function only tabulated through degree {len(self.values) - 1}")

    def __len__(self) -> int:
        return len(self.values)

    @property
    def socle_degree(self) -> int:
        """Largest degree with a nonzero value."""
        for t in range(len(self.values) - 1, -1, -1):
            if self.values[t]:
                return t
        return -1

    def total(self) -> int:
        return sum(self.values)


def ci_hilbert(
    degrees: Sequence[int],
    nvars: int | None = None,
    through: int | None = None,
) -> HilbertFn:
    """Hilbert function of a complete intersection quotient.

    `degrees` are the generator degrees of a regular sequence in a polynomial
    ring with `nvars` variables (default: one variable per generator, the
    artinian case).  The value at t is the inclusion-exclusion sum over
    subsets S of the degrees of (-1)^|S| * C(t - sum(S) + nvars - 1, nvars - 1).

    For the artinian case the table stops at the socle degree
    sum(d_i - 1); otherwise `through` must say how far to tabulate.
    """
    degrees = tuple(int(d) for d in degrees)
    if any(d < 1 for d in degrees):
        raise ValueError("generator degrees must be positive")
    if nvars is None:
        nvars = len(degrees)
    if len(degrees) > nvars:
        raise ValueError("not a complete intersection profile")
    artinian = len(degrees) == nvars
    if through is None:
        if not artinian:
            raise ValueError("a non-artinian table needs an explicit `through` degree")
        through = sum(d - 1 for d in degrees)

    # signed contributions of each subset of the degrees
    sign_sums: list[tuple[int, int]] = [(1, 0)]
    for d in degrees:
        sign_sums += [(-sign, shift + d) for sign, shift in sign_sums]

    values = tuple(
        sum(sign * comb(t - shift + nvars - 1, nvars - 1) for sign, shift in sign_sums)
        for t in range(through + 1)
    )
    return HilbertFn(values, complete=artinian)


def curve_ideal_hilbert(d: int, t: int) -> int:
    """dim of the degree-t piece of the ideal of a degree-2d^2 space curve.

    The curve is the union of two general complete intersection curves of
    type (d, d) in projective three-space; its ideal is the intersection
    (f1, f2) & (f3, f4) for general degree-d forms, giving

        4*C(t-2d+3, 3) - 4*C(t-3d+3, 3) + C(t-4d+3, 3)

    with binomials that vanish outside Pascal's triangle.
    """
    if d < 2:
        raise ValueError("need degree at least 2")
    return (
        4 * comb(t - 2 * d + 3, 3)
        - 4 * comb(t - 3 * d + 3, 3)
        + comb(t - 4 * d + 3, 3)
    )


def macaulay_growth(h: int, t: int) -> int:
    """Largest value allowed in degree t+1 when degree t has value h.

    Uses the greedy binomial expansion of h in degree t; growth of 0 is 0.
    """
    if h < 0 or t < 1:
        raise ValueError("need h >= 0 and t >= 1")
    if h == 0:
        return 0
    rest = h
    top = t
    out = 0
    while rest > 0 and top >= 1:
        # largest a with C(a, top) <= rest
        a = top
        while comb(a + 1, top) <= rest:
            a += 1
        rest -= comb(a, top)
        out += comb(a + 1, top + 1)
        top -= 1
    return out + rest


def is_o_sequence(h: Sequence[int], max_embdim: int | None = None) -> bool:
    """Whether h is the Hilbert function of some standard graded algebra.

    Checks h(0) = 1, nonnegativity, and Macaulay growth from every degree
    t >= 1 to the next.  `max_embdim` additionally bounds h(1).
    """
    h = tuple(int(v) for v in h)
    if not h or h[0] != 1:
        return False
    if any(v < 0 for v in h):
        return False
    if len(h) > 1 and max_embdim is not None and h[1] > max_embdim:
        return False
    for t in range(1, len(h) - 1):
        if h[t] == 0 and h[t + 1] > 0:
            return False
        if h[t] > 0 and h[t + 1] > macaulay_growth(h[t], t):
            return False
    return True
