"""Combinatorics of h-vectors of point sets in the projective plane.

Everything here is exact integer arithmetic: Davis-style decompositions,
pattern filters on first-difference Hilbert functions, the see-saw
completion, minimal two-column Betti tables, and the enumerator of
candidate section h-vectors for an equigenerated complete intersection.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .hilbert import macaulay_growth

HSeq = "HVector | Sequence[int]"


class HVector:
    """A finite h-vector: nonnegative integers indexed from degree 0.

    Canonical form trims trailing zeros; indexing past the end gives 0.
    """

    __slots__ = ("values",)

    def __init__(self, values: Iterable[int]):
        vals = [int(v) for v in values]
        if any(v < 0 for v in vals):
            raise ValueError("h-vector entries must be nonnegative")
        while vals and vals[-1] == 0:
            vals.pop()
        self.values: tuple[int, ...] = tuple(vals)

    def __getitem__(self, t: int) -> int:
        if 0 <= t < len(self.values):
            return self.values[t]
        return 0

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, HVector):
            return self.values == other.values
        if isinstance(other, (tuple, list)):
            return self == HVector(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.values)

    def __repr__(self) -> str:
        return f"HVector({self.values!r})"

    @property
    def top_degree(self) -> int:
        """Largest degree with a nonzero entry (-1 for the zero vector)."""
        return len(self.values) - 1

    def total(self) -> int:
        return sum(self.values)

    def is_plane_bounded(self) -> bool:
        """h(t) <= t+1 everywhere, as for a quotient of a 2-variable ring."""
        return all(v <= t + 1 for t, v in enumerate(self.values))


def _coerce(h: "HVector | Sequence[int]") -> HVector:
    return h if isinstance(h, HVector) else HVector(h)


class BettiTable2:
    """Graded Betti data of a codimension-two ideal in two columns.

    `gens` maps generator degrees to multiplicities, `syz` maps first-syzygy
    degrees to multiplicities.  Zero multiplicities are dropped on
    construction, so equal tables compare equal.
    """

    __slots__ = ("gens", "syz")

    def __init__(self, gens: Mapping[int, int], syz: Mapping[int, int]):
        self.gens = self._clean(gens)
        self.syz = self._clean(syz)

    @staticmethod
    def _clean(table: Mapping[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for deg in sorted(table):
            mult = int(table[deg])
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} in degree {deg}")
            if mult:
                out[int(deg)] = mult
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiTable2):
            return NotImplemented
        return self.gens == other.gens and self.syz == other.syz

    def __hash__(self) -> int:
        return hash((tuple(self.gens.items()), tuple(self.syz.items())))

    def __repr__(self) -> str:
        return f"BettiTable2(gens={self.gens!r}, syz={self.syz!r})"

    def socle(self) -> dict[int, int]:
        """Socle degrees of the artinian reduction: syzygy degrees minus 2."""
        return {m - 2: c for m, c in self.syz.items()}

    def balanced_pairs(self) -> dict[int, int]:
        """Degrees carrying both a generator and a syzygy, with the number of
        matched pairs.  These are candidates for cancellation in a minimal
        resolution; deciding whether they actually cancel is not numeric."""
        both = sorted(self.gens.keys() & self.syz.keys())
        return {deg: min(self.gens[deg], self.syz[deg]) for deg in both}

    def as_json_dict(self) -> dict[str, dict[str, int]]:
        return {
            "gens": {str(n): c for n, c in self.gens.items()},
            "syz": {str(m): c for m, c in self.syz.items()},
        }


# ---------------------------------------------------------------------------
# single-sequence predicates


def kernel_start(h: "HVector | Sequence[int]") -> int:
    """Least degree t with h(t) < t+1 (where the sequence leaves the
    polynomial-ring diagonal 1, 2, 3, ...)."""
    h = _coerce(h)
    for t, v in enumerate(h.values):
        if v < t + 1:
            return t
    raise ValueError("full polynomial diagonal (no such t within range)")


def _decreasing_type_violation(h: HVector) -> int | None:
    # a flat h(t-1) = h(t) = s is only allowed where it leaves the diagonal,
    # i.e. with s = t; any flat strictly below that is a violation
    for t in range(1, len(h.values)):
        if h.values[t - 1] == h.values[t] > 0 and h.values[t] < t:
            return t
    # once the values strictly decrease they must keep strictly decreasing
    decreased = False
    for t in range(1, len(h.values) + 1):
        prev, cur = h.values[t - 1], h[t]
        if decreased and prev > 0 and cur >= prev:
            return t
        if cur < prev:
            decreased = True
    return None


def is_decreasing_type(h: "HVector | Sequence[int]") -> bool:
    """Whether h decreases the way a plane section of a nice curve must:
    no flats strictly below the diagonal, and strictly decreasing to zero
    once the first strict decrease has happened."""
    return _decreasing_type_violation(_coerce(h)) is None


def _rule_out_anchor(h: HVector) -> int | None:
    # pattern: h(i) = i+1 for all i <= t-1, h(t) = t, h(t+1) in {t, t-1};
    # at most one t can match because a match at t breaks every longer
    # diagonal prefix
    for t in range(1, len(h.values) + 1):
        if any(h[i] != i + 1 for i in range(t)):
            break
        if h[t] == t and h[t + 1] in (t, t - 1):
            return t
    return None


def rule_out(h: "HVector | Sequence[int]") -> bool:
    """True when h matches the excluded near-diagonal pattern: a diagonal
    prefix, a single deficit of one, then a drop of at most one more.

    The detection is context-free; the enumerator additionally restricts the
    window in which the pattern may fire.
    """
    return _rule_out_anchor(_coerce(h)) is not None


# ---------------------------------------------------------------------------
# see-saw completion


def _seesaw_tail(front: Sequence[int], d: int) -> list[int]:
    return [(2 * d - m) - front[2 * d - 1 - m] for m in range(1, 2 * d)]


def seesaw_complete(front: "HVector | Sequence[int]", d: int) -> HVector:
    """Complete the first differences of a section Hilbert function.

    `front` holds the values at degrees 0..2d-1 and must have value d at
    degree 2d-1.  The remaining degrees through 4d-2 are forced by the
    reflection identity h(2d-1-m) + h(2d-1+m) = 2d-m; the completed vector
    always sums to 2d^2.
    """
    vals = list(_coerce(front).values)
    vals += [0] * (2 * d - len(vals))
    if len(vals) != 2 * d:
        raise ValueError(f"front must cover degrees 0..{2 * d - 1}")
    if vals[2 * d - 1] != d:
        raise ValueError(f"front must have value {d} at degree {2 * d - 1}")
    tail = _seesaw_tail(vals, d)
    if any(v < 0 for v in tail):
        raise ValueError("see-saw completion has a negative entry")
    return HVector(vals + tail)


def generic_hvector(d: int) -> HVector:
    """Section h-vector of a generic equigenerated instance:
    (1, 2, ..., 2d-1, d)."""
    if d < 2:
        raise ValueError("need d >= 2")
    return HVector(list(range(1, 2 * d)) + [d])


def fail_by_one_hvector(d: int) -> HVector:
    """The section h-vector forced by a one-dimensional cokernel at the
    decisive degree: (1, 2, ..., 2d-2, 2d-2, d, 1)."""
    if d < 2:
        raise ValueError("need d >= 2")
    front = list(range(1, 2 * d - 1)) + [2 * d - 2, d]
    return seesaw_complete(front, d)


# ---------------------------------------------------------------------------
# Davis decomposition


def davis_split(
    h: "HVector | Sequence[int]", t: int
) -> tuple[HVector, HVector, int]:
    """Split a plane-points h-vector at a flat h(t-1) = h(t) = c.

    The flat forces a curve of degree c through the points; `g` is the
    h-vector of the points on that curve, `f` of the residual points, and
    the returned degree is c.  Cardinality is conserved: sum(g) + sum(f)
    equals sum(h).
    """
    h = _coerce(h)
    if t < 1 or t > h.top_degree or h[t] == 0 or h[t - 1] != h[t]:
        raise ValueError("no Davis flat at t")
    c = h[t]
    g = HVector(min(v, c) for v in h.values)
    m = (t - 2) - c
    f = HVector(max(h[c + i] - c, 0) for i in range(m + 1)) if m >= 0 else HVector(())
    return g, f, c


# ---------------------------------------------------------------------------
# minimal Betti tables from h-vectors


def min_betti_from_h(h: "HVector | Sequence[int]") -> BettiTable2:
    """The minimal-consistent two-column Betti table with the given
    artinian-reduction h-vector.

    With j(t) = (t+1) - h(t) (the ideal's dimension in two variables) and
    D(t) its second difference, degree t carries max(D(t), 0) generators and
    max(-D(t), 0) syzygies.  Any realizable table differs from this one by
    balanced (generator, syzygy) pairs in equal degrees.
    """
    h = _coerce(h)
    if h[0] != 1:
        raise ValueError("h-vector must start with 1")
    if not h.is_plane_bounded():
        raise ValueError("not a plane-points h-vector (some h(t) > t+1)")

    def j(t: int) -> int:
        return (t + 1) - h[t] if t >= 0 else 0

    gens: dict[int, int] = {}
    syz: dict[int, int] = {}
    for t in range(1, h.top_degree + 3):
        d2 = j(t) - 2 * j(t - 1) + j(t - 2)
        if d2 > 0:
            gens[t] = d2
        elif d2 < 0:
            syz[t] = -d2
    return BettiTable2(gens, syz)


def apply_socle_lemma(h: "HVector | Sequence[int]") -> BettiTable2:
    """Lower-bound Betti table after forcing an early socle element.

    When the minimal table's earliest socle degree (earliest syzygy degree
    minus 2) comes strictly later than kernel_start(h), the table cannot be
    right for a section of a failing multiplication map: the kernel module
    contributes a socle element already in degree kernel_start(h).  One
    balanced pair is added, with the syzygy at kernel_start(h) + 2, the
    latest degree compatible with that bound.
    """
    h = _coerce(h)
    table = min_betti_from_h(h)
    ks = kernel_start(h)
    if table.syz and min(table.syz) - 2 > ks:
        gens = dict(table.gens)
        syz = dict(table.syz)
        gens[ks + 2] = gens.get(ks + 2, 0) + 1
        syz[ks + 2] = syz.get(ks + 2, 0) + 1
        return BettiTable2(gens, syz)
    return table


# ---------------------------------------------------------------------------
# candidate enumeration


@dataclass(frozen=True)
class CandidateTrace:
    """One enumerated section h-vector with the filters it failed."""

    hvector: HVector
    accepted: bool
    rejections: tuple[tuple[str, int], ...]


def _first_o_violation(h: HVector) -> int | None:
    if h[0] != 1:
        return 0
    for t in range(1, len(h.values)):
        prev, cur = h.values[t - 1], h.values[t]
        if prev == 0 and cur > 0:
            return t
        if t >= 2 and prev > 0 and cur > macaulay_growth(prev, t - 1):
            return t
    return None


def _evaluate_candidate(front: list[int], d: int) -> CandidateTrace:
    rejections: list[tuple[str, int]] = []
    tail = _seesaw_tail(front, d)
    for m, v in enumerate(tail, start=1):
        if v < 0:
            rejections.append(("seesaw_tail", 2 * d - 1 + m))
            break
    full = front + [max(v, 0) for v in tail]
    h = HVector(full)
    for t, v in enumerate(h.values):
        if v > t + 1:
            rejections.append(("plane_bound", t))
            break
    bad = _first_o_violation(h)
    if bad is not None:
        rejections.append(("o_sequence", bad))
    bad = _decreasing_type_violation(h)
    if bad is not None:
        rejections.append(("decreasing_type", bad))
    anchor = _rule_out_anchor(h)
    if anchor is not None and anchor + 1 <= 2 * d - 1:
        rejections.append(("rule_out", anchor))
    return CandidateTrace(h, not rejections, tuple(rejections))


def _mid_sequences(d: int, s0: int) -> Iterator[list[int]]:
    """Deficit-range values for degrees s0..2d-2.

    Real branches are nonincreasing with values in [d, s0] (anything that
    dips below d can never climb back to d at degree 2d-1, by the Macaulay
    bound).  For each first dip below d one flat representative is emitted
    so the enumeration records why that branch dies.
    """
    length = (2 * d - 1) - s0

    def extend(prefix: list[int], bound: int) -> Iterator[list[int]]:
        if len(prefix) == length:
            yield list(prefix)
            return
        for v in range(min(bound, s0), d - 1, -1):
            yield from extend(prefix + [v], v)
        for v in range(min(bound, d - 1), -1, -1):
            yield prefix + [v] * (length - len(prefix))

    yield from extend([], s0)


def enumerate_candidates(d: int) -> list[CandidateTrace]:
    """All candidate section h-vectors for four degree-d forms, with traces.

    Candidates follow the diagonal 1, 2, 3, ... up to a varying
    start-of-deficit, take value d at degree 2d-1, and are completed by the
    see-saw identity.  Every candidate is scored against the full filter
    battery (plane bound, Macaulay growth, decreasing type, the
    near-diagonal exclusion pattern inside its window, see-saw
    nonnegativity); a candidate is accepted when no filter fires.  The
    returned list is sorted lexicographically by sequence.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    diag = list(range(1, 2 * d))
    traces = []
    for s0 in range(d, 2 * d):
        for mid in _mid_sequences(d, s0):
            front = diag[:s0] + mid + [d]
            traces.append(_evaluate_candidate(front, d))
    traces.sort(key=lambda tr: tr.hvector.values)
    return traces


def plane_hvectors(max_length: int) -> Iterator[HVector]:
    """Every h-vector of a point set in the projective plane with at most
    max_length entries: h(0) = 1, positive values, h(1) <= 2, and Macaulay
    growth respected from each degree to the next."""
    if max_length < 1:
        return

    def extend(prefix: list[int]) -> Iterator[HVector]:
        yield HVector(prefix)
        if len(prefix) == max_length:
            return
        t = len(prefix) - 1
        top = 2 if t == 0 else macaulay_growth(prefix[-1], t)
        for v in range(1, top + 1):
            yield from extend(prefix + [v])

    yield from extend([1])
