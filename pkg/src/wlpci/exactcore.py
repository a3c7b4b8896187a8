"""Exact linear algebra over GF(p) on graded pieces of a polynomial ring.

Monomials of a fixed degree are kept in a canonical order (descending
graded reverse lexicographic), so every matrix built here has reproducible
columns and therefore reproducible ranks.  The elimination kernel is the
compiled extension :mod:`wlpci._gfrank` when available; setting the
environment variable ``WLPCI_PURE`` forces the numpy fallback.
"""

from __future__ import annotations

import hashlib
import math
import os
import random
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

import numpy as np

from . import _gfrank_py

if os.environ.get("WLPCI_PURE"):
    _kernel = _gfrank_py
else:
    try:
        from . import _gfrank as _kernel  # type: ignore[no-redef]
    except ImportError:
        _kernel = _gfrank_py

DEFAULT_PRIME = 32003

# packed-exponent lookup works with 8 bits per variable
_MAX_VARS = 8
_MAX_DEGREE = 255

Monomial = tuple[int, ...]


def kernel_name() -> str:
    """Which elimination kernel is active: "compiled" or "python"."""
    return "python" if _kernel is _gfrank_py else "compiled"


# ---------------------------------------------------------------------------
# field plumbing


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the supported modulus range."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    """Validate a modulus; primes below 2**25 keep float64 elimination exact."""
    p = int(p)
    if not is_prime(p):
        raise ValueError(f"modulus {p} is not prime")
    if p >= 1 << 25:
        raise ValueError(f"prime {p} too large for the exact float64 kernels")
    return p


def derive_seed(*parts: object) -> int:
    """Deterministic 63-bit seed from structured parts.

    Uses sha256 rather than Python's salted str hash so streams are stable
    across processes and sessions.
    """
    blob = "\x1f".join(repr(part) for part in parts).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big") >> 1


# ---------------------------------------------------------------------------
# monomials


def grevlex_key(mono: Monomial) -> tuple[int, ...]:
    """Sort key putting equal-degree monomials in descending grevlex order."""
    return tuple(reversed(mono))


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head, *rest)


@dataclass(frozen=True)
class _Basis:
    monomials: tuple[Monomial, ...]
    index: dict[Monomial, int]
    packed: np.ndarray
    sorted_packed: np.ndarray
    sorted_to_col: np.ndarray

    def columns_of(self, packed_values: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.sorted_packed, packed_values)
        pos = np.minimum(pos, len(self.sorted_packed) - 1)
        if np.any(self.sorted_packed[pos] != packed_values):
            raise AssertionError("monomial outside the degree basis")
        return self.sorted_to_col[pos]


def _pack_weights(nvars: int) -> np.ndarray:
    return (np.int64(1) << (8 * np.arange(nvars, dtype=np.int64)))


@lru_cache(maxsize=None)
def _basis(nvars: int, degree: int) -> _Basis:
    if not 1 <= nvars <= _MAX_VARS:
        raise ValueError(f"nvars must be in 1..{_MAX_VARS}, got {nvars}")
    if not 0 <= degree <= _MAX_DEGREE:
        raise ValueError(f"degree must be in 0..{_MAX_DEGREE}, got {degree}")
    monos = tuple(sorted(_compositions(degree, nvars), key=grevlex_key))
    exps = np.array(monos, dtype=np.int64).reshape(len(monos), nvars)
    packed = exps @ _pack_weights(nvars)
    order = np.argsort(packed, kind="stable")
    return _Basis(
        monomials=monos,
        index={m: i for i, m in enumerate(monos)},
        packed=packed,
        sorted_packed=packed[order],
        sorted_to_col=order.astype(np.int64),
    )


def monomial_basis(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent tuples of the given total degree, canonically ordered.

    The order is descending graded reverse lexicographic, e.g. for two
    variables and degree 2: x0^2, x0*x1, x1^2.  Length is
    C(degree + nvars - 1, nvars - 1).
    """
    return _basis(nvars, degree).monomials


def ring_dim(nvars: int, t: int) -> int:
    """dim of the degree-t piece of a polynomial ring in nvars variables."""
    if t < 0:
        return 0
    return math.comb(t + nvars - 1, nvars - 1)


# ---------------------------------------------------------------------------
# forms

_VAR_ALIASES = {"w": 0, "x": 1, "y": 2, "z": 3}
_FACTOR_RE = re.compile(r"([A-Za-z]\w*)(?:\^(\d+))?\Z")


class Form:
    """A homogeneous polynomial with coefficients in GF(p).

    Coefficients are stored reduced into [1, p); zero terms are dropped, so
    the zero form is the one with no terms.  Instances are immutable by
    convention and hashable.
    """

    __slots__ = ("nvars", "degree", "p", "coeffs", "_packed")

    def __init__(self, nvars: int, degree: int, coeffs: Mapping[Monomial, int], p: int):
        p = check_prime(p)
        if not 1 <= nvars <= _MAX_VARS:
            raise ValueError(f"nvars must be in 1..{_MAX_VARS}, got {nvars}")
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        clean: dict[Monomial, int] = {}
        for mono, c in coeffs.items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono} for {nvars} variables")
            if sum(mono) != degree:
                raise ValueError(
                    f"term of degree {sum(mono)} in a form declared degree {degree}"
                )
            c = int(c) % p
            if c:
                clean[mono] = c
        self.nvars = nvars
        self.degree = degree
        self.p = p
        self.coeffs = clean
        self._packed: tuple[np.ndarray, np.ndarray] | None = None

    # -- construction helpers

    @classmethod
    def parse(cls, text: str, p: int = DEFAULT_PRIME, nvars: int = 4) -> "Form":
        """Parse `3*x0^2*x1 - x3^3` style input.

        Variables are x0..x{nvars-1}; for four variables the aliases
        w, x, y, z mean x0, x1, x2, x3.  All terms must have equal total
        degree; integers are reduced mod p.
        """
        src = text.strip()
        if not src:
            raise ValueError("empty polynomial")
        coeffs: dict[Monomial, int] = {}
        degree: int | None = None
        for chunk in src.replace("-", "+-").split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            negative = chunk.startswith("-")
            if negative:
                chunk = chunk[1:].strip()
            if not chunk:
                raise ValueError(f"dangling sign in {text!r}")
            coeff = 1
            exps = [0] * nvars
            for factor in chunk.split("*"):
                factor = factor.strip()
                if not factor:
                    raise ValueError(f"empty factor in term {chunk!r}")
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                m = _FACTOR_RE.match(factor)
                if m is None:
                    raise ValueError(f"cannot parse factor {factor!r}")
                name, exp = m.group(1), int(m.group(2) or 1)
                if name in _VAR_ALIASES:
                    idx = _VAR_ALIASES[name]
                elif name.startswith("x") and name[1:].isdigit():
                    idx = int(name[1:])
                else:
                    raise ValueError(f"unknown variable {name!r}")
                if idx >= nvars:
                    raise ValueError(
                        f"variable {name!r} out of range for {nvars} variables"
                    )
                exps[idx] += exp
            term_degree = sum(exps)
            if degree is None:
                degree = term_degree
            elif term_degree != degree:
                raise ValueError(
                    f"not homogeneous: degrees {degree} and {term_degree} in {text!r}"
                )
            key = tuple(exps)
            coeffs[key] = coeffs.get(key, 0) + (-coeff if negative else coeff)
        if degree is None:
            raise ValueError("empty polynomial")
        return cls(nvars, degree, coeffs, p)

    # -- arithmetic

    def _like(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError(f"expected a Form, got {type(other).__name__}")
        if other.nvars != self.nvars or other.p != self.p:
            raise ValueError("forms live in different rings")

    def __add__(self, other: "Form") -> "Form":
        self._like(other)
        if self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError("cannot add forms of different degrees")
        degree = self.degree if self.coeffs or not other.coeffs else other.degree
        out = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            out[mono] = out.get(mono, 0) + c
        return Form(self.nvars, degree, out, self.p)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(
            self.nvars, self.degree, {m: -c for m, c in self.coeffs.items()}, self.p
        )

    def __mul__(self, other: "Form | int") -> "Form":
        if isinstance(other, int):
            return Form(
                self.nvars,
                self.degree,
                {m: c * other for m, c in self.coeffs.items()},
                self.p,
            )
        self._like(other)
        out: dict[Monomial, int] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                key = tuple(ea + eb for ea, eb in zip(ma, mb))
                out[key] = out.get(key, 0) + ca * cb
        return Form(self.nvars, self.degree + other.degree, out, self.p)

    __rmul__ = __mul__

    def partial(self, i: int) -> "Form":
        """Partial derivative with respect to variable i (degree drops by one).

        Terms whose exponent is divisible by p vanish, as they must in
        characteristic p.
        """
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        if self.degree == 0:
            return Form(self.nvars, 0, {}, self.p)
        out: dict[Monomial, int] = {}
        for mono, c in self.coeffs.items():
            e = mono[i]
            if e == 0:
                continue
            key = mono[:i] + (e - 1,) + mono[i + 1 :]
            out[key] = out.get(key, 0) + c * e
        return Form(self.nvars, self.degree - 1, out, self.p)

    # -- views

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> list[tuple[Monomial, int]]:
        """Terms in the canonical monomial order."""
        return sorted(self.coeffs.items(), key=lambda kv: grevlex_key(kv[0]))

    def packed_terms(self) -> tuple[np.ndarray, np.ndarray]:
        """(packed monomial keys, coefficients) as arrays, canonical order."""
        if self._packed is None:
            terms = self.terms()
            if terms:
                exps = np.array([m for m, _ in terms], dtype=np.int64)
                packed = exps @ _pack_weights(self.nvars)
                cs = np.array([c for _, c in terms], dtype=np.float64)
            else:
                packed = np.empty(0, dtype=np.int64)
                cs = np.empty(0, dtype=np.float64)
            self._packed = (packed, cs)
        return self._packed

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.p == other.p
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, self.p, frozenset(self.coeffs.items())))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for mono, c in self.terms():
            factors = [
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(mono) if e
            ]
            if not factors:
                pieces.append(str(c))
            elif c == 1:
                pieces.append("*".join(factors))
            else:
                pieces.append("*".join([str(c), *factors]))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"<Form deg {self.degree} in {self.nvars} vars mod {self.p}: {self}>"


def multiply(f: Form, g: Form) -> Form:
    """Product of two forms (degree adds)."""
    return f * g


def random_form(nvars: int, degree: int, p: int, rng: random.Random) -> Form:
    """Dense random form: a uniform GF(p) coefficient on every monomial.

    Never returns the zero form.
    """
    monos = monomial_basis(nvars, degree)
    while True:
        f = Form(nvars, degree, {m: rng.randrange(p) for m in monos}, p)
        if not f.is_zero:
            return f


def parse_forms(text: str, p: int = DEFAULT_PRIME, nvars: int = 4) -> list[Form]:
    """Parse a polynomial file: one form per line, # comments, blanks ignored."""
    forms = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            forms.append(Form.parse(body, p, nvars))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return forms


def read_forms(path: str, p: int = DEFAULT_PRIME, nvars: int = 4) -> list[Form]:
    with open(path, encoding="utf-8") as fh:
        return parse_forms(fh.read(), p, nvars)


# ---------------------------------------------------------------------------
# graded matrices and ranks


@dataclass(frozen=True)
class GradedMatrix:
    """A dense matrix over GF(p) with canonical (monomial-indexed) columns.

    `entries` is float64 with values reduced into [0, p); treat it as
    immutable.  Rank computations copy, so a matrix can be reused.
    """

    entries: np.ndarray
    p: int

    def __post_init__(self) -> None:
        if self.entries.ndim != 2:
            raise ValueError("matrix must be two-dimensional")

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def rank(self, stop_at: int | None = None) -> int:
        buf = np.array(self.entries, dtype=np.float64, order="C")
        _, r = _kernel.echelon_rank(buf, check_prime(self.p), _opt(stop_at), -1)
        return r

    def staged_rank(
        self, first_block: int, stop_at: int | None = None
    ) -> tuple[int, int]:
        """(rank of the first `first_block` rows, rank of the whole matrix),
        computed in a single elimination pass."""
        if not 0 <= first_block <= self.rows:
            raise ValueError("first_block out of range")
        buf = np.array(self.entries, dtype=np.float64, order="C")
        return _kernel.echelon_rank(buf, check_prime(self.p), _opt(stop_at), first_block)


def _opt(value: int | None) -> int:
    return -1 if value is None else int(value)


def rank(m: GradedMatrix | np.ndarray | Sequence[Sequence[int]], p: int | None = None) -> int:
    """Rank over GF(p).  Accepts a GradedMatrix, or raw rows plus a prime."""
    if isinstance(m, GradedMatrix):
        return m.rank()
    if p is None:
        raise ValueError("a prime is required for raw matrix input")
    arr = np.array(m, dtype=np.float64, order="C")
    if arr.ndim != 2:
        raise ValueError("matrix must be two-dimensional")
    _, r = _kernel.echelon_rank(arr, check_prime(p), -1, -1)
    return r


def span_matrix(generators: Sequence[Form], t: int) -> GradedMatrix:
    """Rows spanning the degree-t piece of the ideal the generators define.

    One row per (generator, monomial multiplier) pair: row order follows
    generator order, then the canonical order of the multipliers, so the
    matrix is reproducible.  Generators of degree above t contribute nothing.
    """
    if not generators:
        raise ValueError("need at least one generator")
    nvars = generators[0].nvars
    p = generators[0].p
    for g in generators:
        if g.nvars != nvars or g.p != p:
            raise ValueError("generators live in different rings")
    if t < 0:
        return GradedMatrix(np.zeros((0, 0)), p)
    target = _basis(nvars, t)
    ncols = len(target.monomials)
    blocks = []
    for g in generators:
        e = t - g.degree
        if e < 0 or g.is_zero:
            continue
        mult = _basis(nvars, e)
        gpacked, gcoeffs = g.packed_terms()
        nrows = len(mult.monomials)
        block = np.zeros((nrows, ncols))
        prods = (mult.packed[:, None] + gpacked[None, :]).ravel()
        cols = target.columns_of(prods)
        rows = np.repeat(np.arange(nrows), gpacked.size)
        block[rows, cols] = np.tile(gcoeffs, nrows)
        blocks.append(block)
    if not blocks:
        return GradedMatrix(np.zeros((0, ncols)), p)
    return GradedMatrix(np.vstack(blocks), p)


def span_dim(
    generators: Sequence[Form], t: int, stop_at: int | None = None
) -> int:
    """dim of the degree-t graded piece of the generated ideal."""
    if not generators:
        return 0
    return span_matrix(generators, t).rank(stop_at=stop_at)
