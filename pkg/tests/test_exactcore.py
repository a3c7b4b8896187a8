from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wlpci import _gfrank_py
from wlpci.exactcore import (
    DEFAULT_PRIME,
    Form,
    GradedMatrix,
    check_prime,
    derive_seed,
    grevlex_key,
    is_prime,
    kernel_name,
    monomial_basis,
    multiply,
    random_form,
    rank,
    parse_forms,
    read_forms,
    ring_dim,
    span_dim,
    span_matrix,
)

try:
    from wlpci import _gfrank
except ImportError:
    _gfrank = None


def reference_rank(rows, p):
    """Independent oracle: textbook elimination with Python integers."""
    rows = [[int(x) % p for x in row] for row in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] % p:
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def test_monomial_basis_degree_two():
    assert monomial_basis(4, 2) == (
        (2, 0, 0, 0),
        (1, 1, 0, 0),
        (0, 2, 0, 0),
        (1, 0, 1, 0),
        (0, 1, 1, 0),
        (0, 0, 2, 0),
        (1, 0, 0, 1),
        (0, 1, 0, 1),
        (0, 0, 1, 1),
        (0, 0, 0, 2),
    )


def test_monomial_basis_two_vars():
    assert monomial_basis(2, 3) == ((3, 0), (2, 1), (1, 2), (0, 3))


def test_monomial_basis_counts():
    for nvars in (1, 2, 3, 4):
        for t in range(0, 8):
            assert len(monomial_basis(nvars, t)) == ring_dim(nvars, t)


def test_basis_is_sorted_by_grevlex_key():
    basis = monomial_basis(4, 5)
    keys = [grevlex_key(m) for m in basis]
    assert keys == sorted(keys)


def test_ring_dim():
    assert ring_dim(4, 0) == 1
    assert ring_dim(4, 1) == 4
    assert ring_dim(4, 3) == 20
    assert ring_dim(4, -1) == 0
    assert ring_dim(2, 6) == 7


def test_kernel_selected():
    assert kernel_name() in ("compiled", "python")


def test_is_prime():
    assert is_prime(2) and is_prime(3) and is_prime(32003)
    assert not is_prime(1) and not is_prime(32001)
    assert not is_prime(561)  # Carmichael


def test_check_prime():
    assert check_prime(32003) == 32003
    with pytest.raises(ValueError):
        check_prime(32001)
    with pytest.raises(ValueError):
        check_prime(2**25 + 35)


def test_derive_seed_is_deterministic():
    a = derive_seed("ci", 32003, 1, (4, 4, 4, 4), 0)
    b = derive_seed("ci", 32003, 1, (4, 4, 4, 4), 0)
    c = derive_seed("ci", 32003, 2, (4, 4, 4, 4), 0)
    assert a == b
    assert a != c
    assert 0 <= a < 2**63


def test_parse_and_render_round_trip():
    f = Form.parse("3*x0^2*x1 + x2^3 - 5*x3^3", p=32003)
    assert f.degree == 3 and f.nvars == 4
    assert Form.parse(str(f)) == f


def test_parse_letter_aliases():
    f = Form.parse("w^2 + x*y - z^2", p=32003)
    g = Form.parse("x0^2 + x1*x2 - x3^2", p=32003)
    assert f == g


def test_parse_negative_coefficients_reduce():
    f = Form.parse("-x0^2", p=7)
    assert f.terms() == [((2, 0, 0, 0), 6)]


def test_parse_rejects_inhomogeneous():
    with pytest.raises(ValueError):
        Form.parse("x0^2 + x1")


def test_parse_rejects_unknown_variable():
    with pytest.raises(ValueError):
        Form.parse("x9 + x0", nvars=4)


def test_parse_rejects_garbage():
    for bad in ("", "+", "3*", "x0^"):
        with pytest.raises(ValueError):
            Form.parse(bad)


def test_parse_forms_reports_line_numbers():
    text = "x0^2\n# a comment\n\nx1^2\nnot a form\n"
    with pytest.raises(ValueError, match="line 5"):
        parse_forms(text)


def test_read_forms(tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text("# squares\nx0^2\nx1^2\n\nx2^2\nx3^2\n")
    forms = read_forms(str(path))
    assert [f.degree for f in forms] == [2, 2, 2, 2]


def test_form_arithmetic():
    x0 = Form.parse("x0")
    x1 = Form.parse("x1")
    f = x0 * x0 + 2 * (x0 * x1)
    assert str(f) == "x0^2 + 2*x0*x1"
    assert (f - f).is_zero
    g = multiply(f, x1)
    assert g.degree == 3


def test_form_partial_derivative():
    f = Form.parse("x0^2*x1 + x3^3")
    assert f.partial(0) == Form.parse("2*x0*x1")
    assert f.partial(3) == Form.parse("3*x3^2")
    assert f.partial(2).is_zero


def test_partial_drops_p_divisible_exponents():
    f = Form.parse("x0^7", p=7)
    assert f.partial(0).is_zero


def test_rank_identity_and_zero():
    assert rank(np.eye(5), 32003) == 5
    assert rank(np.zeros((3, 4)), 32003) == 0


def test_rank_depends_on_the_prime():
    # determinant -5: singular mod 5, invertible mod 7
    assert rank([[1, 2], [3, 1]], 5) == 1
    assert rank([[1, 2], [3, 1]], 7) == 2


def test_rank_row_permutation_invariance():
    rng = random.Random(11)
    a = np.array(
        [[rng.randrange(13) for _ in range(6)] for _ in range(5)], dtype=float
    )
    base = rank(a, 13)
    for _ in range(5):
        perm = list(range(5))
        rng.shuffle(perm)
        assert rank(a[perm], 13) == base


def test_staged_rank_counts_first_block():
    a = np.array(
        [
            [1, 0, 0],
            [2, 0, 0],
            [0, 1, 0],
        ],
        dtype=float,
    )
    m = GradedMatrix(a, 32003)
    assert m.staged_rank(first_block=2) == (1, 2)
    assert m.staged_rank(first_block=0) == (0, 2)
    assert m.staged_rank(first_block=3) == (2, 2)


def test_rank_stop_at_early_exit():
    m = GradedMatrix(np.eye(6), 32003)
    assert m.rank(stop_at=3) >= 3
    assert m.rank() == 6


def test_kernels_agree_on_random_matrices():
    if _gfrank is None:
        pytest.skip("compiled kernel not built")
    rng = random.Random(5)
    for trial in range(20):
        rows = rng.randrange(1, 12)
        cols = rng.randrange(1, 12)
        p = rng.choice([2, 3, 101, 32003])
        a = np.array(
            [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
            dtype=float,
        )
        blk = rng.randrange(0, rows + 1)
        got_c = _gfrank.echelon_rank(np.ascontiguousarray(a.copy()), p, -1, blk)
        got_p = _gfrank_py.echelon_rank(np.ascontiguousarray(a.copy()), p, -1, blk)
        assert got_c == got_p
        assert got_c[1] == reference_rank(a.tolist(), p)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 7),
    st.integers(1, 6),
    st.integers(1, 6),
    st.integers(0, 2**32 - 1),
)
def test_rank_matches_reference_oracle(nrows, ncols, pidx, seed):
    p = [2, 3, 5, 7, 11, 13, 32003][pidx % 7]
    rng = random.Random(seed)
    a = [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)]
    assert rank(np.array(a, dtype=float), p) == reference_rank(a, p)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_rank_transpose_invariance(seed):
    rng = random.Random(seed)
    p = rng.choice([3, 7, 32003])
    rows, cols = rng.randrange(1, 9), rng.randrange(1, 9)
    a = np.array(
        [[rng.randrange(p) for _ in range(cols)] for _ in range(rows)],
        dtype=float,
    )
    assert rank(a, p) == rank(np.ascontiguousarray(a.T), p)


def test_span_two_variable_golden():
    # <x0^2, x1^2> in two variables has all four cubics in degree 3
    f = Form.parse("x0^2", nvars=2)
    g = Form.parse("x1^2", nvars=2)
    assert span_dim([f, g], 3) == 4
    assert span_dim([f, g], 2) == 2


def test_span_principal_ideal_dimension():
    rng = random.Random(3)
    for degree in (1, 2, 3):
        f = random_form(4, degree, DEFAULT_PRIME, rng)
        for t in range(degree, degree + 3):
            assert span_dim([f], t) == ring_dim(4, t - degree)


def test_span_skips_oversized_generators():
    f = Form.parse("x0^3")
    g = Form.parse("x1^2")
    assert span_dim([f, g], 2) == 1


def test_span_requires_a_generator():
    with pytest.raises(ValueError):
        span_matrix([], 2)


def test_span_rejects_mixed_rings():
    f = Form.parse("x0^2", p=32003)
    g = Form.parse("x0^2", p=101)
    with pytest.raises(ValueError):
        span_matrix([f, g], 3)


def test_random_form_is_deterministic():
    a = random_form(4, 3, 32003, random.Random(9))
    b = random_form(4, 3, 32003, random.Random(9))
    assert a == b and not a.is_zero


def test_grevlex_example_order():
    # x0*x2 sorts after x1^2: the last variable decides, reversed
    basis = monomial_basis(4, 2)
    assert basis.index((0, 2, 0, 0)) < basis.index((1, 0, 1, 0))
