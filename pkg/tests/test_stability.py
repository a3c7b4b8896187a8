from __future__ import annotations

import pytest

from wlpci.stability import (
    CONE_CASE_1,
    EXCLUDED_BY_ARITHMETIC,
    EXCLUDED_BY_COHOMOLOGY_SHAPE,
    NOT_APPLICABLE,
    STABLE_CASE_2,
    STABLE_RESTRICTION,
    crosscheck_with_wlp,
    exception_report,
    injectivity_lambda,
)


def test_equigenerated_5555():
    rep = injectivity_lambda((5, 5, 5, 5))
    assert rep.total == 20
    assert rep.lam == 6
    assert rep.remainder == 2
    assert rep.case == STABLE_CASE_2
    assert rep.c1 == -20
    assert rep.c2 == 150
    assert rep.c1_mod3 == 1
    assert rep.p_twist is None and rep.c2_normalized is None


def test_mixed_2345_is_cone_case():
    rep = injectivity_lambda((2, 3, 4, 5))
    assert rep.total == 14
    assert rep.lam == 4
    assert rep.case == CONE_CASE_1
    assert rep.exception_status is None and rep.overall is None


def test_equigenerated_3333_chern_data():
    rep = injectivity_lambda((3, 3, 3, 3))
    assert rep.case == STABLE_CASE_2
    assert rep.c1 == -12 and rep.c1_mod3 == 0
    assert rep.p_twist == 4
    assert rep.c2 == 54
    assert rep.c2_normalized == 6
    assert rep.overall == STABLE_RESTRICTION
    verdicts = {i.label: i.verdict for i in rep.exception_status}
    assert verdicts == {
        "i": EXCLUDED_BY_COHOMOLOGY_SHAPE,
        "ii": EXCLUDED_BY_COHOMOLOGY_SHAPE,
        "iii": EXCLUDED_BY_ARITHMETIC,
        "iv": EXCLUDED_BY_COHOMOLOGY_SHAPE,
        "v": EXCLUDED_BY_COHOMOLOGY_SHAPE,
    }


def test_equigenerated_2222_residue_one():
    rep = injectivity_lambda((2, 2, 2, 2))
    assert rep.case == STABLE_CASE_2
    assert rep.c1 == -8 and rep.c1_mod3 == 1
    verdicts = {i.label: i.verdict for i in rep.exception_status}
    assert verdicts == {
        "i": EXCLUDED_BY_COHOMOLOGY_SHAPE,
        "ii": EXCLUDED_BY_COHOMOLOGY_SHAPE,
        "iii": NOT_APPLICABLE,
        "iv": NOT_APPLICABLE,
        "v": NOT_APPLICABLE,
    }
    assert rep.overall == STABLE_RESTRICTION


def test_2223_boundary_is_cone_case():
    rep = injectivity_lambda((2, 2, 2, 3))
    assert rep.total == 9
    assert rep.lam == 3
    assert rep.case == CONE_CASE_1


def test_degrees_are_sorted():
    rep = injectivity_lambda((5, 2, 4, 3))
    assert rep.degrees == (2, 3, 4, 5)


def test_input_validation():
    with pytest.raises(ValueError, match="four degrees"):
        injectivity_lambda((2, 2, 2))
    with pytest.raises(ValueError, match="at least 2"):
        injectivity_lambda((1, 2, 3, 4))


def test_exception_report_requires_stable_case():
    with pytest.raises(ValueError, match="stable case"):
        exception_report((2, 2, 2, 3))
    rep = exception_report((3, 3, 3, 3))
    assert rep.overall == STABLE_RESTRICTION


def test_json_dict_uses_lambda_key():
    out = injectivity_lambda((3, 3, 3, 3)).as_json_dict()
    assert out["lambda"] == 4
    assert out["sum"] == 12
    assert out["r"] == 0
    assert len(out["exception_status"]) == 5
    out1 = injectivity_lambda((2, 3, 4, 5)).as_json_dict()
    assert out1["exception_status"] is None


def test_c2_normalized_is_integral_when_defined():
    for degrees in (
        (3, 3, 3, 3),
        (2, 3, 4, 6),
        (4, 4, 4, 6),
        (2, 2, 4, 4),
        (5, 5, 5, 6),
    ):
        rep = injectivity_lambda(degrees)
        if rep.c1_mod3 == 0:
            assert rep.c2_normalized is not None
            assert 3 * rep.c2_normalized == rep.c2 - sum(
                d * d for d in rep.degrees
            )
        else:
            assert rep.c2_normalized is None


def test_lambda_below_equigenerated_injectivity_bound():
    for d in range(2, 51):
        rep = injectivity_lambda((d, d, d, d))
        assert rep.lam == (4 * d) // 3
        assert rep.lam <= (3 * d + 1) // 2


def test_crosscheck_small_profiles():
    assert crosscheck_with_wlp((2, 3, 4, 5), seed=1)
    assert crosscheck_with_wlp((2, 2, 2, 2), seed=1)
    assert crosscheck_with_wlp((3, 3, 3, 3), seed=2)
