from __future__ import annotations

import pytest

from wlpci.exactcore import Form
from wlpci.hilbert import ci_hilbert
from wlpci.wlp import (
    WLP_CERTIFIED,
    component_dim,
    duality_check,
    instance_from_forms,
    jacobian_ideal,
    mult_rank,
    random_ci,
    section_hvector,
    wlp_report,
)


@pytest.fixture(scope="module")
def inst2():
    return random_ci((2, 2, 2, 2), seed=1)


@pytest.fixture(scope="module")
def inst3():
    return random_ci((3, 3, 3, 3), seed=1)


@pytest.fixture(scope="module")
def inst4():
    return random_ci((4, 4, 4, 4), seed=1)


def test_random_ci_is_deterministic():
    a = random_ci((3, 3, 3, 3), seed=5)
    b = random_ci((3, 3, 3, 3), seed=5)
    assert [str(f) for f in a.forms] == [str(f) for f in b.forms]
    assert str(a.linear_form) == str(b.linear_form)
    c = random_ci((3, 3, 3, 3), seed=6)
    assert [str(f) for f in a.forms] != [str(f) for f in c.forms]


def test_random_ci_validation():
    with pytest.raises(ValueError, match="four generator degrees"):
        random_ci((2, 2, 2))
    with pytest.raises(ValueError, match="at least 2"):
        random_ci((1, 2, 2, 2))


def test_instance_properties(inst2, inst4):
    assert inst2.verified
    assert inst2.equigenerated
    assert inst2.socle_degree == 4
    assert inst4.socle_degree == 12
    assert inst2.expected_hilbert().values == (1, 4, 6, 4, 1)


def test_component_dim_matches_koszul(inst2, inst4):
    for t in range(0, 6):
        assert component_dim(inst2, t) == inst2.expected_hilbert()(t)
    assert component_dim(inst4, 6) == 44
    assert component_dim(inst4, -1) == 0


def test_component_dim_d6_peak():
    inst = random_ci((6, 6, 6, 6), seed=2)
    assert component_dim(inst, 10) == 146


def test_mult_rank_golden(inst2):
    # x L : [A]_2 -> [A]_3 for the d=2 quotient has full rank 4
    assert mult_rank(inst2, inst2.linear_form, 3) == 4


def test_mult_rank_validation(inst2):
    with pytest.raises(ValueError):
        mult_rank(inst2, inst2.linear_form, 0)
    with pytest.raises(ValueError):
        mult_rank(inst2, inst2.forms[0], 2)
    zero = inst2.linear_form - inst2.linear_form
    with pytest.raises(ValueError):
        mult_rank(inst2, zero, 2)


def test_wlp_report_d2(inst2):
    rep = wlp_report(inst2)
    assert rep.classification == WLP_CERTIFIED
    assert rep.window == (1, 2, 3, 4, 5)
    assert rep.trials_used == 1
    got = [(r.t, r.dim_source, r.dim_target, r.rank) for r in rep.rows]
    assert got == [
        (1, 1, 4, 1),
        (2, 4, 6, 4),
        (3, 6, 4, 4),
        (4, 4, 1, 1),
        (5, 1, 0, 0),
    ]


def test_wlp_report_rows_satisfy_rank_nullity(inst3):
    rep = wlp_report(inst3)
    assert rep.classification == WLP_CERTIFIED
    for row in rep.rows:
        assert row.rank + row.kernel == row.dim_source
        assert row.rank + row.cokernel == row.dim_target
        assert row.maximal


def test_wlp_report_decisive_degree(inst4):
    rep = wlp_report(inst4)
    assert rep.classification == WLP_CERTIFIED
    d = 4
    spot = rep.row(2 * d - 1)
    assert spot.cokernel == 0
    assert rep.window == tuple(range(1, 2 * d + 2))
    with pytest.raises(KeyError):
        rep.row(99)


def test_wlp_report_mixed_degrees():
    inst = random_ci((2, 2, 2, 3), seed=1)
    rep = wlp_report(inst)
    # window covers every nontrivial map up to one past the socle degree
    assert rep.window == (1, 2, 3, 4, 5, 6)
    assert rep.classification == WLP_CERTIFIED


def test_wlp_report_requires_trials(inst2):
    with pytest.raises(ValueError):
        wlp_report(inst2, trials=0)


def test_duality_check(inst2, inst3):
    assert duality_check(inst2)
    assert duality_check(inst3)


def test_duality_check_rejects_mixed():
    inst = random_ci((2, 2, 2, 3), seed=1)
    with pytest.raises(ValueError, match="equigenerated"):
        duality_check(inst)


def test_section_hvector_goldens(inst2, inst3, inst4):
    assert section_hvector(inst2).values == (1, 2, 3, 2)
    assert section_hvector(inst3).values == (1, 2, 3, 4, 5, 3)
    assert section_hvector(inst4).values == (1, 2, 3, 4, 5, 6, 7, 4)


def test_section_hvector_sums_to_curve_degree(inst2, inst3, inst4):
    for d, inst in ((2, inst2), (3, inst3), (4, inst4)):
        sec = section_hvector(inst)
        assert sec.total() == 2 * d * d
        assert sec[2 * d - 1] == d


def test_section_hvector_rejects_mixed():
    inst = random_ci((2, 2, 2, 3), seed=1)
    with pytest.raises(ValueError, match="equigenerated"):
        section_hvector(inst)


def test_instance_from_forms_monomial_ci():
    forms = [Form.parse(s) for s in ("x0^2", "x1^2", "x2^2", "x3^2")]
    inst = instance_from_forms(forms)
    assert inst.verified
    assert inst.degrees == (2, 2, 2, 2)
    for t in range(0, 5):
        assert component_dim(inst, t) == ci_hilbert((2, 2, 2, 2), 4)(t)


def test_instance_from_forms_rejects_non_ci():
    forms = [Form.parse(s) for s in ("x0^2", "x0^2", "x2^2", "x3^2")]
    with pytest.raises(ValueError, match="could not certify"):
        instance_from_forms(forms)


def test_instance_from_forms_validation():
    sq = Form.parse("x0^2")
    with pytest.raises(ValueError, match="four forms"):
        instance_from_forms([sq, sq, sq])
    lin = Form.parse("x0")
    with pytest.raises(ValueError, match="at least 2"):
        instance_from_forms([lin, sq, sq, sq])


def test_jacobian_ideal_fermat_quartic():
    f = Form.parse("x0^4 + x1^4 + x2^4 + x3^4")
    inst = jacobian_ideal(f)
    assert inst.degrees == (3, 3, 3, 3)
    assert inst.verified
    rep = wlp_report(inst)
    assert rep.classification == WLP_CERTIFIED


def test_jacobian_ideal_rejects_singular():
    f = Form.parse("x0^3")
    with pytest.raises(ValueError, match="possibly singular"):
        jacobian_ideal(f)


def test_jacobian_ideal_rejects_low_degree():
    f = Form.parse("x0^2 + x1*x2")
    with pytest.raises(ValueError, match="degree at least 3"):
        jacobian_ideal(f)


def test_kernel_vanishes_iff_section_ideal_is_trivial(inst3):
    # below degree 2d the section's ideal has no forms, so injectivity of
    # x L in those degrees is exactly the vanishing of the connecting term
    d = 3
    L = inst3.linear_form
    for t in range(1, 2 * d):
        kernel = component_dim(inst3, t - 1) - mult_rank(inst3, L, t)
        assert kernel == max(
            component_dim(inst3, t - 1) - component_dim(inst3, t), 0
        )
