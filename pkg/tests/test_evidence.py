"""The evidence measure and the verdict function.

Property names: P1 nu(full)=1, P2 nu(empty)=0, P3 monotone under
inclusion, P4 max-decomposition over unions.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lrpossib import (
    Box,
    Complement,
    Empty,
    FiniteSet,
    Full,
    InputError,
    Intersection,
    Interval,
    NormalStats,
    OptConfig,
    TableModel,
    Union,
    XStarError,
    box,
    interval,
    lambda_level_set_membership,
    likelihood_ratio_R,
    make_model,
    nu,
    phi,
)

BINOM8 = make_model("binomial", {"n": 8}, None)


def test_p1_p2():
    ev = nu(BINOM8, 4, Full())
    assert ev.nu == 1.0
    assert ev.annotation == "consistent"
    empty = nu(BINOM8, 4, Empty())
    assert empty.nu == 0.0
    assert empty.annotation == "impossible"


def test_p3_monotone():
    small = nu(BINOM8, 2, interval(0.4, 0.6)).nu
    large = nu(BINOM8, 2, interval(0.3, 0.7)).nu
    assert small <= large


def test_p4_union_max():
    a = interval(0.05, 0.15)
    b = interval(0.6, 0.8)
    va = nu(BINOM8, 2, a).nu
    vb = nu(BINOM8, 2, b).nu
    vu = nu(BINOM8, 2, Union((a, b))).nu
    assert vu == pytest.approx(max(va, vb), rel=1e-12)


def test_singleton_evidence_value():
    ev = nu(BINOM8, 4, FiniteSet(((0.9,),)))
    assert ev.nu == pytest.approx((0.9**4 * 0.1**4) / 0.5**8, rel=1e-12)
    assert ev.annotation == "inconsistent_degree"
    assert ev.witness == (0.9,)


def test_figure_pairs_binomial():
    region = interval(0.4, 0.6)
    comp = Complement(region)
    cases = {0: (0.6**8, 1.0), 4: (1.0, (0.4**4 * 0.6**4) / 0.5**8), 8: (0.6**8, 1.0)}
    for x, (want0, want0c) in cases.items():
        assert nu(BINOM8, x, region).nu == pytest.approx(want0, rel=1e-9)
        assert nu(BINOM8, x, comp).nu == pytest.approx(want0c, rel=1e-9)


def test_non_implication_both_sides_one():
    # evidence consistent with H0 is not evidence against H1: x=4 on
    # [0, 0.5] puts the MLE on the shared boundary, both sides get 1
    region = interval(0.0, 0.5)
    ev0 = nu(BINOM8, 4, region)
    ev0c = nu(BINOM8, 4, Complement(region))
    assert ev0.nu == pytest.approx(1.0, abs=1e-12)
    assert ev0c.nu == pytest.approx(1.0, abs=1e-12)


def test_zero_likelihood_region_is_impossible():
    m = make_model("fraser", {}, 6)
    ev = nu(m, 6, FiniteSet((5,)))
    assert ev.nu == 0.0
    assert ev.annotation == "impossible"


def test_xstar_gate():
    m = make_model("normal", {}, None)
    degenerate = NormalStats(mean=1.0, var=0.0, n=5)
    with pytest.raises(XStarError):
        nu(m, degenerate, Full())


def test_c1_gate():
    t = TableModel(("a", "b"), {0: (0.0, 0.0), 1: (1.0, 2.0)})
    with pytest.raises(InputError):
        nu(t, 0, Full())


# ---------------------------------------------------------------------------
# exact axioms on random finite models


@st.composite
def finite_cases(draw):
    k = draw(st.integers(2, 6))
    weights = [draw(st.integers(0, 9)) for _ in range(k)]
    if max(weights) == 0:
        weights[0] = 1
    labels = tuple(f"t{i}" for i in range(k))
    model = TableModel(labels, {0: tuple(float(w) for w in weights)})
    subset = draw(st.sets(st.sampled_from(labels), min_size=1))
    return model, FiniteSet(tuple(sorted(subset)))


@settings(max_examples=200, deadline=None)
@given(finite_cases())
def test_finite_axioms_exact(case):
    model, region = case
    full = nu(model, 0, Full()).nu
    assert full == 1.0
    v = nu(model, 0, region).nu
    vc = nu(model, 0, Complement(region)).nu
    assert 0.0 <= v <= 1.0
    # dichotomy: some label always attains the maximum
    assert max(v, vc) == 1.0
    # union decomposition, exactly
    u = nu(model, 0, Union((region, Complement(region)))).nu
    assert u == 1.0


# ---------------------------------------------------------------------------
# level sets


def test_lambda_membership_continuous():
    assert lambda_level_set_membership(BINOM8, 4, (0.5,), 1.0)
    assert lambda_level_set_membership(BINOM8, 4, 0.4, 0.8)
    assert not lambda_level_set_membership(BINOM8, 4, (0.9,), 0.5)
    assert lambda_level_set_membership(BINOM8, 4, (0.9,), 0.0)
    with pytest.raises(InputError):
        lambda_level_set_membership(BINOM8, 4, (0.5,), 1.5)


def test_lambda_membership_finite_by_value():
    m = make_model("severini", {}, 6)
    assert lambda_level_set_membership(m, 6, 13, 1.0)
    assert lambda_level_set_membership(m, 6, 12, 0.8)
    assert not lambda_level_set_membership(m, 6, 3, 0.75)
    with pytest.raises(InputError):
        lambda_level_set_membership(m, 6, 999, 0.5)


# ---------------------------------------------------------------------------
# ratios


def test_ratio_exact_pair():
    m = make_model("severini", {}, 6)
    r = likelihood_ratio_R(m, 6, FiniteSet((13,)), FiniteSet((3,)))
    assert r.defined
    assert r.value == pytest.approx(float(Fraction(10, 7)), rel=1e-12)
    sibling = likelihood_ratio_R(m, 6, FiniteSet((13,)), FiniteSet((12,)))
    assert sibling.value == pytest.approx(1.25, rel=1e-12)


def test_ratio_undefined_on_zero_denominator():
    m = make_model("severini", {}, 6)
    r = likelihood_ratio_R(m, 6, FiniteSet((13,)), FiniteSet((5,)))
    assert not r.defined
    assert r.value is None


# ---------------------------------------------------------------------------
# verdicts


def test_phi_accept_example():
    m = make_model("binomial-finite", {"n": 100, "thetas": [0.1, 0.2, 0.9]}, None)
    v = phi(m, 99, FiniteSet((0.9,)))
    assert v.decision == "accept"
    assert v.nu0 == 1.0
    assert v.nu0c < 1e-60


def test_phi_reject():
    v = phi(BINOM8, 8, interval(0.4, 0.6), a_star=0.05)
    assert v.decision == "reject"
    assert v.nu0 == pytest.approx(0.6**8, rel=1e-9)


def test_phi_maintain_when_neither_side_small():
    v = phi(BINOM8, 4, interval(0.0, 0.5))
    assert v.decision == "maintain"
    assert v.nu0 == pytest.approx(1.0)
    assert v.nu0c == pytest.approx(1.0)


def test_phi_full_null_accepts():
    v = phi(BINOM8, 4, Full())
    # the complement is empty, so evidence against the null is 0
    assert v.nu0 == 1.0
    assert v.nu0c == 0.0
    assert v.decision == "accept"


def test_phi_fisherian_never_accepts():
    m = make_model("binomial-finite", {"n": 100, "thetas": [0.1, 0.2, 0.9]}, None)
    v = phi(m, 99, FiniteSet((0.9,)), philosophy="fisherian")
    assert v.decision == "maintain"


def test_phi_threshold_validation():
    with pytest.raises(InputError):
        phi(BINOM8, 4, interval(0.4, 0.6), a_star=0.0)
    with pytest.raises(InputError):
        phi(BINOM8, 4, interval(0.4, 0.6), philosophy="bayesian")
    with pytest.raises(InputError):
        phi(BINOM8, 4, interval(0.4, 0.6), regime="exotic")


def test_phi_sharp_null_derived_from_dim():
    m = make_model("trinomial", {}, None)
    from lrpossib.hwe import hwe_regions

    curve, _, _ = hwe_regions()
    v = phi(m, (5, 0, 5), curve, a_star=0.05)
    assert v.regime == "sharp_null"
    # the complement of a measure-zero null carries possibility 1
    assert v.nu0c == pytest.approx(1.0, abs=1e-9)
    assert v.decision == "reject"


def test_phi_sharp_null_never_accepts():
    m = make_model("trinomial", {}, None)
    from lrpossib.hwe import hwe_regions

    curve, _, _ = hwe_regions()
    # the data sit exactly on the curve: nu0 = 1 on a sharp null still
    # cannot produce accept, only maintain
    v = phi(m, (2, 4, 2), curve)
    assert v.nu0 == pytest.approx(1.0, abs=1e-9)
    assert v.decision == "maintain"


def test_phi_sharp_declaration_must_be_consistent():
    # declaring the null sharp while its complement has evidence far
    # below 1 contradicts the no-gap condition
    with pytest.raises(InputError) as e:
        phi(BINOM8, 8, interval(0.0, 0.2), regime="sharp_alternative")
    assert "C2" in str(e.value)
    with pytest.raises(InputError) as e2:
        phi(BINOM8, 8, interval(0.9, 1.0), regime="sharp_null")
    assert "C2" in str(e2.value)
