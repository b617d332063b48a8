"""Model contracts: spaces, sample validation, the likelihood table."""

import math

import numpy as np
import pytest

from lrpossib import (
    InputError,
    NormalStats,
    SampleStatus,
    SpecError,
    TableModel,
    make_model,
    validate_sample,
)
from lrpossib.space import ContinuousSpace, FiniteSpace


def test_binomial_space_and_sample_checks():
    m = make_model("binomial", {"n": 8}, None)
    assert isinstance(m.space, ContinuousSpace)
    assert m.space.dim == 1
    assert validate_sample(m, 4) is SampleStatus.OK
    assert validate_sample(m, 0) is SampleStatus.OK
    with pytest.raises(InputError):
        validate_sample(m, 9)
    with pytest.raises(InputError):
        validate_sample(m, -1)
    with pytest.raises(InputError):
        validate_sample(m, 3.5)


def test_binomial_requires_n():
    with pytest.raises(SpecError):
        make_model("binomial", {}, None)
    with pytest.raises(SpecError):
        make_model("binomial", {"n": 8, "junk": 1}, None)


def test_unknown_model_name():
    with pytest.raises(SpecError):
        make_model("weibull", {}, None)


def test_poisson_space_unbounded():
    m = make_model("poisson", {}, None)
    iv = m.space.bounds[0]
    assert iv.lo == 0.0
    assert math.isinf(iv.hi)
    assert validate_sample(m, 0) is SampleStatus.OK
    assert validate_sample(m, 17) is SampleStatus.OK


def test_normal_stats_sample():
    m = make_model("normal", {}, None)
    assert m.space.dim == 2
    x = NormalStats(mean=1.2, var=0.8, n=9)
    assert validate_sample(m, x) is SampleStatus.OK
    # zero sample variance puts the supremum out of reach
    degenerate = NormalStats(mean=0.0, var=0.0, n=5)
    assert validate_sample(m, degenerate) is SampleStatus.NOT_IN_XSTAR


def test_normal_stats_from_data():
    xs = [1.0, 2.0, 3.0]
    st = NormalStats.from_data(xs)
    assert st.n == 3
    assert st.mean == pytest.approx(2.0)
    assert st.var == pytest.approx(2.0 / 3.0)


def test_normal_stats_validation():
    with pytest.raises(InputError):
        NormalStats(mean=0.0, var=-1.0, n=3)
    with pytest.raises(InputError):
        NormalStats(mean=0.0, var=1.0, n=0)


def test_trinomial_simplex_feasibility():
    m = make_model("trinomial", {}, None)
    assert m.space.dim == 2
    assert m.space.contains((0.25, 0.5))
    assert not m.space.contains((0.7, 0.7))
    assert validate_sample(m, (5, 0, 5)) is SampleStatus.OK
    with pytest.raises(InputError):
        validate_sample(m, (5, -1, 5))
    with pytest.raises(InputError):
        validate_sample(m, (0, 0, 0))


def test_binomial_finite_values():
    m = make_model("binomial-finite", {"n": 4, "thetas": [0.3, 0.9]}, None)
    assert isinstance(m.space, FiniteSpace)
    assert m.space.values == (0.3, 0.9)
    assert m.loglik(0, 2) == pytest.approx(math.log(6 * 0.3**2 * 0.7**2))


def test_table_model_rows_checked():
    with pytest.raises(InputError):
        TableModel(("a", "b"), {0: (0.5,)})
    with pytest.raises(InputError):
        TableModel(("a", "b"), {0: (0.5, -0.1)})
    m = TableModel(("a", "b"), {0: (0.5, 0.0), 1: (0.5, 1.0)})
    assert m.loglik(1, 0) == -math.inf
    with pytest.raises(InputError):
        m.loglik(2, 0)
    with pytest.raises(InputError):
        validate_sample(m, 7)


def test_table_model_zero_row_is_c1_violation():
    m = TableModel(("a", "b"), {0: (0.0, 0.0), 1: (1.0, 1.0)})
    assert validate_sample(m, 0) is SampleStatus.C1_VIOLATED
    assert validate_sample(m, 1) is SampleStatus.OK


def test_batch_loglik_matches_scalar():
    m = make_model("binomial", {"n": 8}, None)
    ts = np.linspace(0.05, 0.95, 19)[:, None]
    batch = m.batch_loglik(ts, 3)
    for row, v in zip(ts, batch):
        assert v == pytest.approx(m.loglik((row[0],), 3), abs=1e-12)


def test_counterexample_models_need_cap_or_sample():
    m = make_model("fraser", {}, 7)
    assert isinstance(m.space, FiniteSpace)
    with pytest.raises(SpecError):
        make_model("fraser", {}, None)
    m2 = make_model("severini", {"theta_max": 21}, None)
    assert len(m2.space) >= 21
