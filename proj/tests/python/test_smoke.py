"""Smoke tests for the python bindings.

The numerical heavy lifting is covered by the C++ suites; these check that
the module loads, the main operations round-trip through python, and the
headline numbers survive the binding layer.
"""

import json
import math

import pytest

import tgd


def test_distribution_basics():
    p = tgd.Params(0.5, 0.0)
    assert tgd.pmf(p, 2) == pytest.approx(0.125, abs=1e-14)
    assert tgd.sf(p, 3) == pytest.approx(0.125, abs=1e-14)
    assert tgd.cdf(p, 0) == pytest.approx(0.5, abs=1e-14)
    assert tgd.quantile(p, 0.96) == 4
    assert tgd.mean(p) == pytest.approx(1.0)
    assert tgd.variance(p) == pytest.approx(2.0)
    assert tgd.mode(tgd.Params(0.8, -0.9)) == 2
    assert tgd.log_pmf(p, 2) == pytest.approx(math.log(0.125))
    with pytest.raises(ValueError):
        tgd.Params(1.5, 0.0).valid() or tgd.pmf(tgd.Params(1.5, 0.0), 1)


def test_pmf_sums_to_one():
    p = tgd.Params(0.6, -0.4)
    total = sum(tgd.pmf(p, y) for y in range(400))
    assert total == pytest.approx(1.0, abs=1e-10)


def test_sampling_deterministic():
    p = tgd.Params(0.5, 0.7)
    a = tgd.sample(p, 50, seed=42)
    b = tgd.sample(p, 50, seed=42)
    assert a == b
    assert all(v >= 0 for v in a)
    assert tgd.sample_mixture(p, 10, seed=1) == tgd.sample_mixture(p, 10, seed=1)


def test_reliability():
    p = tgd.Params(0.5, 0.0)
    assert tgd.hazard(p, 3) == pytest.approx(0.5)
    assert tgd.mrl(p, 2) == pytest.approx(1.0)
    assert tgd.classify_hazard(tgd.Params(0.5, -0.3)) == tgd.HazardClass.Increasing


def test_embedded_and_describe():
    data = tgd.embedded("ntg")
    assert data.n == 123
    stats = tgd.describe(data)
    assert stats.mean == pytest.approx(5.398, abs=0.002)
    assert stats.variance == pytest.approx(30.045, abs=0.002)
    with pytest.raises(ValueError):
        tgd.embedded("nope")


def test_mle_reproduces_published_fit():
    fit = tgd.mle(tgd.embedded("ntg"))
    assert fit.converged
    assert fit.params.q == pytest.approx(0.811, abs=0.005)
    assert fit.params.alpha == pytest.approx(-0.465, abs=0.005)
    assert fit.aic == pytest.approx(682.708, abs=0.05)
    assert fit.se_alpha == pytest.approx(0.1996, abs=0.001)


def test_em_matches_mle():
    data = tgd.embedded("ntg")
    fit, trace = tgd.em_fit(data, max_iter=2000)
    assert fit.converged
    assert fit.loglik == pytest.approx(tgd.mle(data).loglik, abs=1e-4)
    assert all(b >= a - 1e-9 for a, b in zip(trace, trace[1:]))


def test_estimators():
    data = tgd.embedded("ntg")
    est = tgd.estimate_moments(data)
    assert est.params.q == pytest.approx(0.8239, abs=1e-3)
    est_q = tgd.estimate_quantiles(data, 2, 8)
    assert est_q.params.alpha == pytest.approx(-0.4756, abs=1e-3)
    with pytest.raises(RuntimeError):
        tgd.estimate_proportions(data)  # infeasible observed (p0, p1)


def test_tests_and_chi2():
    data = tgd.embedded("doctor_visit")
    lr = tgd.lrt(data)
    assert lr.statistic == pytest.approx(96.34, abs=0.5)
    assert lr.p_value < 1e-6
    sc = tgd.score_test(data)
    assert sc.statistic == pytest.approx(116.334, abs=0.01)
    sc_exp = tgd.score_test(data, info=tgd.ScoreInfo.Expected)
    assert sc_exp.statistic == pytest.approx(91.458, abs=0.01)
    assert tgd.chi2_sf(3.841, 1) == pytest.approx(0.05, abs=2e-4)


def test_model_comparison():
    data = tgd.embedded("ntg")
    nb = tgd.fit_negbin(data)
    assert nb.params.r == pytest.approx(1.336, abs=0.01)
    geo = tgd.fit_geometric(data)
    assert geo.q == pytest.approx(5.398 / 6.398, abs=1e-3)
    report = json.loads(tgd.compare_json(data, "ntg"))
    assert report["best_model"] == "tgd"
    models = {row["model"]: row for row in report["models"]}
    assert models["tgd_mle"]["aic"] == pytest.approx(682.708, abs=0.05)


def test_freq_table_and_csv(tmp_path):
    table = tgd.FreqTable.from_entries([(0, 3), (1, 2), (0, 1)])
    assert table.n == 6
    assert table.entries() == [(0, 4), (1, 2)]
    csv = tmp_path / "counts.csv"
    csv.write_text("value,count\n0,5\n2,5\n")
    loaded = tgd.load_freq_csv(str(csv))
    assert loaded.mean() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        tgd.load_freq_csv(str(tmp_path / "missing.csv"))


def test_power_study_json():
    out = json.loads(
        tgd.run_power_study_json([0.6], [-0.7], [300], replications=100, seed=7)
    )
    cell = out["cells"][0]
    assert cell["power_lrt"] > 0.5
    assert out["config"]["seed"] == 7
