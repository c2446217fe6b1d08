"""Count-data modeling with the transmuted geometric distribution.

The heavy lifting lives in the compiled extension `tgd._tgd`; this package
re-exports its surface.  Start with `Params`, `embedded` and `mle`:

    >>> import tgd
    >>> fit = tgd.mle(tgd.embedded("ntg"))
    >>> round(fit.params.q, 3), round(fit.params.alpha, 3)
    (0.811, -0.465)
"""

from ._tgd import (  # noqa: F401
    DataError,
    DescriptiveStats,
    EstimationError,
    FitMethod,
    FitResult,
    FreqEntry,
    FreqTable,
    GeometricFit,
    HazardClass,
    MomentVariant,
    NegBinFit,
    NegBinParams,
    Params,
    PointEstimate,
    ScoreInfo,
    TestKind,
    TestResult,
    cdf,
    chi2_sf,
    classify_hazard,
    compare_json,
    describe,
    em_fit,
    em_posterior,
    embedded,
    estimate_moments,
    estimate_proportions,
    estimate_quantiles,
    factorial_moment,
    fit_geometric,
    fit_negbin,
    hazard,
    load_freq_csv,
    log_pmf,
    loglik,
    louis_se,
    lrt,
    mean,
    mle,
    mode,
    mrl,
    observed_info,
    pgf,
    pmf,
    quantile,
    reversed_hazard,
    run_bias_study_json,
    run_power_study_json,
    sample,
    sample_mixture,
    score,
    score_test,
    second_hazard,
    second_raw_moment,
    sf,
    variance,
    wald_test,
)

__version__ = "0.1.0"
