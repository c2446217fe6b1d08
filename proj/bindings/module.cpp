#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tgd/data.hpp"
#include "tgd/model_compare.hpp"
#include "tgd/reliability.hpp"
#include "tgd/report.hpp"
#include "tgd/simulation.hpp"

namespace py = pybind11;
using namespace tgd;

PYBIND11_MODULE(_tgd, m) {
  m.doc() = "Transmuted geometric distribution: distribution functions, "
            "estimation, tests and Monte-Carlo studies";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<EstimationError>(m, "EstimationError", PyExc_RuntimeError);

  py::class_<TgdParams>(m, "Params")
      .def(py::init<double, double>(), py::arg("q"), py::arg("alpha"))
      .def_readwrite("q", &TgdParams::q)
      .def_readwrite("alpha", &TgdParams::alpha)
      .def("valid", &TgdParams::valid)
      .def("__repr__", [](const TgdParams& p) {
        return "Params(q=" + std::to_string(p.q) +
               ", alpha=" + std::to_string(p.alpha) + ")";
      });

  // distribution
  m.def("pmf", &pmf, py::arg("params"), py::arg("y"));
  m.def("log_pmf", &log_pmf, py::arg("params"), py::arg("y"));
  m.def("sf", &sf, py::arg("params"), py::arg("y"));
  m.def("cdf", &cdf, py::arg("params"), py::arg("y"));
  m.def("quantile", &quantile, py::arg("params"), py::arg("u"));
  m.def("pgf", &pgf, py::arg("params"), py::arg("z"));
  m.def("factorial_moment", &factorial_moment, py::arg("params"), py::arg("r"));
  m.def("mean", &mean, py::arg("params"));
  m.def("variance", &variance, py::arg("params"));
  m.def("second_raw_moment", &second_raw_moment, py::arg("params"));
  m.def("mode", &mode, py::arg("params"));
  m.def(
      "sample",
      [](const TgdParams& p, std::size_t n, std::uint64_t seed) {
        return sample(p, n, RngSeed{seed});
      },
      py::arg("params"), py::arg("n"), py::arg("seed"));
  m.def(
      "sample_mixture",
      [](const TgdParams& p, std::size_t n, std::uint64_t seed) {
        return sample_mixture(p, n, RngSeed{seed});
      },
      py::arg("params"), py::arg("n"), py::arg("seed"));

  // reliability
  py::enum_<HazardClass>(m, "HazardClass")
      .value("Increasing", HazardClass::Increasing)
      .value("Decreasing", HazardClass::Decreasing)
      .value("Constant", HazardClass::Constant);
  m.def("hazard", &hazard, py::arg("params"), py::arg("y"));
  m.def("second_hazard", &second_hazard, py::arg("params"), py::arg("y"));
  m.def("reversed_hazard", &reversed_hazard, py::arg("params"), py::arg("y"));
  m.def("mrl", &mrl, py::arg("params"), py::arg("y"));
  m.def("classify_hazard", &classify_hazard, py::arg("params"));

  // data
  py::class_<FreqEntry>(m, "FreqEntry")
      .def(py::init<std::int64_t, std::int64_t>(), py::arg("value"), py::arg("count"))
      .def_readwrite("value", &FreqEntry::value)
      .def_readwrite("count", &FreqEntry::count);

  py::class_<FreqTable>(m, "FreqTable")
      .def_static("from_entries",
                  [](const std::vector<std::pair<std::int64_t, std::int64_t>>& rows) {
                    std::vector<FreqEntry> entries;
                    for (const auto& [v, c] : rows) entries.push_back({v, c});
                    return FreqTable::from_entries(std::move(entries));
                  },
                  py::arg("rows"))
      .def_static("from_samples",
                  [](const std::vector<std::int64_t>& samples) {
                    return FreqTable::from_samples(samples);
                  },
                  py::arg("samples"))
      .def_property_readonly("n", &FreqTable::total)
      .def("entries",
           [](const FreqTable& t) {
             std::vector<std::pair<std::int64_t, std::int64_t>> rows;
             for (const FreqEntry& e : t.entries())
               rows.emplace_back(e.value, e.count);
             return rows;
           })
      .def("mean", &FreqTable::mean)
      .def("variance", &FreqTable::variance)
      .def("raw_moment2", &FreqTable::raw_moment2);

  m.def("load_freq_csv", &load_freq_csv, py::arg("path"));
  m.def(
      "embedded",
      [](const std::string& name) { return embedded(name).table; },
      py::arg("name"), "Embedded dataset: `ntg` or `doctor_visit`");

  py::class_<DescriptiveStats>(m, "DescriptiveStats")
      .def_readonly("mean", &DescriptiveStats::mean)
      .def_readonly("variance", &DescriptiveStats::variance)
      .def_readonly("index_of_dispersion", &DescriptiveStats::index_of_dispersion)
      .def_readonly("n", &DescriptiveStats::n)
      .def_readonly("max_value", &DescriptiveStats::max_value);
  m.def("describe", &describe, py::arg("data"));

  // estimation
  py::enum_<FitMethod>(m, "FitMethod")
      .value("Proportion", FitMethod::Proportion)
      .value("Quantile", FitMethod::Quantile)
      .value("Moment", FitMethod::Moment)
      .value("MomentMin", FitMethod::MomentMin)
      .value("MLE", FitMethod::MLE)
      .value("EM", FitMethod::EM);

  py::class_<PointEstimate>(m, "PointEstimate")
      .def_readonly("params", &PointEstimate::params)
      .def_readonly("residual", &PointEstimate::residual)
      .def_readonly("boundary", &PointEstimate::boundary);

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("params", &FitResult::params)
      .def_readonly("se_q", &FitResult::se_q)
      .def_readonly("se_alpha", &FitResult::se_alpha)
      .def_readonly("loglik", &FitResult::loglik)
      .def_readonly("aic", &FitResult::aic)
      .def_readonly("method", &FitResult::method)
      .def_readonly("converged", &FitResult::converged)
      .def_readonly("iterations", &FitResult::iterations)
      .def_readonly("boundary", &FitResult::boundary);

  m.def("estimate_proportions", &estimate_proportions, py::arg("data"));
  m.def("estimate_quantiles", &estimate_quantiles, py::arg("data"),
        py::arg("t1"), py::arg("t2"));
  py::enum_<MomentVariant>(m, "MomentVariant")
      .value("Solve", MomentVariant::Solve)
      .value("Minimize", MomentVariant::Minimize);
  m.def("estimate_moments", &estimate_moments, py::arg("data"),
        py::arg("variant") = MomentVariant::Solve);
  m.def("loglik", &loglik, py::arg("params"), py::arg("data"));
  m.def("score", &score, py::arg("params"), py::arg("data"));
  m.def(
      "observed_info",
      [](const TgdParams& p, const FreqTable& data) {
        const InfoMatrix I = observed_info(p, data);
        return std::make_tuple(I.qq, I.qa, I.aa);
      },
      py::arg("params"), py::arg("data"),
      "Observed information entries (qq, q-alpha, alpha-alpha)");
  m.def(
      "mle",
      [](const FreqTable& data) { return mle(data); },
      py::arg("data"));
  m.def("em_posterior", &em_posterior, py::arg("params"), py::arg("y"));
  m.def(
      "em_fit",
      [](const FreqTable& data, std::optional<TgdParams> init, double tol,
         int max_iter) {
        const EmResult result = init ? em_fit(data, *init, tol, max_iter)
                                     : em_fit(data, tol, max_iter);
        std::vector<double> loglik_trace;
        for (const EmState& s : result.trace) loglik_trace.push_back(s.loglik);
        return std::make_pair(result.fit, loglik_trace);
      },
      py::arg("data"), py::arg("init") = std::nullopt, py::arg("tol") = 1e-8,
      py::arg("max_iter") = 500,
      "Returns (FitResult, per-iteration log-likelihood trace)");
  m.def("louis_se", &louis_se, py::arg("params"), py::arg("data"));

  // inference
  m.def("chi2_sf", &chi2_sf, py::arg("x"), py::arg("df") = 1);
  py::enum_<TestKind>(m, "TestKind")
      .value("LRT", TestKind::LRT)
      .value("Score", TestKind::Score)
      .value("Wald", TestKind::Wald);
  py::enum_<ScoreInfo>(m, "ScoreInfo")
      .value("Observed", ScoreInfo::Observed)
      .value("Expected", ScoreInfo::Expected);
  py::class_<TestResult>(m, "TestResult")
      .def_readonly("statistic", &TestResult::statistic)
      .def_readonly("df", &TestResult::df)
      .def_readonly("p_value", &TestResult::p_value)
      .def_readonly("method", &TestResult::method)
      .def_readonly("null_q", &TestResult::null_q);
  m.def("lrt", py::overload_cast<const FreqTable&>(&lrt), py::arg("data"));
  m.def("score_test", &score_test, py::arg("data"),
        py::arg("info") = ScoreInfo::Observed);
  m.def("wald_test", py::overload_cast<const FreqTable&>(&wald_test),
        py::arg("data"));

  // model comparison
  py::class_<GeometricFit>(m, "GeometricFit")
      .def_readonly("q", &GeometricFit::q)
      .def_readonly("loglik", &GeometricFit::loglik)
      .def_readonly("aic", &GeometricFit::aic);
  m.def("fit_geometric", &fit_geometric, py::arg("data"));
  py::class_<NegBinParams>(m, "NegBinParams")
      .def_readonly("r", &NegBinParams::r)
      .def_readonly("p", &NegBinParams::p);
  py::class_<NegBinFit>(m, "NegBinFit")
      .def_readonly("params", &NegBinFit::params)
      .def_readonly("loglik", &NegBinFit::loglik)
      .def_readonly("aic", &NegBinFit::aic)
      .def_readonly("converged", &NegBinFit::converged)
      .def_readonly("boundary", &NegBinFit::boundary);
  m.def("fit_negbin", &fit_negbin, py::arg("data"));
  m.def(
      "compare_json",
      [](const FreqTable& data, const std::string& name) {
        return report_json(compare(data, {}, name));
      },
      py::arg("data"), py::arg("name") = "",
      "Full model-comparison report as a JSON string");

  // Monte-Carlo studies (results as JSON strings)
  m.def(
      "run_bias_study_json",
      [](const std::vector<double>& q_grid, const std::vector<double>& alpha_grid,
         const std::vector<int>& n_grid, int replications, std::uint64_t seed,
         bool with_mle, bool with_em, int threads) {
        BiasStudyConfig config;
        config.q_grid = q_grid;
        config.alpha_grid = alpha_grid;
        config.n_grid = n_grid;
        config.replications = replications;
        config.seed = RngSeed{seed};
        config.with_mle = with_mle;
        config.with_em = with_em;
        config.threads = threads;
        return bias_study_json(run_bias_study(config));
      },
      py::arg("q_grid"), py::arg("alpha_grid"), py::arg("n_grid"),
      py::arg("replications") = 1000, py::arg("seed") = 1,
      py::arg("with_mle") = true, py::arg("with_em") = true,
      py::arg("threads") = 0);
  m.def(
      "run_power_study_json",
      [](const std::vector<double>& q_grid, const std::vector<double>& alpha_grid,
         const std::vector<int>& n_grid, int replications, double level,
         std::uint64_t seed, int threads) {
        PowerStudyConfig config;
        config.q_grid = q_grid;
        config.alpha_grid = alpha_grid;
        config.n_grid = n_grid;
        config.replications = replications;
        config.level = level;
        config.seed = RngSeed{seed};
        config.threads = threads;
        return power_study_json(run_power_study(config));
      },
      py::arg("q_grid"), py::arg("alpha_grid"), py::arg("n_grid"),
      py::arg("replications") = 1000, py::arg("level") = 0.05,
      py::arg("seed") = 1, py::arg("threads") = 0);
}
