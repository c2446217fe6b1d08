#include "tgd/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tgd/reliability.hpp"

namespace tgd {

using ordered_json = nlohmann::ordered_json;

double round_sig(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

namespace {

ordered_json num(double x) { return round_sig(x); }

ordered_json stats_json(const DescriptiveStats& s) {
  ordered_json j;
  j["n"] = s.n;
  j["mean"] = num(s.mean);
  j["variance"] = num(s.variance);
  j["index_of_dispersion"] = num(s.index_of_dispersion);
  j["max_value"] = s.max_value;
  return j;
}

ordered_json test_json(const TestResult& t) {
  ordered_json j;
  j["method"] = to_string(t.method);
  j["statistic"] = num(t.statistic);
  j["df"] = t.df;
  j["p_value"] = num(t.p_value);
  j["null_q"] = num(t.null_q);
  if (t.alt_fit) {
    j["alt_q"] = num(t.alt_fit->q);
    j["alt_alpha"] = num(t.alt_fit->alpha);
  }
  return j;
}

std::string fixed(double x, int prec = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << x;
  return os.str();
}

}  // namespace

std::string report_json(const ComparisonReport& report) {
  ordered_json j;
  j["dataset"] = report.dataset;
  j["descriptives"] = stats_json(report.stats);
  j["models"] = ordered_json::array();
  for (const ModelRow& row : report.models) {
    ordered_json m;
    m["model"] = row.model;
    ordered_json est;
    for (const auto& [k, v] : row.estimates) est[k] = num(v);
    m["estimates"] = est;
    if (!row.std_errors.empty()) {
      ordered_json se;
      for (const auto& [k, v] : row.std_errors) se[k] = num(v);
      m["se"] = se;
    }
    if (!row.estimates.empty()) {
      m["loglik"] = num(row.loglik);
      // recomputed from loglik so the report cannot drift from it
      m["aic"] = num(-2.0 * row.loglik + 2.0 * row.free_parameters);
      m["free_parameters"] = row.free_parameters;
      m["converged"] = row.converged;
      m["best"] = row.best;
    }
    if (!row.error.empty()) m["error"] = row.error;
    j["models"].push_back(m);
  }
  if (!report.tests.empty()) {
    j["tests"] = ordered_json::array();
    for (const TestResult& t : report.tests) j["tests"].push_back(test_json(t));
  }
  if (!report.best_model.empty()) j["best_model"] = report.best_model;
  return j.dump(2) + "\n";
}

std::string report_text(const ComparisonReport& report) {
  std::ostringstream os;
  if (!report.dataset.empty()) os << "dataset: " << report.dataset << "\n";
  const DescriptiveStats& s = report.stats;
  os << "n=" << s.n << "  mean=" << fixed(s.mean, 3)
     << "  variance=" << fixed(s.variance, 3)
     << "  dispersion=" << fixed(s.index_of_dispersion, 3) << "\n\n";

  os << std::left << std::setw(11) << "model" << std::setw(26) << "estimates"
     << std::setw(12) << "loglik" << std::setw(11) << "aic"
     << "note\n";
  for (const ModelRow& row : report.models) {
    os << std::left << std::setw(11) << row.model;
    if (!row.estimates.empty()) {
      std::ostringstream est;
      for (std::size_t i = 0; i < row.estimates.size(); ++i) {
        if (i) est << ", ";
        est << row.estimates[i].first << "=" << fixed(row.estimates[i].second, 4);
      }
      os << std::setw(26) << est.str() << std::setw(12) << fixed(row.loglik, 3)
         << std::setw(11) << fixed(row.aic, 3);
      if (row.best) os << "<- min AIC";
      if (!row.error.empty()) os << (row.best ? "; " : "") << row.error;
    } else {
      os << "failed: " << row.error;
    }
    os << "\n";
  }
  if (!report.tests.empty()) {
    os << "\n" << std::left << std::setw(8) << "test" << std::setw(12)
       << "statistic" << std::setw(5) << "df" << "p_value\n";
    for (const TestResult& t : report.tests) {
      os << std::left << std::setw(8) << to_string(t.method) << std::setw(12)
         << fixed(t.statistic, 4) << std::setw(5) << t.df
         << fixed(t.p_value, 6) << "\n";
    }
  }
  return os.str();
}

std::string describe_json(const std::string& dataset, const DescriptiveStats& stats) {
  ordered_json j;
  j["dataset"] = dataset;
  j["descriptives"] = stats_json(stats);
  return j.dump(2) + "\n";
}

std::string describe_text(const std::string& dataset, const DescriptiveStats& stats) {
  std::ostringstream os;
  if (!dataset.empty()) os << "dataset: " << dataset << "\n";
  os << "n                    " << stats.n << "\n"
     << "mean                 " << fixed(stats.mean, 3) << "\n"
     << "variance             " << fixed(stats.variance, 3) << "\n"
     << "index of dispersion  " << fixed(stats.index_of_dispersion, 3) << "\n"
     << "max value            " << stats.max_value << "\n";
  return os.str();
}

std::string describe_csv(const std::string& dataset, const DescriptiveStats& stats) {
  std::ostringstream os;
  os << "dataset,n,mean,variance,index_of_dispersion,max_value\n"
     << dataset << ',' << stats.n << ',' << round_sig(stats.mean) << ','
     << round_sig(stats.variance) << ',' << round_sig(stats.index_of_dispersion)
     << ',' << stats.max_value << "\n";
  return os.str();
}

std::string tests_json(const std::string& dataset, const std::vector<TestResult>& tests) {
  ordered_json j;
  j["dataset"] = dataset;
  j["tests"] = ordered_json::array();
  for (const TestResult& t : tests) j["tests"].push_back(test_json(t));
  return j.dump(2) + "\n";
}

std::string tests_text(const std::string& dataset, const std::vector<TestResult>& tests) {
  std::ostringstream os;
  if (!dataset.empty()) os << "dataset: " << dataset << "\n";
  os << std::left << std::setw(8) << "test" << std::setw(12) << "statistic"
     << std::setw(5) << "df" << "p_value\n";
  for (const TestResult& t : tests)
    os << std::left << std::setw(8) << to_string(t.method) << std::setw(12)
       << fixed(t.statistic, 4) << std::setw(5) << t.df << fixed(t.p_value, 6)
       << "\n";
  return os.str();
}

std::string tests_csv(const std::string& dataset, const std::vector<TestResult>& tests) {
  std::ostringstream os;
  os << "dataset,test,statistic,df,p_value\n";
  for (const TestResult& t : tests)
    os << dataset << ',' << to_string(t.method) << ',' << round_sig(t.statistic)
       << ',' << t.df << ',' << round_sig(t.p_value) << "\n";
  return os.str();
}

void hazard_table_csv(const TgdParams& params, std::int64_t max_y, std::ostream& out) {
  out << "y,pmf,sf,hazard,second_hazard,reversed_hazard,mrl\n";
  for (std::int64_t y = 0; y <= max_y; ++y) {
    out << y << ',' << round_sig(pmf(params, y)) << ',' << round_sig(sf(params, y))
        << ',' << round_sig(hazard(params, y)) << ','
        << round_sig(second_hazard(params, y)) << ','
        << round_sig(reversed_hazard(params, y)) << ',' << round_sig(mrl(params, y))
        << "\n";
  }
}

std::string hazard_table_text(const TgdParams& params, std::int64_t max_y) {
  std::ostringstream os;
  os << std::left << std::setw(5) << "y" << std::setw(11) << "pmf"
     << std::setw(11) << "sf" << std::setw(11) << "hazard" << std::setw(11)
     << "2nd_haz" << std::setw(11) << "rev_haz" << "mrl\n";
  for (std::int64_t y = 0; y <= max_y; ++y) {
    os << std::left << std::setw(5) << y << std::setw(11)
       << fixed(pmf(params, y), 6) << std::setw(11) << fixed(sf(params, y), 6)
       << std::setw(11) << fixed(hazard(params, y), 6) << std::setw(11)
       << fixed(second_hazard(params, y), 6) << std::setw(11)
       << fixed(reversed_hazard(params, y), 6) << fixed(mrl(params, y), 6)
       << "\n";
  }
  return os.str();
}

namespace {

ordered_json bias_config_json(const BiasStudyConfig& c) {
  ordered_json j;
  j["q_grid"] = c.q_grid;
  j["alpha_grid"] = c.alpha_grid;
  j["n_grid"] = c.n_grid;
  j["replications"] = c.replications;
  j["seed"] = c.seed.value;
  j["methods"] = ordered_json::array();
  if (c.with_mle) j["methods"].push_back("mle");
  if (c.with_em) j["methods"].push_back("em");
  return j;
}

ordered_json power_config_json(const PowerStudyConfig& c) {
  ordered_json j;
  j["q_grid"] = c.q_grid;
  j["alpha_grid"] = c.alpha_grid;
  j["n_grid"] = c.n_grid;
  j["replications"] = c.replications;
  j["level"] = num(c.level);
  j["seed"] = c.seed.value;
  j["score_info"] = c.score_info == ScoreInfo::Expected ? "expected" : "observed";
  return j;
}

}  // namespace

void bias_study_csv(const BiasStudyResult& result, std::ostream& out) {
  out << "q,alpha,n,method,replications,failures,bias_q,bias_alpha,se_q,se_alpha,"
         "mse_q,mse_alpha\n";
  for (const BiasCell& c : result.cells) {
    out << round_sig(c.q) << ',' << round_sig(c.alpha) << ',' << c.n << ','
        << to_string(c.method) << ',' << c.replications << ',' << c.failures
        << ',' << round_sig(c.bias_q) << ',' << round_sig(c.bias_alpha) << ','
        << round_sig(c.se_q) << ',' << round_sig(c.se_alpha) << ','
        << round_sig(c.mse_q) << ',' << round_sig(c.mse_alpha) << "\n";
  }
}

std::string bias_study_json(const BiasStudyResult& result) {
  ordered_json j;
  j["study"] = "bias";
  j["config"] = bias_config_json(result.config);
  j["cells"] = ordered_json::array();
  for (const BiasCell& c : result.cells) {
    ordered_json cj;
    cj["q"] = num(c.q);
    cj["alpha"] = num(c.alpha);
    cj["n"] = c.n;
    cj["method"] = to_string(c.method);
    cj["replications"] = c.replications;
    cj["failures"] = c.failures;
    cj["bias_q"] = num(c.bias_q);
    cj["bias_alpha"] = num(c.bias_alpha);
    cj["se_q"] = num(c.se_q);
    cj["se_alpha"] = num(c.se_alpha);
    cj["mse_q"] = num(c.mse_q);
    cj["mse_alpha"] = num(c.mse_alpha);
    j["cells"].push_back(cj);
  }
  return j.dump(2) + "\n";
}

void power_study_csv(const PowerStudyResult& result, std::ostream& out) {
  out << "q,alpha,n,level,replications,failures,power_lrt,power_score,power_wald\n";
  for (const PowerCell& c : result.cells) {
    out << round_sig(c.q) << ',' << round_sig(c.alpha) << ',' << c.n << ','
        << round_sig(result.config.level) << ',' << c.replications << ','
        << c.failures << ',' << round_sig(c.power_lrt) << ','
        << round_sig(c.power_score) << ',' << round_sig(c.power_wald) << "\n";
  }
}

std::string power_study_json(const PowerStudyResult& result) {
  ordered_json j;
  j["study"] = "power";
  j["config"] = power_config_json(result.config);
  j["cells"] = ordered_json::array();
  for (const PowerCell& c : result.cells) {
    ordered_json cj;
    cj["q"] = num(c.q);
    cj["alpha"] = num(c.alpha);
    cj["n"] = c.n;
    cj["replications"] = c.replications;
    cj["failures"] = c.failures;
    cj["power_lrt"] = num(c.power_lrt);
    cj["power_score"] = num(c.power_score);
    cj["power_wald"] = num(c.power_wald);
    j["cells"].push_back(cj);
  }
  return j.dump(2) + "\n";
}

std::string trend_text(const TrendReport& report) {
  std::ostringstream os;
  os << "trend report (slack " << report.slack << ")\n";
  for (const TrendLine& l : report.lines) {
    os << std::left << std::setw(34) << l.family << std::setw(26) << l.metric
       << l.verdict;
    if (l.verdict == "violation") os << " (worst step " << fixed(l.worst_step, 4) << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace tgd
