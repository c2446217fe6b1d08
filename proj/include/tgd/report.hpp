#ifndef TGD_REPORT_HPP
#define TGD_REPORT_HPP

#include <iosfwd>
#include <string>

#include "tgd/model_compare.hpp"
#include "tgd/simulation.hpp"

namespace tgd {

// rounds to `digits` significant digits; all JSON numbers go through this
// so reports are byte-identical across runs
double round_sig(double x, int digits = 6);

// comparison / fit report
std::string report_json(const ComparisonReport& report);
std::string report_text(const ComparisonReport& report);

// descriptives only
std::string describe_json(const std::string& dataset, const DescriptiveStats& stats);
std::string describe_text(const std::string& dataset, const DescriptiveStats& stats);
std::string describe_csv(const std::string& dataset, const DescriptiveStats& stats);

// tests only
std::string tests_json(const std::string& dataset, const std::vector<TestResult>& tests);
std::string tests_text(const std::string& dataset, const std::vector<TestResult>& tests);
std::string tests_csv(const std::string& dataset, const std::vector<TestResult>& tests);

// CSV columns: y, pmf, sf, hazard, second_hazard, reversed_hazard, mrl
void hazard_table_csv(const TgdParams& params, std::int64_t max_y, std::ostream& out);
std::string hazard_table_text(const TgdParams& params, std::int64_t max_y);

// study tables; fixed column order documented in the README
void bias_study_csv(const BiasStudyResult& result, std::ostream& out);
std::string bias_study_json(const BiasStudyResult& result);
void power_study_csv(const PowerStudyResult& result, std::ostream& out);
std::string power_study_json(const PowerStudyResult& result);
std::string trend_text(const TrendReport& report);

}  // namespace tgd

#endif
