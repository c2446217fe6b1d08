#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <sstream>

#include "tgd/data.hpp"
#include "tgd/model_compare.hpp"
#include "tgd/report.hpp"

using namespace tgd;

TEST_CASE("freq table construction") {
  const FreqTable t = FreqTable::from_entries({{2, 3}, {0, 1}, {2, 4}, {5, 1}});
  REQUIRE(t.entries().size() == 3);
  CHECK(t.entries()[1].value == 2);
  CHECK(t.entries()[1].count == 7);  // duplicates merged
  CHECK(t.total() == 9);
  CHECK(t.max_value() == 5);
  CHECK_THROWS_AS(FreqTable::from_entries({{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FreqTable::from_entries({{-1, 2}, {0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(FreqTable::from_entries({}), std::invalid_argument);
}

TEST_CASE("csv parsing") {
  std::istringstream in("0,16\r\n1,13\n");
  const FreqTable t = parse_freq_csv(in, "test");
  CHECK(t.total() == 29);
  CHECK(t.count_at(0) == 16);

  std::istringstream with_header("value,count\n2,3\n2,4\n");
  const FreqTable merged = parse_freq_csv(with_header, "test");
  REQUIRE(merged.entries().size() == 1);
  CHECK(merged.entries()[0].count == 7);

  std::istringstream negative("0,5\n-2,3\n");
  CHECK_THROWS_WITH_AS(parse_freq_csv(negative, "f"),
                       doctest::Contains("f:2"), DataError);
  std::istringstream garbage("0,5\nfoo,3\n");
  CHECK_THROWS_AS(parse_freq_csv(garbage, "f"), DataError);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_freq_csv(empty, "f"), DataError);
  std::istringstream zero_count("0,5\n1,0\n");
  CHECK_THROWS_AS(parse_freq_csv(zero_count, "f"), DataError);
}

TEST_CASE("csv round trip") {
  const FreqTable t = embedded("ntg").table;
  std::ostringstream out;
  save_freq_csv(t, out);
  std::istringstream in(out.str());
  CHECK(parse_freq_csv(in, "round") == t);
}

TEST_CASE("embedded datasets are byte-exact") {
  const Dataset ntg = embedded("ntg");
  CHECK(ntg.table.total() == 123);
  CHECK(ntg.table.sum_values() == 664);
  const std::vector<FreqEntry> expected_ntg = {
      {0, 16}, {1, 13}, {2, 14}, {3, 9},  {4, 11}, {5, 13},
      {6, 8},  {7, 4},  {8, 9},  {9, 6},  {10, 3}, {11, 4},
      {12, 6}, {15, 4}, {16, 1}, {20, 1}, {43, 1}};
  CHECK(ntg.table.entries() == expected_ntg);

  // FNV-1a over (value, count) pairs as a regression lock
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= std::uint64_t(v >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (const FreqEntry& e : ntg.table.entries()) {
    mix(e.value);
    mix(e.count);
  }
  CHECK(h == 13370305125835594004ULL);

  const Dataset doc = embedded("doctor_visit");
  CHECK(doc.table.total() == 5190);
  CHECK(doc.table.entries() ==
        std::vector<FreqEntry>{{0, 4141}, {1, 782}, {2, 174}, {3, 30}, {4, 24}, {5, 39}});
  CHECK(describe(doc.table).mean == doctest::Approx(0.291).epsilon(0.001 / 0.291));

  CHECK_THROWS_AS(embedded("nope"), DataError);
}

TEST_CASE("descriptives reproduce the published table") {
  const DescriptiveStats ntg = describe(embedded("ntg").table);
  CHECK(ntg.mean == doctest::Approx(5.398).epsilon(0.002 / 5.398));
  CHECK(ntg.variance == doctest::Approx(30.045).epsilon(0.002 / 30.045));
  CHECK(ntg.index_of_dispersion == doctest::Approx(5.565).epsilon(0.002 / 5.565));
  const DescriptiveStats doc = describe(embedded("doctor_visit").table);
  CHECK(doc.mean == doctest::Approx(0.291).epsilon(0.002 / 0.291));
  CHECK(doc.variance == doctest::Approx(0.514).epsilon(0.002 / 0.514));
  CHECK(doc.index_of_dispersion == doctest::Approx(1.765).epsilon(0.002 / 1.765));
}

TEST_CASE("descriptives on constant data") {
  const FreqTable t = FreqTable::from_entries({{10, 5}});
  const DescriptiveStats s = describe(t);
  CHECK(s.variance == 0.0);
  CHECK(s.index_of_dispersion == 0.0);
}

TEST_CASE("geometric fit closed form") {
  const FreqTable unit_mean = FreqTable::from_entries({{0, 2}, {2, 2}});
  CHECK(fit_geometric(unit_mean).q == doctest::Approx(0.5).epsilon(1e-12));

  const GeometricFit ntg = fit_geometric(embedded("ntg").table);
  CHECK(ntg.q == doctest::Approx(5.398 / 6.398).epsilon(1e-3));
  CHECK(ntg.loglik == doctest::Approx(-341.14).epsilon(0.01 / 341.14));
  CHECK(ntg.aic == doctest::Approx(-2.0 * ntg.loglik + 2.0).epsilon(1e-12));

  const GeometricFit doc = fit_geometric(embedded("doctor_visit").table);
  CHECK(doc.q == doctest::Approx(0.291 / 1.291).epsilon(1e-3));
}

TEST_CASE("negative binomial fits reproduce the published table") {
  const NegBinFit ntg = fit_negbin(embedded("ntg").table);
  CHECK(ntg.converged);
  CHECK(ntg.params.r == doctest::Approx(1.336).epsilon(0.01 / 1.336));
  CHECK(ntg.params.p == doctest::Approx(0.802).epsilon(0.01 / 0.802));
  CHECK(ntg.loglik == doctest::Approx(-339.649).epsilon(0.05 / 339.649));
  CHECK(ntg.aic == doctest::Approx(683.299).epsilon(0.1 / 683.299));
  CHECK(ntg.se_r.has_value());

  const NegBinFit doc = fit_negbin(embedded("doctor_visit").table);
  CHECK(doc.params.r == doctest::Approx(0.439).epsilon(0.01 / 0.439));
  CHECK(doc.params.p == doctest::Approx(0.399).epsilon(0.01 / 0.399));
  CHECK(doc.loglik == doctest::Approx(-3533.28).epsilon(0.1 / 3533.28));

  // the NB mean r p / (1-p) matches the sample mean at the optimum
  CHECK(ntg.params.r * ntg.params.p / (1.0 - ntg.params.p) ==
        doctest::Approx(5.398).epsilon(0.01));
}

TEST_CASE("negative binomial flags equidispersed data") {
  // Poisson(2) draws: variance ~ mean, r runs to its cap
  Rng rng(RngSeed{6021023});
  std::vector<std::int64_t> draws;
  for (int i = 0; i < 10000; ++i) {
    // inverse-transform Poisson(2)
    double u = rng.uniform();
    double p = std::exp(-2.0);
    double acc = p;
    std::int64_t k = 0;
    while (u > acc && k < 100) {
      ++k;
      p *= 2.0 / double(k);
      acc += p;
    }
    draws.push_back(k);
  }
  const NegBinFit fit = fit_negbin(FreqTable::from_samples(draws));
  CHECK(fit.boundary);
}

TEST_CASE("compare flags the TGD as best on both datasets") {
  const ComparisonReport ntg = compare(embedded("ntg").table, {}, "ntg");
  CHECK(ntg.best_model == "tgd");
  double aic_tgd = 0.0, aic_nb = 0.0;
  for (const ModelRow& row : ntg.models) {
    if (row.model == "tgd_mle") aic_tgd = row.aic;
    if (row.model == "negbin") aic_nb = row.aic;
    if (!row.estimates.empty())
      CHECK(row.aic == doctest::Approx(-2.0 * row.loglik +
                                       2.0 * row.free_parameters)
                           .epsilon(1e-9));
  }
  CHECK(aic_tgd == doctest::Approx(682.708).epsilon(0.05 / 682.708));
  CHECK(aic_nb == doctest::Approx(683.299).epsilon(0.1 / 683.299));
  CHECK(aic_tgd < aic_nb);
  CHECK(ntg.tests.size() == 3);

  const ComparisonReport doc = compare(embedded("doctor_visit").table, {}, "doctor_visit");
  CHECK(doc.best_model == "tgd");
}

TEST_CASE("compare with a single model emits a single row") {
  CompareOptions opts;
  opts.tgd_mle = opts.tgd_em = opts.negbin = false;
  opts.tests = false;
  const ComparisonReport r = compare(embedded("ntg").table, opts, "ntg");
  REQUIRE(r.models.size() == 1);
  CHECK(r.models[0].model == "geometric");
  CHECK(r.models[0].best);
  CHECK(r.best_model == "geometric");
  CHECK(r.tests.empty());
  CHECK_THROWS_AS(compare(embedded("ntg").table,
                          CompareOptions{false, false, false, false, false}, ""),
                  std::invalid_argument);
}

TEST_CASE("json report is deterministic and rounded") {
  CHECK(round_sig(0.1234567890123, 6) == doctest::Approx(0.123457).epsilon(1e-12));
  CHECK(round_sig(-339.3538051, 6) == doctest::Approx(-339.354).epsilon(1e-9));
  CHECK(round_sig(0.0, 6) == 0.0);
  const ComparisonReport r1 = compare(embedded("ntg").table, {}, "ntg");
  const ComparisonReport r2 = compare(embedded("ntg").table, {}, "ntg");
  CHECK(report_json(r1) == report_json(r2));
  CHECK(report_json(r1).find("\"best_model\": \"tgd\"") != std::string::npos);
  CHECK(report_json(r1).find("682.708") != std::string::npos);
  const std::string text = report_text(r1);
  CHECK(text.find("min AIC") != std::string::npos);
}

TEST_CASE("hazard table emits all columns") {
  std::ostringstream out;
  hazard_table_csv({0.6, -0.4}, 5, out);
  const std::string s = out.str();
  CHECK(s.find("y,pmf,sf,hazard,second_hazard,reversed_hazard,mrl") == 0);
  int lines = 0;
  for (char ch : s)
    if (ch == '\n') ++lines;
  CHECK(lines == 7);  // header + y = 0..5
}
