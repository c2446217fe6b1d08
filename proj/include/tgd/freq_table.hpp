#ifndef TGD_FREQ_TABLE_HPP
#define TGD_FREQ_TABLE_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace tgd {

struct FreqEntry {
  std::int64_t value = 0;
  std::int64_t count = 0;

  bool operator==(const FreqEntry&) const = default;
};

// A count dataset as (value, frequency) pairs with strictly increasing
// values, counts >= 1 and total >= 2.  All estimators work on this
// representation, so the cost of a fit scales with the number of distinct
// values rather than the sample size.
class FreqTable {
 public:
  // merges duplicate values, sorts, validates
  static FreqTable from_entries(std::vector<FreqEntry> entries);
  static FreqTable from_samples(std::span<const std::int64_t> samples);

  const std::vector<FreqEntry>& entries() const { return entries_; }
  std::int64_t total() const { return n_; }
  std::int64_t sum_values() const { return sum_; }
  std::int64_t max_value() const { return entries_.back().value; }

  std::int64_t count_at(std::int64_t value) const;
  double proportion_at(std::int64_t value) const;
  // empirical cdf P_n(Y <= t)
  double ecdf(std::int64_t t) const;

  double mean() const;
  // second raw sample moment (1/n) sum y^2
  double raw_moment2() const;
  // sample variance with the n-1 denominator
  double variance() const;

  // one value per observation, counts expanded
  std::vector<std::int64_t> expand() const;

  bool operator==(const FreqTable& other) const = default;

 private:
  FreqTable() = default;
  std::vector<FreqEntry> entries_;
  std::int64_t n_ = 0;
  std::int64_t sum_ = 0;
};

}  // namespace tgd

#endif
