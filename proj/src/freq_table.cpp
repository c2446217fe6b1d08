#include "tgd/freq_table.hpp"

#include <algorithm>
#include <stdexcept>

namespace tgd {

FreqTable FreqTable::from_entries(std::vector<FreqEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const FreqEntry& a, const FreqEntry& b) { return a.value < b.value; });
  std::vector<FreqEntry> merged;
  for (const FreqEntry& e : entries) {
    if (e.count == 0) continue;
    if (e.value < 0) throw std::invalid_argument("FreqTable: negative value");
    if (e.count < 0) throw std::invalid_argument("FreqTable: negative count");
    if (!merged.empty() && merged.back().value == e.value)
      merged.back().count += e.count;
    else
      merged.push_back(e);
  }
  if (merged.empty()) throw std::invalid_argument("FreqTable: empty data");

  FreqTable t;
  t.entries_ = std::move(merged);
  for (const FreqEntry& e : t.entries_) {
    t.n_ += e.count;
    t.sum_ += e.value * e.count;
  }
  if (t.n_ < 2) throw std::invalid_argument("FreqTable: need at least 2 observations");
  return t;
}

FreqTable FreqTable::from_samples(std::span<const std::int64_t> samples) {
  std::vector<std::int64_t> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<FreqEntry> entries;
  for (std::int64_t v : sorted) {
    if (!entries.empty() && entries.back().value == v)
      ++entries.back().count;
    else
      entries.push_back({v, 1});
  }
  return from_entries(std::move(entries));
}

std::int64_t FreqTable::count_at(std::int64_t value) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), value,
      [](const FreqEntry& e, std::int64_t v) { return e.value < v; });
  return (it != entries_.end() && it->value == value) ? it->count : 0;
}

double FreqTable::proportion_at(std::int64_t value) const {
  return static_cast<double>(count_at(value)) / static_cast<double>(n_);
}

double FreqTable::ecdf(std::int64_t t) const {
  std::int64_t c = 0;
  for (const FreqEntry& e : entries_) {
    if (e.value > t) break;
    c += e.count;
  }
  return static_cast<double>(c) / static_cast<double>(n_);
}

double FreqTable::mean() const {
  return static_cast<double>(sum_) / static_cast<double>(n_);
}

double FreqTable::raw_moment2() const {
  double s = 0.0;
  for (const FreqEntry& e : entries_)
    s += static_cast<double>(e.count) * static_cast<double>(e.value) *
         static_cast<double>(e.value);
  return s / static_cast<double>(n_);
}

double FreqTable::variance() const {
  const double m = mean();
  const double n = static_cast<double>(n_);
  return (raw_moment2() - m * m) * n / (n - 1.0);
}

std::vector<std::int64_t> FreqTable::expand() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (const FreqEntry& e : entries_)
    out.insert(out.end(), static_cast<std::size_t>(e.count), e.value);
  return out;
}

}  // namespace tgd
