#ifndef TGD_DATA_HPP
#define TGD_DATA_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "tgd/freq_table.hpp"

namespace tgd {

// data-layer failures; the CLI maps these to exit code 1
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dataset {
  enum class Source { Embedded, File };
  std::string name;
  FreqTable table;
  Source source = Source::Embedded;
};

// Two-column CSV `value,count`, optional header (detected by a non-numeric
// first field), LF or CRLF.  Duplicate values merge by summing counts.
FreqTable load_freq_csv(const std::string& path);
FreqTable parse_freq_csv(std::istream& in, const std::string& origin = "<stream>");
void save_freq_csv(const FreqTable& table, std::ostream& out);
void save_freq_csv(const FreqTable& table, const std::string& path);

// The two reference datasets: "ntg" (forest fires in Greece, n = 123) and
// "doctor_visit" (doctor consultations, n = 5190).
Dataset embedded(const std::string& name);

struct DescriptiveStats {
  double mean = 0.0;
  double variance = 0.0;  // n-1 denominator
  double index_of_dispersion = 0.0;
  std::int64_t n = 0;
  std::int64_t max_value = 0;
};

DescriptiveStats describe(const FreqTable& data);

}  // namespace tgd

#endif
