#include "tgd/data.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tgd {

namespace {

std::string trim(std::string s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && is_space(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

bool parse_int(const std::string& field, std::int64_t& out) {
  const std::string t = trim(field);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

FreqTable parse_freq_csv(std::istream& in, const std::string& origin) {
  std::vector<FreqEntry> entries;
  std::string line;
  int lineno = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw DataError(origin + ":" + std::to_string(lineno) +
                      ": expected `value,count`");
    std::int64_t value = 0, count = 0;
    const bool ok_value = parse_int(line.substr(0, comma), value);
    const bool ok_count = parse_int(line.substr(comma + 1), count);
    if (!ok_value || !ok_count) {
      if (lineno == 1 && !saw_data) continue;  // header row
      throw DataError(origin + ":" + std::to_string(lineno) +
                      ": non-numeric field");
    }
    if (value < 0)
      throw DataError(origin + ":" + std::to_string(lineno) +
                      ": negative value");
    if (count <= 0)
      throw DataError(origin + ":" + std::to_string(lineno) +
                      ": count must be positive");
    entries.push_back({value, count});
    saw_data = true;
  }
  if (entries.empty()) throw DataError(origin + ": no data rows");
  try {
    return FreqTable::from_entries(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw DataError(origin + ": " + e.what());
  }
}

FreqTable load_freq_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open");
  return parse_freq_csv(in, path);
}

void save_freq_csv(const FreqTable& table, std::ostream& out) {
  out << "value,count\n";
  for (const FreqEntry& e : table.entries())
    out << e.value << ',' << e.count << '\n';
}

void save_freq_csv(const FreqTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError(path + ": cannot open for writing");
  save_freq_csv(table, out);
}

Dataset embedded(const std::string& name) {
  // Numbers of fires in district forests of Greece, 1 July - 31 August 1998
  static const std::vector<FreqEntry> kNtg = {
      {0, 16}, {1, 13}, {2, 14}, {3, 9},  {4, 11}, {5, 13},
      {6, 8},  {7, 4},  {8, 9},  {9, 6},  {10, 3}, {11, 4},
      {12, 6}, {15, 4}, {16, 1}, {20, 1}, {43, 1}};
  // Doctor consultations in a two-week period, 1977-78 Australian Health Survey
  static const std::vector<FreqEntry> kDoctorVisit = {
      {0, 4141}, {1, 782}, {2, 174}, {3, 30}, {4, 24}, {5, 39}};

  if (name == "ntg")
    return Dataset{name, FreqTable::from_entries(kNtg), Dataset::Source::Embedded};
  if (name == "doctor_visit")
    return Dataset{name, FreqTable::from_entries(kDoctorVisit),
                   Dataset::Source::Embedded};
  throw DataError("unknown embedded dataset `" + name +
                  "` (try ntg or doctor_visit)");
}

DescriptiveStats describe(const FreqTable& data) {
  DescriptiveStats s;
  s.mean = data.mean();
  s.variance = data.variance();
  s.index_of_dispersion = s.mean > 0.0 ? s.variance / s.mean : 0.0;
  s.n = data.total();
  s.max_value = data.max_value();
  return s;
}

}  // namespace tgd
