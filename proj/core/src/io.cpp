#include "recsel/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "recsel/errors.hpp"

namespace recsel {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_or_na(double x) { return std::isnan(x) ? "NA" : format_number(x); }

}  // namespace

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

double parse_number(std::string_view field, std::size_t line_no) {
  const std::string_view s = trim(field);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw DataError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(s) +
                    "' as a number");
  }
  if (!std::isfinite(value)) {
    throw DataError("line " + std::to_string(line_no) + ": non-finite value");
  }
  return value;
}

std::vector<double> parse_sequence(std::string_view text) {
  std::vector<double> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.push_back(parse_number(line, line_no));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (out.empty()) throw DataError("sequence input contains no values");
  return out;
}

std::vector<double> parse_csv_column(std::string_view text, std::string_view column) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> index;
  std::vector<double> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fields = split_csv_line(line);
    if (!index) {
      for (std::size_t j = 0; j < fields.size(); ++j) {
        if (fields[j] == column) index = j;
      }
      if (!index) {
        std::size_t k = 0;
        const auto [p, ec] = std::from_chars(column.data(), column.data() + column.size(), k);
        if (ec == std::errc() && p == column.data() + column.size() && k >= 1 &&
            k <= fields.size()) {
          index = k - 1;
        }
      }
      if (!index) throw UsageError("CSV has no column '" + std::string(column) + "'");
      continue;
    }
    if (*index >= fields.size()) {
      throw DataError("line " + std::to_string(line_no) + ": missing column");
    }
    out.push_back(parse_number(fields[*index], line_no));
  }
  if (out.empty()) throw DataError("CSV column contains no values");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<double> read_sequence(const std::string& path,
                                  const std::optional<std::string>& column) {
  const std::string text = read_file(path);
  return column ? parse_csv_column(text, *column) : parse_sequence(text);
}

std::string records_to_csv(const RecordSet& records) {
  std::ostringstream out;
  out << "index,time,value\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    out << i + 1 << ',' << records.times[i] << ',' << format_number(records.values[i]) << "\n";
  }
  return out.str();
}

std::string estimate_csv_header() {
  return "n,estimator_id,estimate,risk_estimate,band_lo,band_hi";
}

std::string estimate_csv_row(const EstimateReport& r) {
  std::ostringstream out;
  out << r.n << ',' << to_string(r.estimator_id) << ',' << format_number(r.estimate) << ','
      << format_number(r.risk_estimate) << ',' << format_number(r.band_lower) << ','
      << format_number(r.band_upper);
  return out.str();
}

std::string estimates_to_csv(std::span<const EstimateReport> reports) {
  std::string out = estimate_csv_header() + "\n";
  for (const auto& r : reports) out += estimate_csv_row(r) + "\n";
  return out;
}

std::string summary_to_csv(const SimulationSummary& summary) {
  std::ostringstream out;
  out << "scheme,p,n,estimator,bias,risk,se_bias,se_risk,count\n";
  for (const auto& c : summary.cells) {
    out << to_string(summary.scheme) << ','
        << (summary.family_kind == FamilyKind::GammaType ? format_number(summary.shape_p)
                                                         : std::string("NA"))
        << ',' << c.n << ',' << to_string(c.estimator) << ',' << format_or_na(c.bias) << ','
        << format_or_na(c.risk) << ',' << format_or_na(c.se_bias) << ','
        << format_or_na(c.se_risk) << ',' << c.count << "\n";
  }
  return out.str();
}

}  // namespace recsel
