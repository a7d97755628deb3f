#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recsel/estimators.hpp"
#include "recsel/montecarlo.hpp"
#include "recsel/records.hpp"

namespace recsel {

// Six significant digits, the precision of every CSV and console number.
std::string format_number(double x);

std::vector<std::string> split_csv_line(std::string_view line);

// Parses a whole field as a finite decimal; DataError names the line.
double parse_number(std::string_view field, std::size_t line_no);

// One decimal per line; blank lines and lines starting with '#' are skipped
// (as is anything after a '#').
std::vector<double> parse_sequence(std::string_view text);

// CSV with a header row; `column` is a header name or a 1-based index.
std::vector<double> parse_csv_column(std::string_view text, std::string_view column);

std::string read_file(const std::string& path);

// Reads a sequence file; plain text unless `column` is given.
std::vector<double> read_sequence(const std::string& path,
                                  const std::optional<std::string>& column = std::nullopt);

// index,time,value
std::string records_to_csv(const RecordSet& records);

// n,estimator_id,estimate,risk_estimate,band_lo,band_hi
std::string estimate_csv_header();
std::string estimate_csv_row(const EstimateReport& report);
// Header plus one row per report, newline terminated.
std::string estimates_to_csv(std::span<const EstimateReport> reports);

// scheme,p,n,estimator,bias,risk,se_bias,se_risk,count
// Undefined standard errors (a single replicate) are written as NA.
std::string summary_to_csv(const SimulationSummary& summary);

}  // namespace recsel
