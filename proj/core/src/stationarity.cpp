#include "recsel/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recsel/errors.hpp"
#include "recsel/io.hpp"
#include "recsel/parallel.hpp"
#include "recsel/stats.hpp"

namespace recsel {

namespace {

constexpr double kAlphaMatch = 1e-12;

int find_alpha(const CriticalValueTable& t, double alpha) {
  for (std::size_t j = 0; j < t.alphas.size(); ++j) {
    if (std::abs(t.alphas[j] - alpha) <= kAlphaMatch) return static_cast<int>(j);
  }
  return -1;
}

int find_n(const CriticalValueTable& t, int n) {
  auto it = std::find(t.n_values.begin(), t.n_values.end(), n);
  return it == t.n_values.end() ? -1 : static_cast<int>(it - t.n_values.begin());
}

}  // namespace

bool CriticalValueTable::contains(int n, double alpha) const {
  return find_n(*this, n) >= 0 && find_alpha(*this, alpha) >= 0;
}

double CriticalValueTable::at(int n, double alpha) const {
  const int row = find_n(*this, n);
  const int col = find_alpha(*this, alpha);
  if (row < 0 || col < 0) {
    std::ostringstream msg;
    msg << "critical value table has no cell for n = " << n << ", alpha = " << alpha;
    throw UsageError(msg.str());
  }
  return quantiles[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

void CriticalValueTable::validate() const {
  if (quantiles.size() != n_values.size()) throw DataError("critical value table: row count");
  std::vector<std::size_t> order(alphas.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return alphas[a] < alphas[b]; });
  for (std::size_t i = 0; i < quantiles.size(); ++i) {
    const auto& row = quantiles[i];
    if (row.size() != alphas.size()) throw DataError("critical value table: column count");
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (!(row[order[k]] > 0.0)) {
        throw DataError("critical value table: entries must be positive");
      }
      if (k > 0 && !(row[order[k]] < row[order[k - 1]])) {
        std::ostringstream msg;
        msg << "critical value table: row n = " << n_values[i]
            << " is not strictly decreasing in alpha";
        throw DataError(msg.str());
      }
    }
  }
}

double test_statistic(std::span<const double> theta_hats) {
  if (theta_hats.size() < 2) throw UsageError("the test statistic needs at least two estimates");
  for (double t : theta_hats) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      std::ostringstream msg;
      msg << "estimates must be positive and finite, got " << t;
      throw DomainError(msg.str());
    }
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < theta_hats.size(); ++i) {
    const double d = theta_hats[i] / theta_hats[i - 1] - 1.0;
    sum += d * d;
  }
  return sum / static_cast<double>(theta_hats.size() - 1);
}

double simulate_null_T(int n, Rng& rng) {
  if (n < 2) throw UsageError("null simulation needs n >= 2");
  double prev = rng.exponential();
  double sum = 0.0;
  for (int i = 2; i <= n; ++i) {
    const double z = rng.exponential();
    const double d = z / prev - 1.0;
    sum += d * d;
    prev = z;
  }
  return sum / static_cast<double>(n - 1);
}

std::vector<double> simulate_null_sample(int n, std::size_t replications,
                                         std::uint64_t master_seed, unsigned threads) {
  if (n < 2) throw UsageError("null simulation needs n >= 2");
  std::vector<double> out(replications);
  const std::uint64_t base = static_cast<std::uint64_t>(n) << 32;
  parallel_for(replications, threads, [&](std::size_t r) {
    Rng rng = Rng::for_stream(master_seed, base + r);
    out[r] = simulate_null_T(n, rng);
  });
  return out;
}

CriticalValueTable critical_values(std::span<const int> n_values,
                                   std::span<const double> alphas, std::size_t replications,
                                   std::uint64_t master_seed, unsigned threads) {
  if (replications < 1000) throw UsageError("critical values need at least 1000 replications");
  if (n_values.empty() || alphas.empty()) throw UsageError("empty n or alpha list");
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw UsageError("alpha must lie in (0, 1)");
  }
  CriticalValueTable table;
  table.n_values.assign(n_values.begin(), n_values.end());
  table.alphas.assign(alphas.begin(), alphas.end());
  table.replications = replications;
  table.master_seed = master_seed;
  for (int n : n_values) {
    auto sample = simulate_null_sample(n, replications, master_seed, threads);
    std::sort(sample.begin(), sample.end());
    std::vector<double> row;
    row.reserve(alphas.size());
    for (double a : alphas) row.push_back(upper_quantile_sorted(sample, a));
    table.quantiles.push_back(std::move(row));
  }
  return table;
}

CriticalValueTable bundled_reference_table() {
  CriticalValueTable t;
  t.n_values = {2, 3, 4, 5, 6, 7, 8, 9, 10};
  t.alphas = {0.01, 0.025, 0.05, 0.1};
  t.quantiles = {
      {8645.63, 1368.24, 326.02, 64.61},     {19003.73, 3113.96, 723.25, 164.76},
      {27929.12, 4681.26, 1093.01, 264.36},  {37018.72, 6343.56, 1529.97, 355.73},
      {49769.98, 7707.69, 2007.57, 456.78},  {64315.21, 9211.87, 2388.29, 563.19},
      {70630.56, 10801.06, 2698.59, 655.51}, {73372.31, 11655.77, 3131.44, 747.15},
      {92847.93, 13727.53, 3500.69, 883.22},
  };
  t.replications = 100000;
  t.master_seed = 0;
  return t;
}

std::string_view to_string(Decision d) {
  return d == Decision::Reject ? "Reject" : "FailToReject";
}

Decision decide(double statistic, int n, double alpha, const CriticalValueTable& table) {
  return statistic > table.at(n, alpha) ? Decision::Reject : Decision::FailToReject;
}

std::string critical_values_to_csv(const CriticalValueTable& table) {
  std::ostringstream out;
  out << "# replications=" << table.replications << "\n";
  out << "# seed=" << table.master_seed << "\n";
  out << "n";
  for (double a : table.alphas) out << ',' << format_number(a);
  out << "\n";
  for (std::size_t i = 0; i < table.n_values.size(); ++i) {
    out << table.n_values[i];
    for (double q : table.quantiles[i]) out << ',' << format_number(q);
    out << "\n";
  }
  return out.str();
}

CriticalValueTable critical_values_from_csv(std::string_view text) {
  CriticalValueTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      if (key == "replications") table.replications = std::stoull(value);
      if (key == "seed") table.master_seed = std::stoull(value);
      continue;
    }
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.empty() || fields[0] != "n") {
        throw DataError("critical value CSV line " + std::to_string(line_no) +
                        ": expected header starting with 'n'");
      }
      for (std::size_t j = 1; j < fields.size(); ++j) {
        table.alphas.push_back(parse_number(fields[j], line_no));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != table.alphas.size() + 1) {
      throw DataError("critical value CSV line " + std::to_string(line_no) +
                      ": wrong number of fields");
    }
    table.n_values.push_back(static_cast<int>(parse_number(fields[0], line_no)));
    std::vector<double> row;
    for (std::size_t j = 1; j < fields.size(); ++j) row.push_back(parse_number(fields[j], line_no));
    table.quantiles.push_back(std::move(row));
  }
  if (!header_seen) throw DataError("critical value CSV has no header");
  table.validate();
  return table;
}

}  // namespace recsel
