#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "recsel/rng.hpp"

namespace recsel {

// Simulated upper-alpha critical values t_n(alpha) of the stationarity
// statistic, keyed by the number of records n (n - 1 ratio terms).
struct CriticalValueTable {
  std::vector<int> n_values;
  std::vector<double> alphas;
  // quantiles[row][col] for n_values[row], alphas[col]
  std::vector<std::vector<double>> quantiles;
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;

  bool contains(int n, double alpha) const;
  double at(int n, double alpha) const;
  // Rows strictly decreasing in alpha, all entries positive.
  void validate() const;
};

// mean over i = 2..n of (theta_hat[i] / theta_hat[i-1] - 1)^2.
double test_statistic(std::span<const double> theta_hats);

// One draw of the statistic's null law: the same mean over ratios of iid
// Exp(1) variables Z_1..Z_n.
double simulate_null_T(int n, Rng& rng);

// Null draws for n, replicate r taking stream (n << 32) + r of master_seed.
std::vector<double> simulate_null_sample(int n, std::size_t replications,
                                         std::uint64_t master_seed, unsigned threads = 0);

CriticalValueTable critical_values(std::span<const int> n_values,
                                   std::span<const double> alphas, std::size_t replications,
                                   std::uint64_t master_seed, unsigned threads = 0);

// Values obtained at 1e5 replications for n = 2..10 and
// alpha in {0.01, 0.025, 0.05, 0.1}; used as a fixed comparison table.
CriticalValueTable bundled_reference_table();

enum class Decision { Reject, FailToReject };

std::string_view to_string(Decision d);

// Reject iff T > t_n(alpha). Throws UsageError for a missing cell.
Decision decide(double statistic, int n, double alpha, const CriticalValueTable& table);

// CSV: comment lines "# replications=...", "# seed=...", then a header
// "n,<alpha>,..." and one row per n.
std::string critical_values_to_csv(const CriticalValueTable& table);
CriticalValueTable critical_values_from_csv(std::string_view text);

}  // namespace recsel
