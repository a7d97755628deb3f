#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "recsel/montecarlo.hpp"

namespace recsel {

// Diagnostics for the large-n behaviour of records from the exponential-base
// hazard family. Each replicate runs until its n-th record with no cap on the
// number of observations.

// Normalizing constants of an extreme value domain, evaluated at the
// cumulative inverse-parameter sum S = sum_j 1/theta_j.
struct ExtremeDomain {
  std::function<double(double)> location;  // a(S)
  std::function<double(double)> scale;     // b(S)
  std::function<double(double)> limit_cdf; // Psi

  static ExtremeDomain gumbel();
};

struct NormalizedRecordSample {
  double u_star_n = 0.0;
  double u_star_prev = 0.0;
  double t_star = 0.0;
  int n = 0;
};

struct AsymptoticsConfig {
  ParameterSequenceModel theta_model = ParameterSequenceModel::make_constant(1.0);
  std::size_t replications = 10000;
  std::uint64_t master_seed = kDefaultSeed;
  unsigned threads = 0;
};

// Per replicate: U*_n = (U_n - a(S)) / b(S), U*_{n-1} likewise with the same
// S = S(T_n), and T*_n = (log S(T_n) - n) / sqrt(n). Requires n >= 2.
std::vector<NormalizedRecordSample> normalized_sample(const AsymptoticsConfig& config, int n,
                                                      const ExtremeDomain& domain =
                                                          ExtremeDomain::gumbel());

// Limit of P(U*_n <= y, U*_{n-1} <= z) in the Gumbel domain.
double limit_joint_cdf(double y, double z);

double empirical_joint_cdf(std::span<const NormalizedRecordSample> sample, double y, double z);

// Largest |empirical - limit| over all grid pairs (y, z) with z < y.
double joint_cdf_deviation(std::span<const NormalizedRecordSample> sample,
                           std::span<const double> grid);

double marginal_ks(std::span<const NormalizedRecordSample> sample,
                   const ExtremeDomain& domain = ExtremeDomain::gumbel());
double t_star_ks(std::span<const NormalizedRecordSample> sample);

// Sample correlation of ((H_{n-1} - n)/sqrt(n), (H_n - n)/sqrt(n)) where H_k
// is the cumulative hazard of the k-th record. n < 2 is a usage error.
double frechet_correlation(const AsymptoticsConfig& config, int n);

struct RiskRatePoint {
  int n = 0;
  double risk = 0.0;
  double risk_over_n = 0.0;
  double se = 0.0;  // standard error of risk_over_n
};

// Simulated risk of the UMVUE H_n - H_{n-1} divided by n, for each n.
std::vector<RiskRatePoint> risk_rate(const AsymptoticsConfig& config,
                                     std::span<const int> n_values);

struct DiagnosticRow {
  int n = 0;
  std::string statistic;
  double value = 0.0;
  double se = 0.0;  // NaN when not applicable
};

// "n,statistic,value,se"
std::string diagnostics_to_csv(std::span<const DiagnosticRow> rows);

}  // namespace recsel
