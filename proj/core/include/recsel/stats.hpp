#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace recsel {

// Running mean and variance (Welford).
class MomentAccumulator {
 public:
  void add(double x);

  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  // Sample variance; NaN below two observations.
  double variance() const;
  // Standard error of the mean; NaN below two observations.
  double standard_error() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// sup |F_n - F| for a one-sample Kolmogorov-Smirnov comparison.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

// sup |F_n - G_m| between two samples.
double ks_distance_two_sample(std::vector<double> a, std::vector<double> b);

// Upper-alpha quantile by the type-1 (inverse empirical cdf) rule:
// the ceil(m (1 - alpha))-th order statistic. Sorts `values` in place.
double upper_quantile(std::vector<double>& values, double alpha);
double upper_quantile_sorted(std::span<const double> sorted, double alpha);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

double standard_normal_cdf(double x);
double gumbel_cdf(double x);

}  // namespace recsel
