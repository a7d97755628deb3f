#include "recsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "recsel/errors.hpp"

namespace recsel {

void MomentAccumulator::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

double MomentAccumulator::variance() const {
  if (n_ < 2) return std::numeric_limits<double>::quiet_NaN();
  return m2_ / static_cast<double>(n_ - 1);
}

double MomentAccumulator::standard_error() const {
  if (n_ < 2) return std::numeric_limits<double>::quiet_NaN();
  return std::sqrt(variance() / static_cast<double>(n_));
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw UsageError("ks_distance needs a nonempty sample");
  std::sort(sample.begin(), sample.end());
  const double m = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, std::abs(static_cast<double>(i + 1) / m - f),
                  std::abs(f - static_cast<double>(i) / m)});
  }
  return d;
}

double ks_distance_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw UsageError("ks_distance_two_sample needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double upper_quantile_sorted(std::span<const double> sorted, double alpha) {
  if (sorted.empty()) throw UsageError("quantile of an empty sample");
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("alpha must lie in (0, 1)");
  const double m = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(m * (1.0 - alpha) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double upper_quantile(std::vector<double>& values, double alpha) {
  std::sort(values.begin(), values.end());
  return upper_quantile_sorted(values, alpha);
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw UsageError("correlation needs two equal-length samples of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

}  // namespace recsel
