#include "recsel/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "recsel/errors.hpp"
#include "recsel/io.hpp"
#include "recsel/stats.hpp"

namespace recsel {

namespace {

SimulationConfig simulation_for(const AsymptoticsConfig& config, int n) {
  SimulationConfig sim;
  sim.family = FamilySpec::hazard(Member::Exponential);
  sim.theta_model = config.theta_model;
  sim.n_target = n;
  sim.n_min = 1;
  sim.replications = config.replications;
  sim.master_seed = config.master_seed;
  sim.max_observations = std::numeric_limits<double>::infinity();
  sim.threads = config.threads;
  return sim;
}

void require_complete(const std::vector<ReplicateResult>& reps) {
  for (const auto& r : reps) {
    if (r.truncated) throw NumericError("replicate stopped before reaching the n-th record");
  }
}

}  // namespace

ExtremeDomain ExtremeDomain::gumbel() {
  return ExtremeDomain{[](double s) { return std::log(s); }, [](double) { return 1.0; },
                       gumbel_cdf};
}

std::vector<NormalizedRecordSample> normalized_sample(const AsymptoticsConfig& config, int n,
                                                      const ExtremeDomain& domain) {
  if (n < 2) throw UsageError("normalized records need n >= 2");
  const auto reps = run_replicates(simulation_for(config, n));
  require_complete(reps);
  std::vector<NormalizedRecordSample> out;
  out.reserve(reps.size());
  const double root_n = std::sqrt(static_cast<double>(n));
  for (const auto& r : reps) {
    const double s = r.inverse_theta_sums.back();
    const double a = domain.location(s);
    const double b = domain.scale(s);
    NormalizedRecordSample x;
    x.n = n;
    x.u_star_n = (r.observations[n - 1] - a) / b;
    x.u_star_prev = (r.observations[n - 2] - a) / b;
    x.t_star = (std::log(s) - n) / root_n;
    out.push_back(x);
  }
  return out;
}

double limit_joint_cdf(double y, double z) {
  const double m = std::min(y, z);
  const double base = std::exp(-std::exp(-m));
  return y > z ? base * (1.0 + std::exp(-z) - std::exp(-y)) : base;
}

double empirical_joint_cdf(std::span<const NormalizedRecordSample> sample, double y, double z) {
  if (sample.empty()) throw UsageError("empty normalized sample");
  std::size_t hits = 0;
  for (const auto& s : sample) {
    if (s.u_star_n <= y && s.u_star_prev <= z) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(sample.size());
}

double joint_cdf_deviation(std::span<const NormalizedRecordSample> sample,
                           std::span<const double> grid) {
  double worst = 0.0;
  for (double y : grid) {
    for (double z : grid) {
      if (!(z < y)) continue;
      worst = std::max(worst, std::abs(empirical_joint_cdf(sample, y, z) - limit_joint_cdf(y, z)));
    }
  }
  return worst;
}

double marginal_ks(std::span<const NormalizedRecordSample> sample, const ExtremeDomain& domain) {
  std::vector<double> u;
  u.reserve(sample.size());
  for (const auto& s : sample) u.push_back(s.u_star_n);
  return ks_distance(std::move(u), domain.limit_cdf);
}

double t_star_ks(std::span<const NormalizedRecordSample> sample) {
  std::vector<double> t;
  t.reserve(sample.size());
  for (const auto& s : sample) t.push_back(s.t_star);
  return ks_distance(std::move(t), standard_normal_cdf);
}

double frechet_correlation(const AsymptoticsConfig& config, int n) {
  if (n < 2) throw UsageError("the record pair correlation needs n >= 2");
  const auto reps = run_replicates(simulation_for(config, n));
  require_complete(reps);
  const double root_n = std::sqrt(static_cast<double>(n));
  std::vector<double> prev;
  std::vector<double> curr;
  prev.reserve(reps.size());
  curr.reserve(reps.size());
  for (const auto& r : reps) {
    prev.push_back((r.key(n - 1) - n) / root_n);
    curr.push_back((r.key(n) - n) / root_n);
  }
  return pearson_correlation(prev, curr);
}

std::vector<RiskRatePoint> risk_rate(const AsymptoticsConfig& config,
                                     std::span<const int> n_values) {
  int n_max = 0;
  for (int n : n_values) {
    if (n < 1) throw UsageError("risk_rate needs n >= 1");
    n_max = std::max(n_max, n);
  }
  if (n_max == 0) return {};
  const auto reps = run_replicates(simulation_for(config, n_max));
  require_complete(reps);
  std::vector<RiskRatePoint> out;
  for (int n : n_values) {
    MomentAccumulator loss;
    for (const auto& r : reps) {
      const double e = (r.key(n) - r.key(n - 1)) - r.thetas[static_cast<std::size_t>(n) - 1];
      loss.add(e * e);
    }
    RiskRatePoint p;
    p.n = n;
    p.risk = loss.mean();
    p.risk_over_n = p.risk / n;
    p.se = loss.standard_error() / n;
    out.push_back(p);
  }
  return out;
}

std::string diagnostics_to_csv(std::span<const DiagnosticRow> rows) {
  std::ostringstream out;
  out << "n,statistic,value,se\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.statistic << ',' << format_number(r.value) << ','
        << (std::isfinite(r.se) ? format_number(r.se) : std::string("NA")) << '\n';
  }
  return out.str();
}

}  // namespace recsel
