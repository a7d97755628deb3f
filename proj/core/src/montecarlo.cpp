#include "recsel/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "recsel/errors.hpp"
#include "recsel/parallel.hpp"
#include "recsel/stats.hpp"

namespace recsel {

namespace {

// Draws selection keys for a fixed family, reusing the gamma sampler state.
class KeySampler {
 public:
  explicit KeySampler(const FamilySpec& family)
      : model1_(family.is_model1()), gamma_(family.shape_p(), 1.0) {}

  double operator()(double theta, Rng& rng) {
    return model1_ ? theta * gamma_(rng) : theta * rng.exponential();
  }

 private:
  bool model1_;
  std::gamma_distribution<double> gamma_;
};

void push_record(ReplicateResult& out, const FamilySpec& family, double key, double time,
                 double theta, double inv_sum, Rng& rng) {
  out.keys.push_back(key);
  out.observations.push_back(observation_from_key(family, key, rng));
  out.times.push_back(time);
  out.thetas.push_back(theta);
  out.inverse_theta_sums.push_back(inv_sum);
}

// Constant theta: the wait for the next record is geometric with success
// probability P(key > current record), and the new record is a draw above it.
ReplicateResult run_constant(const SimulationConfig& config, Rng& rng) {
  const FamilySpec& family = config.family;
  const double theta = config.theta_model.constant;
  ReplicateResult out;
  double time = 1.0;
  double key = sample_key(family, theta, rng);
  push_record(out, family, key, time, theta, time / theta, rng);
  while (out.records() < static_cast<std::size_t>(config.n_target)) {
    const double q = key_survival(family, theta, key);
    double wait = 1.0;
    if (q <= 0.0) {
      wait = std::numeric_limits<double>::infinity();
    } else if (q < 1.0) {
      wait = std::floor(std::log(rng.uniform()) / std::log1p(-q)) + 1.0;
    }
    if (time + wait > config.max_observations) {
      out.truncated = true;
      out.observations_used = config.max_observations;
      return out;
    }
    time += wait;
    key = sample_key_above(family, theta, key, rng);
    push_record(out, family, key, time, theta, time / theta, rng);
  }
  out.observations_used = time;
  return out;
}

ReplicateResult run_stepwise(const SimulationConfig& config, Rng& rng) {
  const FamilySpec& family = config.family;
  ThetaGenerator thetas(config.theta_model, rng);
  KeySampler draw(family);
  ReplicateResult out;
  double inv_sum = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  double i = 0.0;
  while (out.records() < static_cast<std::size_t>(config.n_target)) {
    if (i >= config.max_observations) {
      out.truncated = true;
      break;
    }
    i += 1.0;
    const double theta = thetas.next();
    inv_sum += 1.0 / theta;
    const double key = draw(theta, rng);
    if (key > best) {
      best = key;
      push_record(out, family, key, i, theta, inv_sum, rng);
    }
  }
  out.observations_used = i;
  return out;
}

}  // namespace

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::ArPositiveError: return "ArPositiveError";
    case Scheme::StochasticGeometric: return "StochasticGeometric";
    case Scheme::WhiteNoise: return "WhiteNoise";
    case Scheme::Constant: return "Constant";
    case Scheme::UserSupplied: return "UserSupplied";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  for (auto s : {Scheme::ArPositiveError, Scheme::StochasticGeometric, Scheme::WhiteNoise,
                 Scheme::Constant, Scheme::UserSupplied}) {
    if (to_string(s) == text) return s;
  }
  throw UsageError("unknown theta scheme '" + std::string(text) + "'");
}

ParameterSequenceModel ParameterSequenceModel::make_constant(double theta) {
  ParameterSequenceModel m;
  m.scheme = Scheme::Constant;
  m.constant = theta;
  m.validate();
  return m;
}

ParameterSequenceModel ParameterSequenceModel::ar_positive_error() {
  ParameterSequenceModel m;
  m.scheme = Scheme::ArPositiveError;
  return m;
}

ParameterSequenceModel ParameterSequenceModel::stochastic_geometric(bool redraw_per_index,
                                                                    double divisor) {
  ParameterSequenceModel m;
  m.scheme = Scheme::StochasticGeometric;
  m.redraw_per_index = redraw_per_index;
  m.growth_divisor = divisor;
  m.validate();
  return m;
}

ParameterSequenceModel ParameterSequenceModel::white_noise(double mean, double sd) {
  ParameterSequenceModel m;
  m.scheme = Scheme::WhiteNoise;
  m.noise_mean = mean;
  m.noise_sd = sd;
  m.validate();
  return m;
}

ParameterSequenceModel ParameterSequenceModel::user_supplied(std::vector<double> values) {
  ParameterSequenceModel m;
  m.scheme = Scheme::UserSupplied;
  m.values = std::move(values);
  m.validate();
  return m;
}

void ParameterSequenceModel::validate() const {
  switch (scheme) {
    case Scheme::Constant:
      if (!(constant > 0.0) || !std::isfinite(constant)) {
        throw UsageError("constant theta must be positive and finite");
      }
      break;
    case Scheme::StochasticGeometric:
      if (!(growth_divisor > 0.0)) throw UsageError("geometric divisor must be positive");
      break;
    case Scheme::WhiteNoise:
      if (!(noise_sd >= 0.0) || !std::isfinite(noise_mean)) {
        throw UsageError("white noise needs a finite mean and a nonnegative sd");
      }
      if (noise_sd == 0.0 && !(noise_mean > 0.0)) {
        throw UsageError("white noise with sd 0 needs a positive mean");
      }
      break;
    case Scheme::UserSupplied:
      if (values.empty()) throw UsageError("user-supplied theta sequence is empty");
      for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
          throw UsageError("user-supplied theta values must be positive and finite");
        }
      }
      break;
    case Scheme::ArPositiveError:
      break;
  }
}

ThetaGenerator::ThetaGenerator(const ParameterSequenceModel& model, Rng& rng)
    : model_(model), rng_(rng), noise_(model.noise_mean, model.noise_sd) {
  if (model_.scheme == Scheme::StochasticGeometric && !model_.redraw_per_index) {
    c_ = rng_.uniform();
    d_ = rng_.uniform();
  }
}

double ThetaGenerator::next() {
  ++index_;
  switch (model_.scheme) {
    case Scheme::Constant:
      return model_.constant;
    case Scheme::ArPositiveError: {
      const double z = rng_.uniform();
      const double eps = rng_.exponential();
      previous_ = z * previous_ + eps;
      return previous_;
    }
    case Scheme::StochasticGeometric: {
      if (model_.redraw_per_index) {
        c_ = rng_.uniform();
        d_ = rng_.uniform();
      }
      return c_ * std::pow(1.0 + d_ / model_.growth_divisor, static_cast<double>(index_ - 1));
    }
    case Scheme::WhiteNoise: {
      double theta = noise_(rng_);
      while (!(theta > 0.0)) theta = noise_(rng_);
      return theta;
    }
    case Scheme::UserSupplied: {
      const std::size_t i = std::min(index_, model_.values.size());
      return model_.values[i - 1];
    }
  }
  return 0.0;
}

void SimulationConfig::validate() const {
  if (n_target < 1) throw UsageError("n_target must be >= 1");
  if (n_min < 1 || n_min > n_target) throw UsageError("n_min must lie in [1, n_target]");
  if (replications < 1) throw UsageError("replications must be >= 1");
  if (!(max_observations >= 1.0)) throw UsageError("max_observations must be >= 1");
  theta_model.validate();
}

ReplicateResult run_replicate(const SimulationConfig& config, Rng& rng) {
  if (config.theta_model.scheme == Scheme::Constant) return run_constant(config, rng);
  return run_stepwise(config, rng);
}

std::vector<ReplicateResult> run_replicates(const SimulationConfig& config) {
  config.validate();
  std::vector<ReplicateResult> out(config.replications);
  parallel_for(config.replications, config.threads, [&](std::size_t r) {
    Rng rng = Rng::for_stream(config.master_seed, r);
    out[r] = run_replicate(config, rng);
  });
  return out;
}

double SimulationSummary::truncation_fraction() const {
  return replications == 0 ? 0.0
                           : static_cast<double>(truncated) / static_cast<double>(replications);
}

void SimulationSummary::validate() const {
  if (truncation_fraction() > 0.01) {
    std::ostringstream msg;
    msg << truncated << " of " << replications
        << " replicates hit max_observations (more than 1%)";
    throw NumericError(msg.str());
  }
}

const SummaryCell& SimulationSummary::cell(EstimatorId id, int n) const {
  for (const auto& c : cells) {
    if (c.estimator == id && c.n == n) return c;
  }
  throw UsageError("no summary cell for " + std::string(to_string(id)) + " at n = " +
                   std::to_string(n));
}

SimulationSummary summarize(std::span<const ReplicateResult> replicates,
                            const SimulationConfig& config,
                            std::span<const EstimatorId> estimators) {
  for (EstimatorId id : estimators) require_compatible(id, config.family);
  SimulationSummary summary;
  summary.scheme = config.theta_model.scheme;
  summary.family_kind = config.family.kind();
  summary.shape_p = config.family.shape_p();
  summary.replications = replicates.size();
  for (const auto& rep : replicates) summary.truncated += rep.truncated ? 1 : 0;

  for (EstimatorId id : estimators) {
    for (int n = config.n_min; n <= config.n_target; ++n) {
      MomentAccumulator err;
      MomentAccumulator sq;
      for (const auto& rep : replicates) {
        if (rep.truncated) continue;
        const double v = apply_estimator(id, config.family, n, rep.key(n - 1), rep.key(n));
        const double e = v - rep.thetas[static_cast<std::size_t>(n) - 1];
        err.add(e);
        sq.add(e * e);
      }
      SummaryCell cell;
      cell.estimator = id;
      cell.n = n;
      cell.count = err.count();
      cell.bias = err.mean();
      cell.risk = sq.mean();
      cell.se_bias = err.standard_error();
      cell.se_risk = sq.standard_error();
      summary.cells.push_back(cell);
    }
  }
  return summary;
}

SimulationSummary bias_risk_table(const SimulationConfig& config,
                                  std::span<const EstimatorId> estimators) {
  for (EstimatorId id : estimators) require_compatible(id, config.family);
  const auto replicates = run_replicates(config);
  return summarize(replicates, config, estimators);
}

SpacingCheck spacing_survival_check(const SimulationConfig& config,
                                    std::span<const double> y_grid) {
  if (!config.family.is_model2()) {
    throw UsageError("spacing_survival_check requires a hazard or reversed-hazard family");
  }
  const auto replicates = run_replicates(config);
  const int n = config.n_target;
  SpacingCheck check;
  check.y_grid.assign(y_grid.begin(), y_grid.end());
  check.empirical.assign(y_grid.size(), 0.0);
  check.mixture.assign(y_grid.size(), 0.0);
  std::size_t used = 0;
  for (const auto& rep : replicates) {
    if (rep.truncated) continue;
    ++used;
    const double spacing = rep.key(n) - rep.key(n - 1);
    const double theta = rep.theta_selected();
    for (std::size_t k = 0; k < y_grid.size(); ++k) {
      if (spacing > y_grid[k]) check.empirical[k] += 1.0;
      check.mixture[k] += std::exp(-y_grid[k] / theta);
    }
  }
  if (used == 0) throw NumericError("every replicate was truncated");
  for (std::size_t k = 0; k < y_grid.size(); ++k) {
    check.empirical[k] /= static_cast<double>(used);
    check.mixture[k] /= static_cast<double>(used);
    check.max_deviation =
        std::max(check.max_deviation, std::abs(check.empirical[k] - check.mixture[k]));
  }
  return check;
}

}  // namespace recsel
