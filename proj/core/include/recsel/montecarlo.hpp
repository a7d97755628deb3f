#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "recsel/estimators.hpp"
#include "recsel/families.hpp"
#include "recsel/rng.hpp"

namespace recsel {

enum class Scheme { ArPositiveError, StochasticGeometric, WhiteNoise, Constant, UserSupplied };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view text);

// How theta_1, theta_2, ... evolve along the observation sequence.
//   ArPositiveError:     theta_i = Z_i theta_{i-1} + eps_i, Z ~ U(0,1), eps ~ Exp(1), theta_0 = 0
//   StochasticGeometric: theta_i = C_i (1 + D_i / divisor)^(i-1), C, D ~ U(0,1)
//   WhiteNoise:          theta_i = mean + sd * N(0,1), redrawn while <= 0
//   Constant:            theta_i = constant
//   UserSupplied:        theta_i = values[i-1], last value held afterwards
struct ParameterSequenceModel {
  Scheme scheme = Scheme::Constant;
  double constant = 1.0;
  double noise_mean = 10.0;
  double noise_sd = 1.0;
  double growth_divisor = 10.0;
  // StochasticGeometric: redraw C_i, D_i at every index (true) or once per
  // sequence (false).
  bool redraw_per_index = true;
  std::vector<double> values;

  static ParameterSequenceModel make_constant(double theta);
  static ParameterSequenceModel ar_positive_error();
  static ParameterSequenceModel stochastic_geometric(bool redraw_per_index = true,
                                                     double divisor = 10.0);
  static ParameterSequenceModel white_noise(double mean = 10.0, double sd = 1.0);
  static ParameterSequenceModel user_supplied(std::vector<double> values);

  void validate() const;
};

// Stateful generator of theta_1, theta_2, ... for one sequence.
class ThetaGenerator {
 public:
  ThetaGenerator(const ParameterSequenceModel& model, Rng& rng);

  // theta_i for the next index i = 1, 2, ...
  double next();
  std::size_t index() const { return index_; }

 private:
  const ParameterSequenceModel& model_;
  Rng& rng_;
  std::size_t index_ = 0;
  double previous_ = 0.0;
  double c_ = 0.0;
  double d_ = 0.0;
  std::normal_distribution<double> noise_;
};

inline constexpr std::uint64_t kDefaultSeed = 20150601ULL;

struct SimulationConfig {
  FamilySpec family = FamilySpec::gamma_type(Member::Exponential);
  ParameterSequenceModel theta_model{};
  int n_target = 2;
  // Summaries cover n_min..n_target.
  int n_min = 1;
  std::size_t replications = 100000;
  std::uint64_t master_seed = kDefaultSeed;
  // Observations allowed per replicate before it is declared truncated.
  double max_observations = 1e7;
  unsigned threads = 0;

  void validate() const;
};

// One simulated sequence observed up to its n_target-th record. Keys are the
// selection keys (Gamma(p, theta) or Exp(theta) scale) of the records in
// order; record k was produced by the population with parameter thetas[k].
// Times are 1-based indices stored as double because constant-theta runs skip
// ahead over astronomically long waits.
struct ReplicateResult {
  std::vector<double> keys;
  std::vector<double> observations;
  std::vector<double> times;
  std::vector<double> thetas;
  // sum_{j <= T_k} 1 / theta_j
  std::vector<double> inverse_theta_sums;
  double observations_used = 0.0;
  bool truncated = false;

  std::size_t records() const { return keys.size(); }
  double theta_selected() const { return thetas.back(); }
  // Key of record n (1-based); record 0 has key 0.
  double key(int n) const { return n <= 0 ? 0.0 : keys[static_cast<std::size_t>(n) - 1]; }
};

ReplicateResult run_replicate(const SimulationConfig& config, Rng& rng);

// All replicates; replicate r draws from Rng::for_stream(master_seed, r).
std::vector<ReplicateResult> run_replicates(const SimulationConfig& config);

struct SummaryCell {
  EstimatorId estimator = EstimatorId::UmvueGamma;
  int n = 1;
  double bias = 0.0;
  double risk = 0.0;
  double se_bias = 0.0;
  double se_risk = 0.0;
  std::size_t count = 0;
};

struct SimulationSummary {
  Scheme scheme = Scheme::Constant;
  FamilyKind family_kind = FamilyKind::GammaType;
  double shape_p = 1.0;
  std::vector<SummaryCell> cells;
  std::size_t replications = 0;
  std::size_t truncated = 0;

  double truncation_fraction() const;
  // Throws NumericError when more than 1% of replicates were truncated.
  void validate() const;
  const SummaryCell& cell(EstimatorId id, int n) const;
};

SimulationSummary summarize(std::span<const ReplicateResult> replicates,
                            const SimulationConfig& config,
                            std::span<const EstimatorId> estimators);

SimulationSummary bias_risk_table(const SimulationConfig& config,
                                  std::span<const EstimatorId> estimators);

struct SpacingCheck {
  std::vector<double> y_grid;
  std::vector<double> empirical;  // P(key_n - key_{n-1} > y)
  std::vector<double> mixture;    // mean of exp(-y / theta_[n])
  double max_deviation = 0.0;
};

// Compares the empirical survival of the n_target-th key spacing with the
// exponential mixture over the selected parameter. Model 2 only.
SpacingCheck spacing_survival_check(const SimulationConfig& config,
                                    std::span<const double> y_grid);

}  // namespace recsel
