#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recsel/rng.hpp"

namespace recsel {

// Gamma-type families have S(X) ~ Gamma(p, theta). The two hazard families
// are the F^alpha models: survival Gbar(x)^(1/theta) and cdf G(x)^(1/theta).
enum class FamilyKind { GammaType, ProportionalHazard, ProportionalReversedHazard };

enum class Member {
  Exponential,
  Gamma,
  NormalZeroMean,
  InverseGaussian,
  WeibullKnownBeta,
  Rayleigh,
  Beta,
  Pareto,
  Burr,
  Custom,
};

struct Support {
  double lower;
  double upper;

  bool contains(double x) const { return x >= lower && x <= upper; }
};

// H(x) = (x - shift)^power / scale on (shift, inf).
struct PowerCurve {
  double shift = 0.0;
  double power = 1.0;
  double scale = 1.0;
};

// Piecewise-linear monotone curve through (x[i], y[i]). Used for a
// user-tabulated H (nondecreasing, y[0] = 0) or R (nondecreasing, y.back() = 0).
// Outside the knots the end segments are extended linearly.
struct TabulatedCurve {
  std::vector<double> x;
  std::vector<double> y;
};

// Immutable description of a family member. Construct through the factories;
// they validate the member/kind pairing and the fixed constants.
class FamilySpec {
 public:
  // Model 1. `p` is only read for Member::Gamma; `beta` only for Weibull.
  static FamilySpec gamma_type(Member member, double p = 1.0, double beta = 1.0);
  // Model 2, proportional hazard. `param` is the Pareto lower bound beta or
  // the Burr alpha; ignored otherwise.
  static FamilySpec hazard(Member member, double param = 1.0);
  // Model 2, proportional reversed hazard (Beta(1/theta, 1) with G(x) = x).
  static FamilySpec reversed_hazard(Member member);

  static FamilySpec custom_hazard(PowerCurve curve);
  static FamilySpec custom_hazard(TabulatedCurve table);
  static FamilySpec custom_reversed_hazard(TabulatedCurve table);

  FamilyKind kind() const { return kind_; }
  Member member() const { return member_; }
  double shape_p() const { return shape_p_; }
  Support support() const { return support_; }
  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  bool has_power_curve() const { return has_power_; }
  const PowerCurve& power_curve() const { return power_; }
  const TabulatedCurve& table() const { return table_; }

  bool is_model1() const { return kind_ == FamilyKind::GammaType; }
  bool is_model2() const { return !is_model1(); }

 private:
  FamilySpec() = default;

  FamilyKind kind_ = FamilyKind::GammaType;
  Member member_ = Member::Exponential;
  double shape_p_ = 1.0;
  Support support_{0.0, 0.0};
  double beta_ = 1.0;
  double alpha_ = 1.0;
  bool has_power_ = false;
  PowerCurve power_{};
  TabulatedCurve table_{};
};

std::string_view to_string(FamilyKind kind);
std::string_view to_string(Member member);
FamilyKind parse_family_kind(std::string_view text);
Member parse_member(std::string_view text);

// S(x) for a Gamma-type member.
double s_transform(const FamilySpec& family, double x);

// H(x) = -log Gbar(x) for proportional hazard, R(x) = log G(x) for the
// reversed family. Endpoints return the limiting value.
double cumulative_hazard(const FamilySpec& family, double x);

// Derivative of cumulative_hazard: h = g / Gbar, or r = g / G.
double hazard_rate(const FamilySpec& family, double x);

// Inverse of cumulative_hazard on the support.
double inverse_cumulative_hazard(const FamilySpec& family, double value);

// The statistic whose upper records drive estimation. It is distributed as
// Gamma(p, theta) for Model 1 (S(x)) and as Exp(theta) for Model 2: H(x) for
// the hazard family, -R(x) for the reversed family. The reversed key is
// decreasing in x, so its upper records are the lower records of X.
double selection_key(const FamilySpec& family, double x);

// True when larger x gives a larger key (false for a decreasing S or for the
// reversed hazard family; NormalZeroMean is not monotone and reports false).
bool key_increasing(const FamilySpec& family);
bool key_monotone(const FamilySpec& family);

// Draws an observation whose selection key equals `key`. Only the normal
// member needs randomness (the sign).
double observation_from_key(const FamilySpec& family, double key, Rng& rng);

// One draw of the selection key under parameter theta.
double sample_key(const FamilySpec& family, double theta, Rng& rng);

// P(key > u) under theta.
double key_survival(const FamilySpec& family, double theta, double u);

// Draw of the key conditioned on key > u.
double sample_key_above(const FamilySpec& family, double theta, double u, Rng& rng);

double sample(const FamilySpec& family, double theta, Rng& rng);
double cdf(const FamilySpec& family, double theta, double x);
double pdf(const FamilySpec& family, double theta, double x);

}  // namespace recsel
