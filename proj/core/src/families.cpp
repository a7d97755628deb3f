#include "recsel/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

#include "recsel/errors.hpp"

namespace recsel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_positive_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    std::ostringstream msg;
    msg << "theta must be positive and finite, got " << theta;
    throw DomainError(msg.str());
  }
}

void require_in_support(const FamilySpec& family, double x) {
  if (std::isnan(x) || !family.support().contains(x)) {
    std::ostringstream msg;
    msg << "x = " << x << " lies outside the support [" << family.support().lower
        << ", " << family.support().upper << "] of " << to_string(family.member());
    throw DomainError(msg.str());
  }
}

void require_model1(const FamilySpec& family, std::string_view op) {
  if (!family.is_model1()) {
    throw UsageError(std::string(op) + " requires a gamma-type family");
  }
}

void require_model2(const FamilySpec& family, std::string_view op) {
  if (!family.is_model2()) {
    throw UsageError(std::string(op) + " requires a hazard or reversed-hazard family");
  }
}

void validate_table(const TabulatedCurve& table, bool reversed) {
  if (table.x.size() < 2 || table.x.size() != table.y.size()) {
    throw UsageError("tabulated curve needs at least two (x, y) knots of equal count");
  }
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    if (!std::isfinite(table.x[i]) || !std::isfinite(table.y[i])) {
      throw UsageError("tabulated curve knots must be finite");
    }
    if (i > 0 && !(table.x[i] > table.x[i - 1])) {
      throw UsageError("tabulated curve x knots must be strictly increasing");
    }
    if (i > 0 && table.y[i] < table.y[i - 1]) {
      throw UsageError("tabulated curve must be nondecreasing");
    }
  }
  if (!reversed && table.y.front() != 0.0) {
    throw UsageError("tabulated cumulative hazard must start at H = 0");
  }
  if (reversed && table.y.back() != 0.0) {
    throw UsageError("tabulated reversed hazard must end at R = 0");
  }
  const std::size_t last = table.x.size() - 1;
  const bool open_end = reversed ? table.y[1] > table.y[0] : table.y[last] > table.y[last - 1];
  if (!open_end) {
    throw UsageError("tabulated curve needs a strictly increasing end segment");
  }
}

double table_slope(const TabulatedCurve& t, std::size_t seg) {
  return (t.y[seg + 1] - t.y[seg]) / (t.x[seg + 1] - t.x[seg]);
}

std::size_t table_segment_for_x(const TabulatedCurve& t, double x) {
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  std::size_t idx = it == t.x.begin() ? 0 : static_cast<std::size_t>(it - t.x.begin()) - 1;
  return std::min(idx, t.x.size() - 2);
}

double table_eval(const TabulatedCurve& t, double x) {
  const std::size_t seg = table_segment_for_x(t, x);
  return t.y[seg] + table_slope(t, seg) * (x - t.x[seg]);
}

double table_derivative(const TabulatedCurve& t, double x) {
  return table_slope(t, table_segment_for_x(t, x));
}

double table_inverse(const TabulatedCurve& t, double y) {
  // leftmost x with curve(x) = y
  auto it = std::lower_bound(t.y.begin(), t.y.end(), y);
  std::size_t seg;
  if (it == t.y.begin()) {
    seg = 0;
  } else if (it == t.y.end()) {
    seg = t.y.size() - 2;
  } else {
    seg = static_cast<std::size_t>(it - t.y.begin()) - 1;
  }
  const double slope = table_slope(t, seg);
  if (slope == 0.0) return t.x[seg];
  return t.x[seg] + (y - t.y[seg]) / slope;
}

// Model 1: inverse of S on the nonnegative branch.
double s_inverse(const FamilySpec& f, double y) {
  switch (f.member()) {
    case Member::Exponential:
    case Member::Gamma:
      return y;
    case Member::NormalZeroMean:
    case Member::Rayleigh:
      return std::sqrt(2.0 * y);
    case Member::InverseGaussian:
      return y == 0.0 ? kInf : 1.0 / (2.0 * y);
    case Member::WeibullKnownBeta:
      return std::pow(y, 1.0 / f.beta());
    default:
      throw UsageError("not a gamma-type member");
  }
}

double s_derivative(const FamilySpec& f, double x) {
  switch (f.member()) {
    case Member::Exponential:
    case Member::Gamma:
      return 1.0;
    case Member::NormalZeroMean:
    case Member::Rayleigh:
      return x;
    case Member::InverseGaussian:
      return -1.0 / (2.0 * x * x);
    case Member::WeibullKnownBeta:
      return f.beta() * std::pow(x, f.beta() - 1.0);
    default:
      throw UsageError("not a gamma-type member");
  }
}

}  // namespace

FamilySpec FamilySpec::gamma_type(Member member, double p, double beta) {
  FamilySpec f;
  f.kind_ = FamilyKind::GammaType;
  f.member_ = member;
  f.support_ = {0.0, kInf};
  switch (member) {
    case Member::Exponential:
      f.shape_p_ = 1.0;
      break;
    case Member::Gamma:
      if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("gamma shape p must be positive");
      f.shape_p_ = p;
      break;
    case Member::NormalZeroMean:
      f.shape_p_ = 0.5;
      f.support_ = {-kInf, kInf};
      break;
    case Member::InverseGaussian:
      f.shape_p_ = 0.5;
      break;
    case Member::WeibullKnownBeta:
      if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("Weibull beta must be positive");
      f.shape_p_ = 1.0;
      f.beta_ = beta;
      break;
    case Member::Rayleigh:
      f.shape_p_ = 1.0;
      break;
    default:
      throw UsageError(std::string(to_string(member)) + " is not a gamma-type member");
  }
  return f;
}

FamilySpec FamilySpec::hazard(Member member, double param) {
  FamilySpec f;
  f.kind_ = FamilyKind::ProportionalHazard;
  f.member_ = member;
  f.support_ = {0.0, kInf};
  switch (member) {
    case Member::Exponential:
    case Member::Rayleigh:
      break;
    case Member::Pareto:
      if (!(param > 0.0) || !std::isfinite(param)) throw DomainError("Pareto beta must be positive");
      f.beta_ = param;
      f.support_ = {param, kInf};
      break;
    case Member::Burr:
      if (!(param > 0.0) || !std::isfinite(param)) throw DomainError("Burr alpha must be positive");
      f.alpha_ = param;
      break;
    default:
      throw UsageError(std::string(to_string(member)) + " is not a proportional hazard member");
  }
  return f;
}

FamilySpec FamilySpec::reversed_hazard(Member member) {
  if (member != Member::Beta) {
    throw UsageError(std::string(to_string(member)) +
                     " is not a proportional reversed hazard member");
  }
  FamilySpec f;
  f.kind_ = FamilyKind::ProportionalReversedHazard;
  f.member_ = member;
  f.support_ = {0.0, 1.0};
  return f;
}

FamilySpec FamilySpec::custom_hazard(PowerCurve curve) {
  if (!std::isfinite(curve.shift) || !(curve.power > 0.0) || !(curve.scale > 0.0) ||
      !std::isfinite(curve.power) || !std::isfinite(curve.scale)) {
    throw UsageError("custom H needs finite shift and positive power and scale");
  }
  FamilySpec f;
  f.kind_ = FamilyKind::ProportionalHazard;
  f.member_ = Member::Custom;
  f.has_power_ = true;
  f.power_ = curve;
  f.support_ = {curve.shift, kInf};
  return f;
}

FamilySpec FamilySpec::custom_hazard(TabulatedCurve table) {
  validate_table(table, false);
  FamilySpec f;
  f.kind_ = FamilyKind::ProportionalHazard;
  f.member_ = Member::Custom;
  f.support_ = {table.x.front(), kInf};
  f.table_ = std::move(table);
  return f;
}

FamilySpec FamilySpec::custom_reversed_hazard(TabulatedCurve table) {
  validate_table(table, true);
  FamilySpec f;
  f.kind_ = FamilyKind::ProportionalReversedHazard;
  f.member_ = Member::Custom;
  f.support_ = {-kInf, table.x.back()};
  f.table_ = std::move(table);
  return f;
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::GammaType: return "GammaType";
    case FamilyKind::ProportionalHazard: return "ProportionalHazard";
    case FamilyKind::ProportionalReversedHazard: return "ProportionalReversedHazard";
  }
  return "?";
}

std::string_view to_string(Member member) {
  switch (member) {
    case Member::Exponential: return "Exponential";
    case Member::Gamma: return "Gamma";
    case Member::NormalZeroMean: return "NormalZeroMean";
    case Member::InverseGaussian: return "InverseGaussian";
    case Member::WeibullKnownBeta: return "WeibullKnownBeta";
    case Member::Rayleigh: return "Rayleigh";
    case Member::Beta: return "Beta";
    case Member::Pareto: return "Pareto";
    case Member::Burr: return "Burr";
    case Member::Custom: return "Custom";
  }
  return "?";
}

FamilyKind parse_family_kind(std::string_view text) {
  for (auto k : {FamilyKind::GammaType, FamilyKind::ProportionalHazard,
                 FamilyKind::ProportionalReversedHazard}) {
    if (to_string(k) == text) return k;
  }
  throw UsageError("unknown family kind '" + std::string(text) + "'");
}

Member parse_member(std::string_view text) {
  for (auto m : {Member::Exponential, Member::Gamma, Member::NormalZeroMean,
                 Member::InverseGaussian, Member::WeibullKnownBeta, Member::Rayleigh,
                 Member::Beta, Member::Pareto, Member::Burr, Member::Custom}) {
    if (to_string(m) == text) return m;
  }
  throw UsageError("unknown family member '" + std::string(text) + "'");
}

double s_transform(const FamilySpec& family, double x) {
  require_model1(family, "s_transform");
  require_in_support(family, x);
  switch (family.member()) {
    case Member::Exponential:
    case Member::Gamma:
      return x;
    case Member::NormalZeroMean:
    case Member::Rayleigh:
      return 0.5 * x * x;
    case Member::InverseGaussian:
      return x == 0.0 ? kInf : 1.0 / (2.0 * x);
    case Member::WeibullKnownBeta:
      return std::pow(x, family.beta());
    default:
      throw UsageError("not a gamma-type member");
  }
}

double cumulative_hazard(const FamilySpec& family, double x) {
  require_model2(family, "cumulative_hazard");
  require_in_support(family, x);
  if (family.kind() == FamilyKind::ProportionalReversedHazard) {
    if (family.member() == Member::Beta) return std::log(x);  // log 0 = -inf
    return table_eval(family.table(), x);
  }
  switch (family.member()) {
    case Member::Exponential:
      return x;
    case Member::Rayleigh:
      return 0.5 * x * x;
    case Member::Pareto:
      return std::log(x / family.beta());
    case Member::Burr:
      return std::log1p(std::pow(x, family.alpha()));
    case Member::Custom:
      if (family.has_power_curve()) {
        const auto& c = family.power_curve();
        return std::pow(x - c.shift, c.power) / c.scale;
      }
      return table_eval(family.table(), x);
    default:
      throw UsageError("not a hazard member");
  }
}

double hazard_rate(const FamilySpec& family, double x) {
  require_model2(family, "hazard_rate");
  require_in_support(family, x);
  if (family.kind() == FamilyKind::ProportionalReversedHazard) {
    if (family.member() == Member::Beta) return 1.0 / x;
    return table_derivative(family.table(), x);
  }
  switch (family.member()) {
    case Member::Exponential:
      return 1.0;
    case Member::Rayleigh:
      return x;
    case Member::Pareto:
      return 1.0 / x;
    case Member::Burr: {
      const double a = family.alpha();
      const double xa = std::pow(x, a);
      return a * std::pow(x, a - 1.0) / (1.0 + xa);
    }
    case Member::Custom:
      if (family.has_power_curve()) {
        const auto& c = family.power_curve();
        return c.power * std::pow(x - c.shift, c.power - 1.0) / c.scale;
      }
      return table_derivative(family.table(), x);
    default:
      throw UsageError("not a hazard member");
  }
}

double inverse_cumulative_hazard(const FamilySpec& family, double value) {
  require_model2(family, "inverse_cumulative_hazard");
  if (family.kind() == FamilyKind::ProportionalReversedHazard) {
    if (value > 0.0) throw DomainError("reversed hazard values must be <= 0");
    if (family.member() == Member::Beta) return std::exp(value);
    return table_inverse(family.table(), value);
  }
  if (value < 0.0) throw DomainError("cumulative hazard values must be >= 0");
  switch (family.member()) {
    case Member::Exponential:
      return value;
    case Member::Rayleigh:
      return std::sqrt(2.0 * value);
    case Member::Pareto:
      return family.beta() * std::exp(value);
    case Member::Burr:
      return std::pow(std::expm1(value), 1.0 / family.alpha());
    case Member::Custom:
      if (family.has_power_curve()) {
        const auto& c = family.power_curve();
        return c.shift + std::pow(c.scale * value, 1.0 / c.power);
      }
      return table_inverse(family.table(), value);
    default:
      throw UsageError("not a hazard member");
  }
}

double selection_key(const FamilySpec& family, double x) {
  switch (family.kind()) {
    case FamilyKind::GammaType:
      return s_transform(family, x);
    case FamilyKind::ProportionalHazard:
      return cumulative_hazard(family, x);
    case FamilyKind::ProportionalReversedHazard:
      return -cumulative_hazard(family, x);
  }
  return 0.0;
}

bool key_monotone(const FamilySpec& family) {
  return !(family.is_model1() && family.member() == Member::NormalZeroMean);
}

bool key_increasing(const FamilySpec& family) {
  if (family.kind() == FamilyKind::ProportionalReversedHazard) return false;
  if (family.is_model1()) {
    return family.member() != Member::InverseGaussian &&
           family.member() != Member::NormalZeroMean;
  }
  return true;
}

double observation_from_key(const FamilySpec& family, double key, Rng& rng) {
  switch (family.kind()) {
    case FamilyKind::GammaType: {
      const double x = s_inverse(family, key);
      if (family.member() == Member::NormalZeroMean && (rng() >> 63) != 0) return -x;
      return x;
    }
    case FamilyKind::ProportionalHazard:
      return inverse_cumulative_hazard(family, key);
    case FamilyKind::ProportionalReversedHazard:
      return inverse_cumulative_hazard(family, -key);
  }
  return 0.0;
}

double sample_key(const FamilySpec& family, double theta, Rng& rng) {
  require_positive_theta(theta);
  if (family.is_model1()) {
    std::gamma_distribution<double> gamma(family.shape_p(), 1.0);
    return theta * gamma(rng);
  }
  return theta * rng.exponential();
}

double key_survival(const FamilySpec& family, double theta, double u) {
  require_positive_theta(theta);
  if (u <= 0.0) return 1.0;
  if (family.is_model1()) return boost::math::gamma_q(family.shape_p(), u / theta);
  return std::exp(-u / theta);
}

double sample_key_above(const FamilySpec& family, double theta, double u, Rng& rng) {
  require_positive_theta(theta);
  if (family.is_model2() || u <= 0.0) {
    if (u <= 0.0) return sample_key(family, theta, rng);
    return u + theta * rng.exponential();
  }
  const double p = family.shape_p();
  const double tail = boost::math::gamma_q(p, u / theta);
  if (tail < 1e-280) {
    // Far tail: the Gamma(p) excess over u is Exp(theta) to leading order.
    return u + theta * rng.exponential();
  }
  const double draw = theta * boost::math::gamma_q_inv(p, tail * rng.uniform());
  return std::max(draw, std::nextafter(u, kInf));
}

double sample(const FamilySpec& family, double theta, Rng& rng) {
  return observation_from_key(family, sample_key(family, theta, rng), rng);
}

double cdf(const FamilySpec& family, double theta, double x) {
  require_positive_theta(theta);
  const Support s = family.support();
  if (x <= s.lower) return 0.0;
  if (x >= s.upper) return 1.0;
  switch (family.kind()) {
    case FamilyKind::GammaType: {
      const double p = family.shape_p();
      const double y = s_transform(family, x);
      switch (family.member()) {
        case Member::InverseGaussian:
          return boost::math::gamma_q(p, y / theta);
        case Member::NormalZeroMean: {
          const double half = 0.5 * boost::math::gamma_p(p, y / theta);
          return x < 0.0 ? 0.5 - half : 0.5 + half;
        }
        default:
          return boost::math::gamma_p(p, y / theta);
      }
    }
    case FamilyKind::ProportionalHazard:
      return -std::expm1(-cumulative_hazard(family, x) / theta);
    case FamilyKind::ProportionalReversedHazard:
      return std::exp(cumulative_hazard(family, x) / theta);
  }
  return 0.0;
}

double pdf(const FamilySpec& family, double theta, double x) {
  require_positive_theta(theta);
  const Support s = family.support();
  if (x < s.lower || x > s.upper) return 0.0;
  switch (family.kind()) {
    case FamilyKind::GammaType: {
      if (family.member() == Member::NormalZeroMean) {
        return std::exp(-0.5 * x * x / theta) / std::sqrt(2.0 * M_PI * theta);
      }
      const double y = s_transform(family, x);
      if (!std::isfinite(y)) return 0.0;
      const double density_y =
          boost::math::gamma_p_derivative(family.shape_p(), y / theta) / theta;
      return density_y * std::abs(s_derivative(family, x));
    }
    case FamilyKind::ProportionalHazard: {
      const double h = hazard_rate(family, x);
      return h / theta * std::exp(-cumulative_hazard(family, x) / theta);
    }
    case FamilyKind::ProportionalReversedHazard: {
      const double r = hazard_rate(family, x);
      return r / theta * std::exp(cumulative_hazard(family, x) / theta);
    }
  }
  return 0.0;
}

}  // namespace recsel
