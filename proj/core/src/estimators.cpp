#include "recsel/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "recsel/errors.hpp"

namespace recsel {

namespace {

void require_shape(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("shape p must be positive and finite");
  }
}

void require_gamma_order(double u_prev, double u_curr) {
  if (!(u_prev >= 0.0) || !std::isfinite(u_curr)) {
    throw DomainError("gamma-type record keys must be finite and nonnegative");
  }
  if (!(u_prev < u_curr)) {
    std::ostringstream msg;
    msg << "record keys out of order: previous " << u_prev << " >= current " << u_curr;
    throw OrderingError(msg.str());
  }
}

void require_hazard_order(double h_prev, double h_curr) {
  if (std::isnan(h_prev) || std::isnan(h_curr)) throw DomainError("hazard keys must not be NaN");
  if (!(h_prev <= h_curr)) {
    std::ostringstream msg;
    msg << "cumulative hazard decreases along records: " << h_prev << " > " << h_curr;
    throw OrderingError(msg.str());
  }
}

}  // namespace

std::string_view to_string(EstimatorId id) {
  switch (id) {
    case EstimatorId::UmvueGamma: return "UmvueGamma";
    case EstimatorId::NaturalGamma: return "NaturalGamma";
    case EstimatorId::UmvuePhr: return "UmvuePhr";
    case EstimatorId::UmvuePrhr: return "UmvuePrhr";
    case EstimatorId::NaturalPhr: return "NaturalPhr";
    case EstimatorId::StationaryUmvue: return "StationaryUmvue";
  }
  return "?";
}

EstimatorId parse_estimator_id(std::string_view text) {
  for (auto id : {EstimatorId::UmvueGamma, EstimatorId::NaturalGamma, EstimatorId::UmvuePhr,
                  EstimatorId::UmvuePrhr, EstimatorId::NaturalPhr,
                  EstimatorId::StationaryUmvue}) {
    if (to_string(id) == text) return id;
  }
  throw UsageError("unknown estimator '" + std::string(text) + "'");
}

EstimateReport make_report(EstimatorId id, int n, double estimate, double risk_estimate,
                           double band_factor) {
  if (!(band_factor >= 0.0)) throw UsageError("band factor must be nonnegative");
  EstimateReport r;
  r.estimator_id = id;
  r.n = n;
  r.estimate = estimate;
  r.risk_estimate = risk_estimate;
  r.band_factor = band_factor;
  const double half_width = band_factor * std::sqrt(std::max(risk_estimate, 0.0));
  r.band_lower = std::max(0.0, estimate - half_width);
  r.band_upper = estimate + half_width;
  return r;
}

double umvue_gamma(double u_prev, double u_curr, double p) {
  require_shape(p);
  require_gamma_order(u_prev, u_curr);
  if (u_prev == 0.0) return u_curr / p;
  return (u_curr / p) * -std::expm1(p * std::log(u_prev / u_curr));
}

double natural_gamma(double u_curr, double p) {
  require_shape(p);
  if (!(u_curr > 0.0) || !std::isfinite(u_curr)) {
    throw DomainError("natural estimator needs a positive finite record");
  }
  return u_curr / p;
}

double umvue_phr(double h_prev, double h_curr) {
  require_hazard_order(h_prev, h_curr);
  return h_curr - h_prev;
}

double natural_phr(double h_curr) {
  if (!(h_curr >= 0.0)) throw DomainError("cumulative hazard must be nonnegative");
  return h_curr;
}

double second_moment_gamma(double u_prev, double u_curr, double p) {
  require_shape(p);
  require_gamma_order(u_prev, u_curr);
  const double b = u_curr;
  const double a = u_prev;
  // (b^{p+1} - a^{p+1} - (p+1) a^p (b-a)) / (p (p+1) b^{p-1}), written in
  // terms of r = a/b to stay well scaled.
  const double r = a / b;
  const double rp = a == 0.0 ? 0.0 : std::pow(r, p);
  const double numer = 1.0 - rp * r - (p + 1.0) * rp * (1.0 - r);
  return b * b * numer / (p * (p + 1.0));
}

double risk_umvue_gamma(double u_prev, double u_curr, double p) {
  const double v = umvue_gamma(u_prev, u_curr, p);
  return v * v - second_moment_gamma(u_prev, u_curr, p);
}

double risk_natural_gamma(double u_prev, double u_curr, double p) {
  require_shape(p);
  require_gamma_order(u_prev, u_curr);
  const double b = u_curr;
  const double r = u_prev / b;
  const double v = b / p;
  // 2 * integral of t^{p-1} (t/p) over [a, b], divided by b^{p-1}
  const double cross = 2.0 * b * b * (1.0 - std::pow(r, p + 1.0)) / (p * (p + 1.0));
  return v * v - cross + second_moment_gamma(u_prev, u_curr, p);
}

double risk_general_gamma(const RecordEstimator& estimator, double u_prev, double u_curr,
                          double p, const QuadratureOptions& options) {
  require_shape(p);
  require_gamma_order(u_prev, u_curr);
  const double v = estimator(u_curr, u_prev);
  const double lo = std::pow(u_prev, p);
  const double hi = std::pow(u_curr, p);
  const double inv_p = 1.0 / p;
  auto integrand = [&](double s) { return estimator(std::pow(s, inv_p), u_prev); };
  const QuadratureResult q = integrate(integrand, lo, hi, options);
  // integral of t^{p-1} V dt = q / p
  const double cross = 2.0 * (q.value / p) / std::pow(u_curr, p - 1.0);
  return v * v - cross + second_moment_gamma(u_prev, u_curr, p);
}

double risk_umvue_phr(double h_prev, double h_curr) {
  const double d = umvue_phr(h_prev, h_curr);
  return 0.5 * d * d;
}

double risk_natural_phr(double h_prev, double h_curr) {
  require_hazard_order(h_prev, h_curr);
  const double d = h_curr - h_prev;
  // V^2 + d^2/2 - 2 * integral_{h_prev}^{h_curr} s ds
  return h_curr * h_curr + 0.5 * d * d - (h_curr * h_curr - h_prev * h_prev);
}

double risk_general_phr(const RecordEstimator& estimator, double x_prev, double x_curr,
                        const FamilySpec& family, const QuadratureOptions& options) {
  if (!family.is_model2()) throw UsageError("risk_general_phr requires a Model 2 family");
  const double k_prev = selection_key(family, x_prev);
  const double k_curr = selection_key(family, x_curr);
  require_hazard_order(k_prev, k_curr);
  const double v = estimator(x_curr, x_prev);
  Rng unused(0);
  auto integrand = [&](double s) {
    return estimator(observation_from_key(family, s, unused), x_prev);
  };
  const QuadratureResult q = integrate(integrand, k_prev, k_curr, options);
  const double d = k_curr - k_prev;
  return v * v + 0.5 * d * d - 2.0 * q.value;
}

EstimateReport stationary_umvue(std::span<const double> keys, int n, double band_factor) {
  if (n < 1 || static_cast<std::size_t>(n) > keys.size()) {
    std::ostringstream msg;
    msg << "stationary estimate at n = " << n << " needs that many records, have "
        << keys.size();
    throw UsageError(msg.str());
  }
  const double h = keys[static_cast<std::size_t>(n) - 1];
  if (!(h >= 0.0) || !std::isfinite(h)) throw DomainError("record key must be finite and >= 0");
  const double nn = static_cast<double>(n);
  return make_report(EstimatorId::StationaryUmvue, n, h / nn, h * h / (nn * nn * (nn + 1.0)),
                     band_factor);
}

void require_compatible(EstimatorId id, const FamilySpec& family) {
  bool ok = false;
  switch (id) {
    case EstimatorId::UmvueGamma:
    case EstimatorId::NaturalGamma:
      ok = family.is_model1();
      break;
    case EstimatorId::UmvuePhr:
      ok = family.kind() == FamilyKind::ProportionalHazard;
      break;
    case EstimatorId::UmvuePrhr:
      ok = family.kind() == FamilyKind::ProportionalReversedHazard;
      break;
    case EstimatorId::NaturalPhr:
    case EstimatorId::StationaryUmvue:
      ok = family.is_model2();
      break;
  }
  if (!ok) {
    throw UsageError(std::string(to_string(id)) + " does not apply to a " +
                     std::string(to_string(family.kind())) + " family");
  }
}

EstimatorId umvue_for(const FamilySpec& family) {
  switch (family.kind()) {
    case FamilyKind::GammaType: return EstimatorId::UmvueGamma;
    case FamilyKind::ProportionalHazard: return EstimatorId::UmvuePhr;
    case FamilyKind::ProportionalReversedHazard: return EstimatorId::UmvuePrhr;
  }
  return EstimatorId::UmvuePhr;
}

EstimatorId natural_for(const FamilySpec& family) {
  return family.is_model1() ? EstimatorId::NaturalGamma : EstimatorId::NaturalPhr;
}

double apply_estimator(EstimatorId id, const FamilySpec& family, int n, double key_prev,
                       double key_curr) {
  switch (id) {
    case EstimatorId::UmvueGamma: return umvue_gamma(key_prev, key_curr, family.shape_p());
    case EstimatorId::NaturalGamma: return natural_gamma(key_curr, family.shape_p());
    case EstimatorId::UmvuePhr:
    case EstimatorId::UmvuePrhr: return umvue_phr(key_prev, key_curr);
    case EstimatorId::NaturalPhr: return natural_phr(key_curr);
    case EstimatorId::StationaryUmvue: return key_curr / static_cast<double>(n);
  }
  return 0.0;
}

double apply_risk_estimator(EstimatorId id, const FamilySpec& family, int n, double key_prev,
                            double key_curr) {
  switch (id) {
    case EstimatorId::UmvueGamma:
      return risk_umvue_gamma(key_prev, key_curr, family.shape_p());
    case EstimatorId::NaturalGamma:
      return risk_natural_gamma(key_prev, key_curr, family.shape_p());
    case EstimatorId::UmvuePhr:
    case EstimatorId::UmvuePrhr:
      return risk_umvue_phr(key_prev, key_curr);
    case EstimatorId::NaturalPhr:
      return risk_natural_phr(key_prev, key_curr);
    case EstimatorId::StationaryUmvue: {
      const double nn = static_cast<double>(n);
      return key_curr * key_curr / (nn * nn * (nn + 1.0));
    }
  }
  return 0.0;
}

std::string_view to_string(Hypothesis h) {
  return h == Hypothesis::Stationary ? "stationary" : "nonstationary";
}

Hypothesis parse_hypothesis(std::string_view text) {
  if (text == "stationary") return Hypothesis::Stationary;
  if (text == "nonstationary") return Hypothesis::Nonstationary;
  throw UsageError("model must be 'stationary' or 'nonstationary', got '" +
                   std::string(text) + "'");
}

std::vector<EstimateReport> estimate_path(std::span<const double> keys,
                                          const FamilySpec& family, Hypothesis hypothesis,
                                          double band_factor) {
  std::vector<EstimateReport> out;
  out.reserve(keys.size());
  if (hypothesis == Hypothesis::Stationary) {
    if (!family.is_model2()) {
      throw UsageError("the stationary estimator requires a hazard or reversed-hazard family");
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
      out.push_back(stationary_umvue(keys, static_cast<int>(i) + 1, band_factor));
    }
    return out;
  }
  const EstimatorId id = umvue_for(family);
  double prev = 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    const double est = apply_estimator(id, family, n, prev, keys[i]);
    const double risk = apply_risk_estimator(id, family, n, prev, keys[i]);
    out.push_back(make_report(id, n, est, risk, band_factor));
    prev = keys[i];
  }
  return out;
}

std::vector<double> umvue_path(std::span<const double> keys, const FamilySpec& family) {
  const EstimatorId id = umvue_for(family);
  std::vector<double> out;
  out.reserve(keys.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out.push_back(apply_estimator(id, family, static_cast<int>(i) + 1, prev, keys[i]));
    prev = keys[i];
  }
  return out;
}

}  // namespace recsel
