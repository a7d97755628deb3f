#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "recsel/families.hpp"
#include "recsel/quadrature.hpp"

namespace recsel {

// Record values are passed in "key" scale throughout: S-records for Model 1,
// H-values for the hazard family and -R-values for the reversed family (see
// selection_key). The n = 1 case is expressed with a previous key of 0, the
// key of the support endpoint.

enum class EstimatorId {
  UmvueGamma,
  NaturalGamma,
  UmvuePhr,
  UmvuePrhr,
  NaturalPhr,
  StationaryUmvue,
};

std::string_view to_string(EstimatorId id);
EstimatorId parse_estimator_id(std::string_view text);

inline constexpr double kDefaultBandFactor = 1.5;

struct EstimateReport {
  EstimatorId estimator_id = EstimatorId::UmvuePhr;
  int n = 1;
  double estimate = 0.0;
  double risk_estimate = 0.0;
  double band_lower = 0.0;
  double band_upper = 0.0;
  double band_factor = kDefaultBandFactor;
};

// estimate +/- factor * sqrt(max(risk, 0)), lower end clamped at 0.
EstimateReport make_report(EstimatorId id, int n, double estimate, double risk_estimate,
                           double band_factor = kDefaultBandFactor);

// (u_curr / p) * (1 - (u_prev / u_curr)^p). Requires 0 <= u_prev < u_curr.
double umvue_gamma(double u_prev, double u_curr, double p);
double natural_gamma(double u_curr, double p);

// h_curr - h_prev. Requires h_prev <= h_curr. Also serves the reversed
// family when fed -R keys of the lower records.
double umvue_phr(double h_prev, double h_curr);
double natural_phr(double h_curr);

// Unbiased risk estimate of umvue_gamma (closed form). May be negative.
double risk_umvue_gamma(double u_prev, double u_curr, double p);
// Unbiased risk estimate of natural_gamma (closed form).
double risk_natural_gamma(double u_prev, double u_curr, double p);

// Unbiased estimate of E(theta_[n]^2) under Model 1; the last term of the
// general risk estimator.
double second_moment_gamma(double u_prev, double u_curr, double p);

// Estimator as a function of (current record, previous record).
using RecordEstimator = std::function<double(double current, double previous)>;

// Risk estimator for any V(U_n^S, U_{n-1}^S) under Model 1; the integral of
// t^(p-1) V(t, u_prev) is evaluated after substituting s = t^p.
double risk_general_gamma(const RecordEstimator& estimator, double u_prev, double u_curr,
                          double p, const QuadratureOptions& options = {});

// (h_curr - h_prev)^2 / 2.
double risk_umvue_phr(double h_prev, double h_curr);
// Unbiased risk estimate of natural_phr (closed form).
double risk_natural_phr(double h_prev, double h_curr);

// Risk estimator for any V(U_n, U_{n-1}) in observation scale under Model 2.
// x_prev and x_curr are the raw records (lower records for the reversed
// family); the hazard integral is taken in key scale via u = key(t).
double risk_general_phr(const RecordEstimator& estimator, double x_prev, double x_curr,
                        const FamilySpec& family, const QuadratureOptions& options = {});

// H(U_n)/n with risk estimate H(U_n)^2 / (n^2 (n+1)). `keys` holds the record
// keys in order; n is 1-based.
EstimateReport stationary_umvue(std::span<const double> keys, int n,
                                double band_factor = kDefaultBandFactor);

// Point estimate / risk estimate for estimator `id` at record n from keys
// (previous, current).
double apply_estimator(EstimatorId id, const FamilySpec& family, int n, double key_prev,
                       double key_curr);
double apply_risk_estimator(EstimatorId id, const FamilySpec& family, int n,
                            double key_prev, double key_curr);

// Checks that the estimator applies to the family kind; throws UsageError.
void require_compatible(EstimatorId id, const FamilySpec& family);

// The UMVUE for the family kind (V2, V3 or V4).
EstimatorId umvue_for(const FamilySpec& family);
EstimatorId natural_for(const FamilySpec& family);

enum class Hypothesis { Stationary, Nonstationary };

std::string_view to_string(Hypothesis h);
Hypothesis parse_hypothesis(std::string_view text);

// Estimates for n = 1..keys.size(). Stationary requires a Model 2 family.
std::vector<EstimateReport> estimate_path(std::span<const double> keys,
                                          const FamilySpec& family, Hypothesis hypothesis,
                                          double band_factor = kDefaultBandFactor);

// UMVUE path (n = 1..keys.size()) with the n = 1 convention.
std::vector<double> umvue_path(std::span<const double> keys, const FamilySpec& family);

}  // namespace recsel
