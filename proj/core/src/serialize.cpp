#include "recsel/serialize.hpp"

#include <cmath>

#include "recsel/errors.hpp"

namespace recsel {

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw UsageError(std::string("config field '") + key + "': " + e.what());
  }
}

const Json& require_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw UsageError(std::string("config is missing field '") + key + "'");
  }
  return j.at(key);
}

Json nullable(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

TabulatedCurve table_from_json(const Json& j, const char* ykey) {
  TabulatedCurve t;
  try {
    t.x = require_field(j, "x").get<std::vector<double>>();
    t.y = require_field(j, ykey).get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw UsageError(std::string("tabulated curve: ") + e.what());
  }
  return t;
}

}  // namespace

Json family_to_json(const FamilySpec& family) {
  Json j;
  j["kind"] = std::string(to_string(family.kind()));
  j["member"] = std::string(to_string(family.member()));
  if (family.is_model1()) j["p"] = family.shape_p();
  Json params = Json::object();
  switch (family.member()) {
    case Member::WeibullKnownBeta:
    case Member::Pareto:
      params["beta"] = family.beta();
      break;
    case Member::Burr:
      params["alpha"] = family.alpha();
      break;
    case Member::Custom:
      if (family.has_power_curve()) {
        const auto& c = family.power_curve();
        j["custom_H"] = {{"shift", c.shift}, {"power", c.power}, {"scale", c.scale}};
      } else if (family.kind() == FamilyKind::ProportionalHazard) {
        j["custom_H_table"] = {{"x", family.table().x}, {"H", family.table().y}};
      } else {
        j["custom_R_table"] = {{"x", family.table().x}, {"R", family.table().y}};
      }
      break;
    default:
      break;
  }
  j["params"] = params;
  return j;
}

FamilySpec family_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("family must be a JSON object");
  if (j.contains("custom_H")) {
    const Json& c = j.at("custom_H");
    PowerCurve curve;
    curve.shift = get_or(c, "shift", 0.0);
    curve.power = get_or(c, "power", 1.0);
    curve.scale = get_or(c, "scale", 1.0);
    return FamilySpec::custom_hazard(curve);
  }
  if (j.contains("custom_H_table")) {
    return FamilySpec::custom_hazard(table_from_json(j.at("custom_H_table"), "H"));
  }
  if (j.contains("custom_R_table")) {
    return FamilySpec::custom_reversed_hazard(table_from_json(j.at("custom_R_table"), "R"));
  }
  const FamilyKind kind = parse_family_kind(get_or<std::string>(j, "kind", ""));
  const Member member = parse_member(get_or<std::string>(j, "member", ""));
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  switch (kind) {
    case FamilyKind::GammaType: {
      const FamilySpec f = FamilySpec::gamma_type(member, get_or(j, "p", 1.0),
                                                  get_or(params, "beta", 1.0));
      if (member != Member::Gamma && j.contains("p") &&
          std::abs(get_or(j, "p", f.shape_p()) - f.shape_p()) > 1e-12) {
        throw UsageError("member " + std::string(to_string(member)) + " fixes p = " +
                         std::to_string(f.shape_p()));
      }
      return f;
    }
    case FamilyKind::ProportionalHazard: {
      const double param = member == Member::Burr ? get_or(params, "alpha", 1.0)
                                                  : get_or(params, "beta", 1.0);
      return FamilySpec::hazard(member, param);
    }
    case FamilyKind::ProportionalReversedHazard:
      return FamilySpec::reversed_hazard(member);
  }
  throw UsageError("unsupported family");
}

Json theta_model_to_json(const ParameterSequenceModel& m) {
  Json j;
  j["name"] = std::string(to_string(m.scheme));
  switch (m.scheme) {
    case Scheme::Constant:
      j["theta"] = m.constant;
      break;
    case Scheme::WhiteNoise:
      j["mean"] = m.noise_mean;
      j["sd"] = m.noise_sd;
      break;
    case Scheme::StochasticGeometric:
      j["divisor"] = m.growth_divisor;
      j["redraw_per_index"] = m.redraw_per_index;
      break;
    case Scheme::UserSupplied:
      j["values"] = m.values;
      break;
    case Scheme::ArPositiveError:
      break;
  }
  return j;
}

ParameterSequenceModel theta_model_from_json(const Json& j) {
  const Json obj = j.is_string() ? Json{{"name", j.get<std::string>()}} : j;
  if (!obj.is_object()) throw UsageError("scheme must be a name or an object");
  ParameterSequenceModel m;
  m.scheme = parse_scheme(get_or<std::string>(obj, "name", ""));
  m.constant = get_or(obj, "theta", 1.0);
  m.noise_mean = get_or(obj, "mean", 10.0);
  m.noise_sd = get_or(obj, "sd", 1.0);
  m.growth_divisor = get_or(obj, "divisor", 10.0);
  m.redraw_per_index = get_or(obj, "redraw_per_index", true);
  m.values = get_or(obj, "values", std::vector<double>{});
  m.validate();
  return m;
}

SimulationRequest simulation_request_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("simulation config must be a JSON object");
  SimulationRequest req;
  SimulationConfig& c = req.config;
  c.family = family_from_json(require_field(j, "family"));
  c.theta_model = theta_model_from_json(require_field(j, "scheme"));
  c.n_target = get_or(j, "n_target", 2);
  c.n_min = get_or(j, "n_min", 1);
  c.replications = get_or<std::size_t>(j, "replications", 100000);
  c.master_seed = get_or<std::uint64_t>(j, "seed", kDefaultSeed);
  c.max_observations = get_or(j, "max_observations", 1e7);
  if (j.contains("estimators")) {
    for (const auto& e : j.at("estimators")) {
      if (!e.is_string()) throw UsageError("estimators must be a list of names");
      req.estimators.push_back(parse_estimator_id(e.get<std::string>()));
    }
  } else {
    req.estimators = {umvue_for(c.family), natural_for(c.family)};
  }
  c.validate();
  for (EstimatorId id : req.estimators) require_compatible(id, c.family);
  return req;
}

Json simulation_request_to_json(const SimulationRequest& req) {
  const SimulationConfig& c = req.config;
  Json j;
  j["family"] = family_to_json(c.family);
  j["scheme"] = theta_model_to_json(c.theta_model);
  j["n_target"] = c.n_target;
  j["n_min"] = c.n_min;
  j["replications"] = c.replications;
  j["seed"] = c.master_seed;
  j["max_observations"] = c.max_observations;
  Json ids = Json::array();
  for (EstimatorId id : req.estimators) ids.push_back(std::string(to_string(id)));
  j["estimators"] = ids;
  return j;
}

Json report_to_json(const EstimateReport& r) {
  return Json{{"n", r.n},
              {"estimator_id", std::string(to_string(r.estimator_id))},
              {"estimate", r.estimate},
              {"risk_estimate", r.risk_estimate},
              {"band", {r.band_lower, r.band_upper}},
              {"band_factor", r.band_factor}};
}

Json summary_to_json(const SimulationSummary& s) {
  Json cells = Json::array();
  for (const auto& c : s.cells) {
    cells.push_back(Json{{"estimator", std::string(to_string(c.estimator))},
                         {"n", c.n},
                         {"bias", nullable(c.bias)},
                         {"risk", nullable(c.risk)},
                         {"se_bias", nullable(c.se_bias)},
                         {"se_risk", nullable(c.se_risk)},
                         {"count", c.count}});
  }
  Json j{{"scheme", std::string(to_string(s.scheme))},
         {"family_kind", std::string(to_string(s.family_kind))},
         {"replications", s.replications},
         {"truncated", s.truncated},
         {"se_defined", s.replications - s.truncated >= 2},
         {"cells", cells}};
  if (s.family_kind == FamilyKind::GammaType) j["p"] = s.shape_p;
  return j;
}

Json table_to_json(const CriticalValueTable& t) {
  return Json{{"n_values", t.n_values},
              {"alphas", t.alphas},
              {"quantiles", t.quantiles},
              {"replications", t.replications},
              {"seed", t.master_seed}};
}

}  // namespace recsel
