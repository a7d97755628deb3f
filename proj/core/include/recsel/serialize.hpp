#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "recsel/estimators.hpp"
#include "recsel/families.hpp"
#include "recsel/montecarlo.hpp"
#include "recsel/stationarity.hpp"

namespace recsel {

using Json = nlohmann::json;

// {"kind": "...", "member": "...", "p": ..., "params": {...}}. Custom hazard
// members use "custom_H": {"shift", "power", "scale"} for
// H(x) = (x - shift)^power / scale, or "custom_H_table": {"x": [...], "H": [...]}
// and "custom_R_table": {"x": [...], "R": [...]} for tabulated curves.
Json family_to_json(const FamilySpec& family);
FamilySpec family_from_json(const Json& j);

Json theta_model_to_json(const ParameterSequenceModel& model);
ParameterSequenceModel theta_model_from_json(const Json& j);

struct SimulationRequest {
  SimulationConfig config;
  std::vector<EstimatorId> estimators;
};

// {"family", "scheme", "n_target", "n_min", "replications", "seed",
//  "max_observations", "estimators"}; estimators default to the family's
// UMVUE and natural estimator.
SimulationRequest simulation_request_from_json(const Json& j);
Json simulation_request_to_json(const SimulationRequest& request);

Json report_to_json(const EstimateReport& report);
Json summary_to_json(const SimulationSummary& summary);
Json table_to_json(const CriticalValueTable& table);

}  // namespace recsel
