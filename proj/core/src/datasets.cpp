#include "recsel/datasets.hpp"

#include "recsel/errors.hpp"

namespace recsel {

namespace {

// Upper record values of annual rainfall (inches) at the Los Angeles Civic
// Center, 1890-1989. Base cumulative hazard H(x) = (x - 4)^1.9, x > 4.
BundledDataset lacc_rainfall() {
  return BundledDataset{
      "lacc-rainfall-records",
      "upper records of annual Los Angeles Civic Center rainfall, 1890-1989",
      {12.69, 12.84, 18.72, 21.96, 23.92, 27.16, 31.28, 34.04},
      FamilySpec::custom_hazard(PowerCurve{4.0, 1.9, 1.0})};
}

}  // namespace

std::vector<std::string> bundled_dataset_names() { return {"lacc-rainfall-records"}; }

BundledDataset bundled_dataset(std::string_view name) {
  if (name == "lacc-rainfall-records") return lacc_rainfall();
  throw UsageError("unknown bundled dataset '" + std::string(name) + "'");
}

}  // namespace recsel
