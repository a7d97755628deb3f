#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "recsel/families.hpp"

namespace recsel {

struct BundledDataset {
  std::string name;
  std::string description;
  std::vector<double> values;
  FamilySpec family;
};

// Names accepted by bundled_dataset().
std::vector<std::string> bundled_dataset_names();

// Throws UsageError for an unknown name.
BundledDataset bundled_dataset(std::string_view name);

}  // namespace recsel
