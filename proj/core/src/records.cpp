#include "recsel/records.hpp"

#include <cmath>
#include <sstream>

#include "recsel/errors.hpp"

namespace recsel {

RecordAccumulator::RecordAccumulator(Direction direction) {
  records_.direction = direction;
}

bool RecordAccumulator::push(double x) {
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << "non-finite observation at position " << records_.source_length + 1;
    throw DataError(msg.str());
  }
  ++records_.source_length;
  bool is_record = records_.values.empty();
  if (!is_record) {
    const double best = records_.values.back();
    is_record = records_.direction == Direction::Upper ? x > best : x < best;
  }
  if (is_record) {
    records_.values.push_back(x);
    records_.times.push_back(records_.source_length);
  }
  return is_record;
}

RecordSet extract_records(std::span<const double> seq, Direction direction) {
  if (seq.empty()) throw UsageError("cannot extract records from an empty sequence");
  RecordAccumulator acc(direction);
  for (double x : seq) acc.push(x);
  return std::move(acc).take();
}

RecordSet transformed_records(std::span<const double> seq, const FamilySpec& family) {
  if (!family.is_model1()) {
    throw UsageError("transformed_records requires a gamma-type family");
  }
  if (seq.empty()) throw UsageError("cannot extract records from an empty sequence");
  RecordAccumulator acc(Direction::Upper);
  for (double x : seq) {
    if (!std::isfinite(x)) {
      std::ostringstream msg;
      msg << "non-finite observation at position " << acc.records().source_length + 1;
      throw DataError(msg.str());
    }
    acc.push(s_transform(family, x));
  }
  return std::move(acc).take();
}

RecordSet key_records(std::span<const double> seq, const FamilySpec& family) {
  if (family.is_model1()) return transformed_records(seq, family);
  const Direction dir = family.kind() == FamilyKind::ProportionalHazard ? Direction::Upper
                                                                         : Direction::Lower;
  RecordSet raw = extract_records(seq, dir);
  for (double& v : raw.values) v = selection_key(family, v);
  raw.direction = Direction::Upper;
  return raw;
}

}  // namespace recsel
