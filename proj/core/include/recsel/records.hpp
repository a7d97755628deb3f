#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "recsel/families.hpp"

namespace recsel {

enum class Direction { Upper, Lower };

// Record values of a finite sequence. Times are 1-based indices into the
// scanned sequence; times.front() == 1 whenever the set is nonempty.
struct RecordSet {
  std::vector<double> values;
  std::vector<std::size_t> times;
  Direction direction = Direction::Upper;
  std::size_t source_length = 0;

  std::size_t size() const { return values.size(); }
  bool operator==(const RecordSet&) const = default;
};

// Streaming record extraction. Feeds one observation at a time; equal values
// never form a new record.
class RecordAccumulator {
 public:
  explicit RecordAccumulator(Direction direction = Direction::Upper);

  // Returns true when `x` is a new record. Throws DataError on NaN/inf.
  bool push(double x);

  std::size_t count() const { return records_.values.size(); }
  double current() const { return records_.values.back(); }
  const RecordSet& records() const { return records_; }
  RecordSet take() && { return std::move(records_); }

 private:
  RecordSet records_;
};

RecordSet extract_records(std::span<const double> seq, Direction direction);

// Upper records of Y_i = S(X_i). Transforms first, so non-monotone S works.
RecordSet transformed_records(std::span<const double> seq, const FamilySpec& family);

// Upper records of the selection key (see selection_key). For Model 1 this is
// transformed_records; for the hazard family the H-values of the upper
// records; for the reversed family the -R values of the lower records.
RecordSet key_records(std::span<const double> seq, const FamilySpec& family);

}  // namespace recsel
