#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qclat {

/// Finite window a_first, ..., a_last of a strictly increasing real sequence.
///
/// Values are addressed by their sequence index n (not by storage position), so
/// a window built with base_index = -8 answers `at(0)` with the ninth stored value.
/// Instances are immutable once built.
class RealSequenceWindow {
 public:
  std::int64_t first_index() const noexcept { return base_index_; }
  std::int64_t last_index() const noexcept {
    return base_index_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  std::size_t size() const noexcept { return values_.size(); }
  bool contains(std::int64_t n) const noexcept { return n >= first_index() && n <= last_index(); }

  /// a_n for an in-window index n. Unchecked.
  double operator[](std::int64_t n) const noexcept {
    return values_[static_cast<std::size_t>(n - base_index_)];
  }
  /// a_n with bounds checking (throws std::out_of_range).
  double at(std::int64_t n) const;

  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const RealSequenceWindow&, const RealSequenceWindow&) = default;

 private:
  friend RealSequenceWindow build_sequence(std::vector<double> values, std::int64_t base_index);
  RealSequenceWindow(std::vector<double> values, std::int64_t base_index)
      : values_(std::move(values)), base_index_(base_index) {}

  std::vector<double> values_;
  std::int64_t base_index_ = 0;
};

/// Validates and wraps a window. Monotonicity is checked exactly on the given
/// doubles; NaN anywhere counts as a violation.
///
/// Throws Error{TooShort} for fewer than 3 values and
/// Error{NotStrictlyIncreasing, i} where i is the storage position with
/// values[i+1] <= values[i].
RealSequenceWindow build_sequence(std::vector<double> values, std::int64_t base_index = 0);

}  // namespace qclat
