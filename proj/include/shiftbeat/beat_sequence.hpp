#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace shiftbeat {

/// Absolute slack applied to every tolerance-window comparison.
inline constexpr double kWindowSlack = 1e-9;

/// Ascending sequence of event times in seconds. Construction validates that
/// every time is finite, non-negative and that the sequence is non-decreasing.
class BeatSequence {
 public:
  BeatSequence() = default;
  explicit BeatSequence(std::vector<double> times);
  BeatSequence(std::initializer_list<double> times);

  /// Sorts first, then validates.
  static BeatSequence from_unsorted(std::vector<double> times);

  std::span<const double> times() const noexcept { return times_; }
  const std::vector<double>& vector() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  double operator[](std::size_t i) const { return times_[i]; }
  auto begin() const noexcept { return times_.begin(); }
  auto end() const noexcept { return times_.end(); }

  friend bool operator==(const BeatSequence&, const BeatSequence&) = default;

 private:
  std::vector<double> times_;
};

}  // namespace shiftbeat
