#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace shiftbeat {

enum class MatchingMode { kGreedy, kExhaustive };

/// Global transformations of a detection sequence, in evaluation order.
enum class VariationKind { kOriginal, kDouble, kOffbeat, kHalfOdd, kHalfEven };

inline constexpr std::array<VariationKind, 5> kAllVariations = {
    VariationKind::kOriginal, VariationKind::kDouble, VariationKind::kOffbeat,
    VariationKind::kHalfOdd, VariationKind::kHalfEven};

std::string_view to_string(VariationKind kind) noexcept;
std::string_view to_string(MatchingMode mode) noexcept;
std::optional<VariationKind> parse_variation_kind(std::string_view name) noexcept;
std::optional<MatchingMode> parse_matching_mode(std::string_view name) noexcept;

struct EvalConfig {
  /// Half-width of the window in which a detection is a true positive (s).
  double inner_half_width = 0.070;
  /// Half-width of the window in which a detection may be shifted (s).
  double outer_half_width = 1.000;
  MatchingMode matching_mode = MatchingMode::kGreedy;
  std::vector<VariationKind> variation_kinds{kAllVariations.begin(),
                                             kAllVariations.end()};
  /// Upper bound on |detections| + |annotations| for exhaustive search.
  std::size_t max_exhaustive_events = 24;

  /// Throws InvalidInputError unless 0 < inner <= outer, both finite, and the
  /// variation list holds no repeats.
  void validate() const;
};

}  // namespace shiftbeat
