#include "shiftbeat/config.hpp"

#include <algorithm>
#include <cmath>

#include "shiftbeat/errors.hpp"

namespace shiftbeat {

std::string_view to_string(VariationKind kind) noexcept {
  switch (kind) {
    case VariationKind::kOriginal: return "original";
    case VariationKind::kDouble: return "double";
    case VariationKind::kOffbeat: return "offbeat";
    case VariationKind::kHalfOdd: return "half_odd";
    case VariationKind::kHalfEven: return "half_even";
  }
  return "unknown";
}

std::string_view to_string(MatchingMode mode) noexcept {
  return mode == MatchingMode::kGreedy ? "greedy" : "exhaustive";
}

std::optional<VariationKind> parse_variation_kind(std::string_view name) noexcept {
  for (VariationKind kind : kAllVariations) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::optional<MatchingMode> parse_matching_mode(std::string_view name) noexcept {
  if (name == "greedy") return MatchingMode::kGreedy;
  if (name == "exhaustive") return MatchingMode::kExhaustive;
  return std::nullopt;
}

void EvalConfig::validate() const {
  if (!std::isfinite(inner_half_width) || !std::isfinite(outer_half_width)) {
    throw InvalidInputError("tolerance windows must be finite");
  }
  if (!(inner_half_width > 0.0)) {
    throw InvalidInputError("inner window must be positive");
  }
  if (inner_half_width > outer_half_width) {
    throw InvalidInputError("inner window exceeds outer window");
  }
  for (auto it = variation_kinds.begin(); it != variation_kinds.end(); ++it) {
    if (std::find(variation_kinds.begin(), it, *it) != it) {
      throw InvalidInputError("variation '" + std::string(to_string(*it)) +
                              "' listed twice");
    }
  }
}

}  // namespace shiftbeat
