#pragma once

#include <vector>

#include "shiftbeat/beat_sequence.hpp"
#include "shiftbeat/config.hpp"
#include "shiftbeat/eval.hpp"

namespace shiftbeat {

struct VariationResult {
  VariationKind kind = VariationKind::kOriginal;
  BeatSequence varied;
  EvalResult result;
};

struct VariationSummary {
  /// In listing order (original, double, offbeat, half_odd, half_even),
  /// restricted to the requested kinds.
  std::vector<VariationResult> results;
  /// Highest annotation efficiency; ties go to the earlier kind.
  VariationKind best = VariationKind::kOriginal;
};

/// double interleaves consecutive midpoints, offbeat keeps only the midpoints,
/// half_odd keeps the 1st, 3rd, ... events and half_even the 2nd, 4th, ...
/// With fewer than two events double returns the input and offbeat is empty.
BeatSequence generate_variation(const BeatSequence& detections, VariationKind kind);

/// Evaluates every kind in config.variation_kinds with config.matching_mode.
/// Only the local corrections enter the efficiency; the global variation
/// step itself is free. Throws InvalidInputError for an empty kind list.
VariationSummary evaluate_all_variations(const BeatSequence& detections,
                                         const BeatSequence& annotations,
                                         const EvalConfig& config);

}  // namespace shiftbeat
