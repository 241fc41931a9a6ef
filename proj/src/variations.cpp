#include "shiftbeat/variations.hpp"

#include <algorithm>

#include "shiftbeat/errors.hpp"

namespace shiftbeat {
namespace {

double midpoint(double a, double b) { return a + (b - a) / 2.0; }

}  // namespace

BeatSequence generate_variation(const BeatSequence& detections, VariationKind kind) {
  const auto& t = detections.vector();
  const std::size_t n = t.size();
  std::vector<double> out;
  switch (kind) {
    case VariationKind::kOriginal:
      return detections;
    case VariationKind::kDouble:
      if (n < 2) return detections;
      out.reserve(2 * n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out.push_back(midpoint(t[i - 1], t[i]));
        out.push_back(t[i]);
      }
      break;
    case VariationKind::kOffbeat:
      for (std::size_t i = 1; i < n; ++i) out.push_back(midpoint(t[i - 1], t[i]));
      break;
    case VariationKind::kHalfOdd:
      for (std::size_t i = 0; i < n; i += 2) out.push_back(t[i]);
      break;
    case VariationKind::kHalfEven:
      for (std::size_t i = 1; i < n; i += 2) out.push_back(t[i]);
      break;
  }
  return BeatSequence(std::move(out));
}

VariationSummary evaluate_all_variations(const BeatSequence& detections,
                                         const BeatSequence& annotations,
                                         const EvalConfig& config) {
  config.validate();
  if (config.variation_kinds.empty()) {
    throw InvalidInputError("no variations requested");
  }
  VariationSummary summary;
  for (VariationKind kind : kAllVariations) {
    const auto& wanted = config.variation_kinds;
    if (std::find(wanted.begin(), wanted.end(), kind) == wanted.end()) continue;
    VariationResult vr;
    vr.kind = kind;
    vr.varied = generate_variation(detections, kind);
    vr.result = evaluate_with_mode(vr.varied, annotations, config);
    summary.results.push_back(std::move(vr));
  }
  double best_ae = -1.0;
  for (const VariationResult& vr : summary.results) {
    if (vr.result.annotation_efficiency > best_ae) {
      best_ae = vr.result.annotation_efficiency;
      summary.best = vr.kind;
    }
  }
  return summary;
}

}  // namespace shiftbeat
