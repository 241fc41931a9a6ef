#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "shiftbeat/beat_sequence.hpp"
#include "shiftbeat/config.hpp"
#include "shiftbeat/eval.hpp"
#include "shiftbeat/variations.hpp"

namespace shiftbeat {

/// Colors used by the renderer. Each glyph kind has its own CSS class as well,
/// so documents can be restyled or inspected by class name:
///
///   inner-window   band of +-inner around every annotation
///   outer-window   band of +-outer around every detection that is shifted
///   annotation     vertical marker in the upper lane
///   detection      vertical marker in the lower lane
///   shift-arrow    arrow from a detection to its annotation
///   shift-label    signed offset in milliseconds
///   insertion      circle at an annotation time in the lower lane
///   deletion       cross over a detection
struct VizStyle {
  std::string background = "#ffffff";
  std::string annotation = "#1f77b4";
  std::string detection = "#333333";
  std::string inner_window = "#1f77b4";
  std::string outer_window = "#ff7f0e";
  std::string shift = "#ff7f0e";
  std::string insertion = "#2ca02c";
  std::string deletion = "#d62728";
  std::string text = "#000000";
  double inner_opacity = 0.18;
  double outer_opacity = 0.12;
  double font_size = 12.0;
};

struct VizSpec {
  /// Seconds. When unset, spans every event padded by the outer window.
  std::optional<std::pair<double, double>> time_range;
  double width = 1200.0;
  /// Height of one panel; comparison figures stack one panel per variation.
  double height = 220.0;
  VizStyle style;
};

/// Horizontal placement shared by every panel of a figure.
struct TimeAxis {
  double start = 0.0;
  double end = 1.0;
  double left = 0.0;
  double right = 1.0;

  double x(double seconds) const noexcept {
    return left + (seconds - start) / (end - start) * (right - left);
  }
  double seconds(double x_px) const noexcept {
    return start + (x_px - left) / (right - left) * (end - start);
  }
};

/// Axis a figure of the given width would use for these results.
TimeAxis figure_axis(std::span<const EvalResult* const> results, const BeatSequence& annotations,
                     const EvalConfig& config, const VizSpec& spec);

/// One panel: inner windows on all annotations, outer windows only on shifted
/// detections, arrows labelled with the correction offset, and distinct glyphs
/// for insertions and deletions. The title carries ae and F to three decimals.
/// Throws InvalidSpecError for non-positive dimensions or an inverted range.
std::string render_svg(const EvalResult& result, const BeatSequence& annotations,
                       const EvalConfig& config, const VizSpec& spec = {});

/// Panels stacked top to bottom in the order given, sharing one time axis.
/// Throws InvalidSpecError for an empty result list or a bad spec.
std::string render_comparison_svg(std::span<const VariationResult> results,
                                  const BeatSequence& annotations, const EvalConfig& config,
                                  const VizSpec& spec = {});

}  // namespace shiftbeat
