#include "shiftbeat/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "shiftbeat/errors.hpp"

namespace shiftbeat {
namespace {

std::string num(double v) {
  // Avoid "-0.000" so equal geometry always prints the same way.
  std::string s = fmt::format("{:.3f}", v);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void validate(const VizSpec& spec) {
  if (!std::isfinite(spec.width) || spec.width <= 0.0) {
    throw InvalidSpecError("figure width must be positive");
  }
  if (!std::isfinite(spec.height) || spec.height <= 0.0) {
    throw InvalidSpecError("figure height must be positive");
  }
  if (spec.time_range) {
    const auto [start, end] = *spec.time_range;
    if (!std::isfinite(start) || !std::isfinite(end) || !(start < end)) {
      throw InvalidSpecError("time range must be finite and increasing");
    }
  }
}

// Vertical layout of a panel, relative to its top edge.
struct Lanes {
  double title_y;
  double ann_top;
  double ann_bottom;
  double det_top;
  double det_bottom;
  double axis_y;

  explicit Lanes(double h)
      : title_y(0.09 * h),
        ann_top(0.14 * h),
        ann_bottom(0.44 * h),
        det_top(0.50 * h),
        det_bottom(0.80 * h),
        axis_y(0.86 * h) {}
};

double tick_step(double span) {
  const double raw = span / 10.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

void draw_panel(std::string& out, const EvalResult& result, const BeatSequence& annotations,
                const EvalConfig& config, const VizSpec& spec, const TimeAxis& axis,
                const std::string& title) {
  const VizStyle& st = spec.style;
  const Lanes lane(spec.height);
  const auto& ops = result.ledger.operations;
  const double det_mid = (lane.det_top + lane.det_bottom) / 2.0;

  out += fmt::format(R"svg(<text class="title" x="{}" y="{}" font-size="{}" fill="{}">{}</text>)svg"
                     "\n",
                     num(axis.left), num(lane.title_y), num(st.font_size), st.text,
                     xml_escape(title));

  for (double a : annotations) {
    const double x0 = axis.x(a - config.inner_half_width);
    const double x1 = axis.x(a + config.inner_half_width);
    out += fmt::format(
        R"svg(<rect class="inner-window" x="{}" y="{}" width="{}" height="{}" fill="{}" fill-opacity="{}"/>)svg"
        "\n",
        num(x0), num(lane.ann_top), num(x1 - x0), num(lane.det_bottom - lane.ann_top),
        st.inner_window, num(st.inner_opacity));
  }
  for (const Operation& op : ops) {
    if (op.kind != OperationKind::kShift) continue;
    const double d = *op.detection_time;
    const double x0 = axis.x(d - config.outer_half_width);
    const double x1 = axis.x(d + config.outer_half_width);
    out += fmt::format(
        R"svg(<rect class="outer-window" x="{}" y="{}" width="{}" height="{}" fill="{}" fill-opacity="{}"/>)svg"
        "\n",
        num(x0), num(lane.det_top), num(x1 - x0), num(lane.det_bottom - lane.det_top),
        st.outer_window, num(st.outer_opacity));
  }
  for (double a : annotations) {
    const double x = axis.x(a);
    out += fmt::format(
        R"svg(<line class="annotation" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="{3}" stroke-width="2"/>)svg"
        "\n",
        num(x), num(lane.ann_top), num(lane.ann_bottom), st.annotation);
  }
  for (const Operation& op : ops) {
    if (!op.detection_time) continue;
    const double x = axis.x(*op.detection_time);
    out += fmt::format(
        R"svg(<line class="detection" x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="{3}" stroke-width="2"/>)svg"
        "\n",
        num(x), num(lane.det_top), num(lane.det_bottom), st.detection);
  }
  for (const Operation& op : ops) {
    if (op.kind != OperationKind::kShift) continue;
    const double x0 = axis.x(*op.detection_time);
    const double x1 = axis.x(*op.annotation_time);
    out += fmt::format(
        R"svg(<line class="shift-arrow" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5" marker-end="url(#arrowhead)"/>)svg"
        "\n",
        num(x0), num(det_mid), num(x1), num(det_mid), st.shift);
    const long ms = std::lround(op.offset() * 1000.0);
    out += fmt::format(
        R"svg(<text class="shift-label" x="{}" y="{}" font-size="{}" fill="{}" text-anchor="middle">{:+d} ms</text>)svg"
        "\n",
        num((x0 + x1) / 2.0), num(det_mid - 4.0), num(st.font_size * 0.8), st.shift, ms);
  }
  const double r = std::max(3.0, 0.03 * spec.height);
  for (const Operation& op : ops) {
    if (op.kind != OperationKind::kInsert) continue;
    out += fmt::format(
        R"svg(<circle class="insertion" cx="{}" cy="{}" r="{}" fill="none" stroke="{}" stroke-width="2"/>)svg"
        "\n",
        num(axis.x(*op.annotation_time)), num(det_mid), num(r), st.insertion);
  }
  for (const Operation& op : ops) {
    if (op.kind != OperationKind::kDelete) continue;
    const double x = axis.x(*op.detection_time);
    out += fmt::format(
        R"svg(<path class="deletion" d="M {} {} L {} {} M {} {} L {} {}" stroke="{}" stroke-width="2"/>)svg"
        "\n",
        num(x - r), num(det_mid - r), num(x + r), num(det_mid + r), num(x - r),
        num(det_mid + r), num(x + r), num(det_mid - r), st.deletion);
  }

  out += fmt::format(
      R"svg(<line class="axis" x1="{0}" y1="{2}" x2="{1}" y2="{2}" stroke="{3}" stroke-width="1"/>)svg"
      "\n",
      num(axis.left), num(axis.right), num(lane.axis_y), st.text);
  const double step = tick_step(axis.end - axis.start);
  const auto first = static_cast<long>(std::ceil(axis.start / step - 1e-9));
  const auto last = static_cast<long>(std::floor(axis.end / step + 1e-9));
  for (long k = first; k <= last; ++k) {
    const double t = static_cast<double>(k) * step;
    const double x = axis.x(t);
    const double label = k == 0 ? 0.0 : t;
    out += fmt::format(
        R"svg(<text class="tick" x="{}" y="{}" font-size="{}" fill="{}" text-anchor="middle">{}</text>)svg"
        "\n",
        num(x), num(lane.axis_y + st.font_size), num(st.font_size * 0.8), st.text,
        fmt::format("{:g}", label));
  }
}

std::string header(double width, double height, const VizStyle& st) {
  std::string out = fmt::format(
      R"svg(<?xml version="1.0" encoding="UTF-8" standalone="no"?>)svg"
      "\n"
      R"svg(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{1}" viewBox="0 0 {0} {1}">)svg"
      "\n",
      num(width), num(height));
  out += fmt::format(
      "<defs>\n"
      R"svg(<marker id="arrowhead" markerWidth="8" markerHeight="6" refX="8" refY="3" orient="auto">)svg"
      "\n"
      R"svg(<path d="M 0 0 L 8 3 L 0 6 z" fill="{}"/>)svg"
      "\n</marker>\n</defs>\n",
      st.shift);
  out += fmt::format(R"svg(<rect class="background" x="0" y="0" width="{}" height="{}" fill="{}"/>)svg"
                     "\n",
                     num(width), num(height), st.background);
  return out;
}

std::string title_for(const EvalResult& r) {
  return fmt::format("ae={:.3f} F={:.3f}", r.annotation_efficiency, r.f_measure);
}

}  // namespace

TimeAxis figure_axis(std::span<const EvalResult* const> results, const BeatSequence& annotations,
                     const EvalConfig& config, const VizSpec& spec) {
  validate(spec);
  TimeAxis axis;
  const double margin = std::min(60.0, 0.1 * spec.width);
  axis.left = margin;
  axis.right = spec.width - std::min(20.0, 0.05 * spec.width);
  if (spec.time_range) {
    axis.start = spec.time_range->first;
    axis.end = spec.time_range->second;
    return axis;
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  auto cover = [&](double t) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  };
  for (double a : annotations) cover(a);
  for (const EvalResult* r : results) {
    for (const Operation& op : r->ledger.operations) {
      if (op.detection_time) cover(*op.detection_time);
      if (op.annotation_time) cover(*op.annotation_time);
    }
  }
  if (lo > hi) {
    axis.start = 0.0;
    axis.end = 1.0;
  } else {
    axis.start = lo - config.outer_half_width;
    axis.end = hi + config.outer_half_width;
  }
  return axis;
}

std::string render_svg(const EvalResult& result, const BeatSequence& annotations,
                       const EvalConfig& config, const VizSpec& spec) {
  const EvalResult* one[] = {&result};
  const TimeAxis axis = figure_axis(one, annotations, config, spec);
  std::string out = header(spec.width, spec.height, spec.style);
  draw_panel(out, result, annotations, config, spec, axis, title_for(result));
  out += "</svg>\n";
  return out;
}

std::string render_comparison_svg(std::span<const VariationResult> results,
                                  const BeatSequence& annotations, const EvalConfig& config,
                                  const VizSpec& spec) {
  validate(spec);
  if (results.empty()) throw InvalidSpecError("comparison needs at least one result");
  std::vector<const EvalResult*> ptrs;
  for (const VariationResult& vr : results) ptrs.push_back(&vr.result);
  const TimeAxis axis = figure_axis(ptrs, annotations, config, spec);

  std::size_t best = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].result.annotation_efficiency >
        results[best].result.annotation_efficiency) {
      best = i;
    }
  }

  std::string out = header(spec.width, spec.height * static_cast<double>(results.size()),
                           spec.style);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const VariationResult& vr = results[i];
    out += fmt::format(R"svg(<g class="panel" data-variation="{}" transform="translate(0,{})">)svg"
                       "\n",
                       to_string(vr.kind), num(spec.height * static_cast<double>(i)));
    out += fmt::format(
        R"svg(<rect class="panel-frame" x="0.5" y="0.5" width="{}" height="{}" fill="none" stroke="{}" stroke-width="1"/>)svg"
        "\n",
        num(spec.width - 1.0), num(spec.height - 1.0), spec.style.text);
    std::string title = fmt::format("{}: {}", to_string(vr.kind), title_for(vr.result));
    if (i == best) title += " (best)";
    draw_panel(out, vr.result, annotations, config, spec, axis, title);
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace shiftbeat
