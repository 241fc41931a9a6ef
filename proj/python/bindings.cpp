#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "shiftbeat/errors.hpp"
#include "shiftbeat/eval.hpp"
#include "shiftbeat/io.hpp"
#include "shiftbeat/svg.hpp"
#include "shiftbeat/variations.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
namespace sb = shiftbeat;

namespace {

std::string repr_counts(const sb::Counts& c) {
  return "Counts(true_positives=" + std::to_string(c.true_positives) +
         ", shifts=" + std::to_string(c.shifts) +
         ", false_positives=" + std::to_string(c.false_positives) +
         ", false_negatives=" + std::to_string(c.false_negatives) + ")";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Beat tracking evaluation by shifts, insertions and deletions";

  auto base = py::register_exception<sb::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<sb::InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
  py::register_exception<sb::SizeLimitError>(m, "SizeLimitError", base.ptr());
  py::register_exception<sb::InconsistentLedgerError>(m, "InconsistentLedgerError", base.ptr());
  py::register_exception<sb::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<sb::UnsupportedFormatError>(m, "UnsupportedFormatError", PyExc_ValueError);
  py::register_exception<sb::InvalidSpecError>(m, "InvalidSpecError", PyExc_ValueError);
  py::register_exception<sb::IoError>(m, "IoError", PyExc_OSError);

  py::class_<sb::BeatSequence>(m, "BeatSequence")
      .def(py::init<>())
      .def(py::init<std::vector<double>>(), "times"_a)
      .def_static("from_unsorted", &sb::BeatSequence::from_unsorted, "times"_a)
      .def_property_readonly("times", &sb::BeatSequence::vector)
      .def("__len__", &sb::BeatSequence::size)
      .def("__getitem__",
           [](const sb::BeatSequence& s, std::size_t i) {
             if (i >= s.size()) throw py::index_error();
             return s[i];
           })
      .def("__iter__",
           [](const sb::BeatSequence& s) { return py::make_iterator(s.begin(), s.end()); },
           py::keep_alive<0, 1>())
      .def(py::self == py::self)
      .def("__repr__", [](const sb::BeatSequence& s) {
        return "BeatSequence(" + py::repr(py::cast(s.vector())).cast<std::string>() + ")";
      });
  py::implicitly_convertible<py::list, sb::BeatSequence>();
  py::implicitly_convertible<py::tuple, sb::BeatSequence>();

  py::enum_<sb::MatchingMode>(m, "MatchingMode")
      .value("GREEDY", sb::MatchingMode::kGreedy)
      .value("EXHAUSTIVE", sb::MatchingMode::kExhaustive);

  py::enum_<sb::VariationKind>(m, "VariationKind")
      .value("ORIGINAL", sb::VariationKind::kOriginal)
      .value("DOUBLE", sb::VariationKind::kDouble)
      .value("OFFBEAT", sb::VariationKind::kOffbeat)
      .value("HALF_ODD", sb::VariationKind::kHalfOdd)
      .value("HALF_EVEN", sb::VariationKind::kHalfEven)
      .def_property_readonly("label", [](sb::VariationKind k) {
        return std::string(sb::to_string(k));
      });

  py::enum_<sb::OperationKind>(m, "OperationKind")
      .value("MATCH", sb::OperationKind::kMatch)
      .value("SHIFT", sb::OperationKind::kShift)
      .value("INSERT", sb::OperationKind::kInsert)
      .value("DELETE", sb::OperationKind::kDelete);

  py::class_<sb::EvalConfig>(m, "EvalConfig")
      .def(py::init<>())
      .def_readwrite("inner_half_width", &sb::EvalConfig::inner_half_width)
      .def_readwrite("outer_half_width", &sb::EvalConfig::outer_half_width)
      .def_readwrite("matching_mode", &sb::EvalConfig::matching_mode)
      .def_readwrite("variation_kinds", &sb::EvalConfig::variation_kinds)
      .def_readwrite("max_exhaustive_events", &sb::EvalConfig::max_exhaustive_events)
      .def("validate", &sb::EvalConfig::validate);

  py::class_<sb::Operation>(m, "Operation")
      .def_readonly("kind", &sb::Operation::kind)
      .def_readonly("detection_time", &sb::Operation::detection_time)
      .def_readonly("annotation_time", &sb::Operation::annotation_time)
      .def_property_readonly("offset", &sb::Operation::offset)
      .def(py::self == py::self);

  py::class_<sb::Counts>(m, "Counts")
      .def(py::init<std::size_t, std::size_t, std::size_t, std::size_t>(), "true_positives"_a,
           "shifts"_a, "false_positives"_a, "false_negatives"_a)
      .def_readwrite("true_positives", &sb::Counts::true_positives)
      .def_readwrite("shifts", &sb::Counts::shifts)
      .def_readwrite("false_positives", &sb::Counts::false_positives)
      .def_readwrite("false_negatives", &sb::Counts::false_negatives)
      .def(py::self == py::self)
      .def("__repr__", &repr_counts);

  py::class_<sb::OperationLedger>(m, "OperationLedger")
      .def(py::init<>())
      .def_readonly("operations", &sb::OperationLedger::operations)
      .def("counts", &sb::OperationLedger::counts);

  py::class_<sb::EvalResult>(m, "EvalResult")
      .def_readonly("counts", &sb::EvalResult::counts)
      .def_readonly("ledger", &sb::EvalResult::ledger)
      .def_readonly("annotation_efficiency", &sb::EvalResult::annotation_efficiency)
      .def_readonly("f_measure", &sb::EvalResult::f_measure)
      .def_readonly("transformed", &sb::EvalResult::transformed);

  py::class_<sb::VariationResult>(m, "VariationResult")
      .def_readonly("kind", &sb::VariationResult::kind)
      .def_readonly("varied", &sb::VariationResult::varied)
      .def_readonly("result", &sb::VariationResult::result);

  py::class_<sb::VariationSummary>(m, "VariationSummary")
      .def_readonly("results", &sb::VariationSummary::results)
      .def_readonly("best", &sb::VariationSummary::best);

  py::class_<sb::CurvePoint>(m, "CurvePoint")
      .def_readonly("operation", &sb::CurvePoint::operation)
      .def_readonly("f_measure", &sb::CurvePoint::f_measure);

  py::class_<sb::BeatFile>(m, "BeatFile")
      .def_readonly("path", &sb::BeatFile::path)
      .def_readonly("sequence", &sb::BeatFile::sequence)
      .def_readonly("warnings", &sb::BeatFile::warnings);

  const sb::EvalConfig defaults;

  m.def(
      "match_true_positives",
      [](const sb::BeatSequence& d, const sb::BeatSequence& a, double inner) {
        auto r = sb::match_true_positives(d, a, inner);
        return py::make_tuple(r.pairs, r.unmatched_detections, r.unmatched_annotations);
      },
      "detections"_a, "annotations"_a, "inner_half_width"_a = defaults.inner_half_width,
      "Returns (pairs, unmatched_detections, unmatched_annotations).");
  m.def(
      "assign_shifts",
      [](const sb::BeatSequence& d, const sb::BeatSequence& a, double outer) {
        auto r = sb::assign_shifts(d, a, outer);
        return py::make_tuple(r.shifts, r.leftover_detections, r.leftover_annotations);
      },
      "unmatched_detections"_a, "unmatched_annotations"_a,
      "outer_half_width"_a = defaults.outer_half_width,
      "Returns (shifts, leftover_detections, leftover_annotations).");
  m.def("evaluate", &sb::evaluate, "detections"_a, "annotations"_a,
        "config"_a = sb::EvalConfig{});
  m.def("evaluate_exhaustive", &sb::evaluate_exhaustive, "detections"_a, "annotations"_a,
        "config"_a = sb::EvalConfig{});
  m.def("apply_operations", &sb::apply_operations, "detections"_a, "ledger"_a);
  m.def("annotation_efficiency", &sb::annotation_efficiency, "counts"_a);
  m.def("f_measure", &sb::f_measure, "counts"_a);
  m.def("classic_f_measure", &sb::classic_f_measure, "detections"_a, "annotations"_a,
        "inner_half_width"_a = defaults.inner_half_width);
  m.def("transformation_curve", &sb::transformation_curve, "detections"_a, "annotations"_a,
        "ledger"_a, "config"_a = sb::EvalConfig{});
  m.def("generate_variation", &sb::generate_variation, "detections"_a, "kind"_a);
  m.def("evaluate_all_variations", &sb::evaluate_all_variations, "detections"_a,
        "annotations"_a, "config"_a = sb::EvalConfig{});
  m.def("parse_beats", &sb::parse_beats, "text"_a);
  m.def("read_beat_file", &sb::read_beat_file, "path"_a);
  m.def(
      "render_svg",
      [](const sb::EvalResult& r, const sb::BeatSequence& a, const sb::EvalConfig& c,
         double width, double height) {
        sb::VizSpec spec;
        spec.width = width;
        spec.height = height;
        return sb::render_svg(r, a, c, spec);
      },
      "result"_a, "annotations"_a, "config"_a = sb::EvalConfig{}, "width"_a = 1200.0,
      "height"_a = 220.0);
  m.def(
      "render_comparison_svg",
      [](const std::vector<sb::VariationResult>& results, const sb::BeatSequence& a,
         const sb::EvalConfig& c, double width, double height) {
        sb::VizSpec spec;
        spec.width = width;
        spec.height = height;
        return sb::render_comparison_svg(results, a, c, spec);
      },
      "results"_a, "annotations"_a, "config"_a = sb::EvalConfig{}, "width"_a = 1200.0,
      "height"_a = 220.0);
  m.def(
      "write_report",
      [](const std::vector<std::pair<std::string, sb::VariationSummary>>& pairs,
         const std::string& format, const sb::EvalConfig& config, bool corpus_summary) {
        std::vector<sb::PairReport> reports;
        for (const auto& [id, summary] : pairs) reports.push_back({id, summary});
        sb::ReportOptions options;
        options.config = config;
        options.corpus_summary = corpus_summary;
        options.allow_empty = true;
        return sb::write_report(reports, sb::parse_report_format(format), options);
      },
      "pairs"_a, "format"_a = "json", "config"_a = sb::EvalConfig{},
      "corpus_summary"_a = true,
      "Renders [(id, VariationSummary), ...] as json, csv or text.");
}
