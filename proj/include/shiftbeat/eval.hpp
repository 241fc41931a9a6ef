#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "shiftbeat/beat_sequence.hpp"
#include "shiftbeat/config.hpp"

namespace shiftbeat {

enum class OperationKind { kMatch, kShift, kInsert, kDelete };

std::string_view to_string(OperationKind kind) noexcept;

/// One correction step. Inserts carry only an annotation time, deletes only a
/// detection time; matches and shifts carry both.
struct Operation {
  OperationKind kind = OperationKind::kMatch;
  std::optional<double> detection_time;
  std::optional<double> annotation_time;

  static Operation match(double detection, double annotation);
  static Operation shift(double detection, double annotation);
  static Operation insert(double annotation);
  static Operation remove(double detection);

  /// annotation_time - detection_time; zero for inserts and deletes.
  double offset() const noexcept;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// t+, s, f+ and f-.
struct Counts {
  std::size_t true_positives = 0;
  std::size_t shifts = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

/// Operations grouped as matches, shifts, insertions, deletions, each group
/// in chronological order.
struct OperationLedger {
  std::vector<Operation> operations;

  Counts counts() const noexcept;
  /// Sorts into canonical group and chronological order.
  void canonicalize();

  friend bool operator==(const OperationLedger&, const OperationLedger&) = default;
};

struct EvalResult {
  Counts counts;
  OperationLedger ledger;
  double annotation_efficiency = 1.0;
  double f_measure = 1.0;
  BeatSequence transformed;
};

struct TruePositiveMatch {
  /// (detection, annotation) pairs in ascending annotation order.
  std::vector<std::pair<double, double>> pairs;
  BeatSequence unmatched_detections;
  BeatSequence unmatched_annotations;
};

struct ShiftAssignment {
  std::vector<Operation> shifts;
  BeatSequence leftover_detections;
  BeatSequence leftover_annotations;
};

struct CurvePoint {
  /// Empty for the initial point.
  std::optional<Operation> operation;
  double f_measure = 1.0;
};

/// Pairs each annotation, in ascending order, with the earliest unused
/// detection within the inner window. Because every window has the same
/// width, this sweep yields a maximum matching.
TruePositiveMatch match_true_positives(const BeatSequence& detections,
                                       const BeatSequence& annotations,
                                       double inner_half_width);

/// Each remaining annotation, in ascending order, claims the closest unclaimed
/// detection within the outer window; equal distances go to the earlier
/// detection.
ShiftAssignment assign_shifts(const BeatSequence& unmatched_detections,
                              const BeatSequence& unmatched_annotations,
                              double outer_half_width);

/// Greedy pipeline: true positives, then shifts, then insertions for the
/// leftover annotations and deletions for the leftover detections.
EvalResult evaluate(const BeatSequence& detections, const BeatSequence& annotations,
                    const EvalConfig& config);

/// Searches every one-to-one partial pairing and returns the one with the
/// highest annotation efficiency. Throws SizeLimitError above
/// config.max_exhaustive_events.
EvalResult evaluate_exhaustive(const BeatSequence& detections,
                               const BeatSequence& annotations,
                               const EvalConfig& config);

/// Dispatches on config.matching_mode.
EvalResult evaluate_with_mode(const BeatSequence& detections,
                              const BeatSequence& annotations,
                              const EvalConfig& config);

/// Applies every operation in the ledger; detections the ledger does not
/// mention are kept. Throws InconsistentLedgerError when an operation names a
/// detection that is absent (or already consumed).
BeatSequence apply_operations(const BeatSequence& detections,
                              const OperationLedger& ledger);

/// t+ / (t+ + s + f+ + f-), or 1 when every count is zero.
double annotation_efficiency(const Counts& counts) noexcept;

/// Classic F-measure where each shift counts as one false positive and one
/// false negative. 1 when every count is zero.
double f_measure(const Counts& counts) noexcept;

/// F-measure of detections against annotations under inner-window maximum
/// matching.
double classic_f_measure(const BeatSequence& detections,
                         const BeatSequence& annotations, double inner_half_width);

/// F-measure after each shift, insertion and deletion is applied in turn,
/// starting from the untouched detections.
std::vector<CurvePoint> transformation_curve(const BeatSequence& detections,
                                             const BeatSequence& annotations,
                                             const OperationLedger& ledger,
                                             const EvalConfig& config);

}  // namespace shiftbeat
