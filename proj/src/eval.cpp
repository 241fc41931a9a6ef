#include "shiftbeat/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <unordered_map>

#include "shiftbeat/errors.hpp"

namespace shiftbeat {
namespace {

bool within(double detection, double annotation, double half_width) {
  return std::abs(detection - annotation) <= half_width + kWindowSlack;
}

int kind_rank(OperationKind kind) { return static_cast<int>(kind); }

// Sort key: group, then the time that anchors the operation, then the other.
std::tuple<int, double, double> ledger_key(const Operation& op) {
  switch (op.kind) {
    case OperationKind::kMatch:
    case OperationKind::kShift:
      return {kind_rank(op.kind), *op.annotation_time, *op.detection_time};
    case OperationKind::kInsert:
      return {kind_rank(op.kind), *op.annotation_time, 0.0};
    case OperationKind::kDelete:
      return {kind_rank(op.kind), *op.detection_time, 0.0};
  }
  return {};
}

// Removes one element equal to `time` from a sorted vector.
void erase_one(std::vector<double>& sorted, double time, const char* context) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), time);
  if (it == sorted.end() || *it != time) {
    throw InconsistentLedgerError(std::string(context) + " refers to detection at " +
                                  std::to_string(time) +
                                  " which is not in the detection sequence");
  }
  sorted.erase(it);
}

void insert_sorted(std::vector<double>& sorted, double time) {
  sorted.insert(std::upper_bound(sorted.begin(), sorted.end(), time), time);
}

std::size_t max_matching_size(std::span<const double> detections,
                              std::span<const double> annotations,
                              double inner_half_width) {
  std::size_t matched = 0;
  std::size_t next = 0;
  for (double annotation : annotations) {
    while (next < detections.size() &&
           detections[next] < annotation - inner_half_width - kWindowSlack) {
      ++next;
    }
    if (next < detections.size() && within(detections[next], annotation, inner_half_width)) {
      ++matched;
      ++next;
    }
  }
  return matched;
}

double f_from_matching(std::size_t matched, std::size_t n_detections,
                       std::size_t n_annotations) {
  if (n_detections + n_annotations == 0) return 1.0;
  return 2.0 * static_cast<double>(matched) /
         static_cast<double>(n_detections + n_annotations);
}

EvalResult finish(const BeatSequence& detections, OperationLedger ledger) {
  ledger.canonicalize();
  EvalResult result;
  result.counts = ledger.counts();
  result.annotation_efficiency = annotation_efficiency(result.counts);
  result.f_measure = f_measure(result.counts);
  result.transformed = apply_operations(detections, ledger);
  result.ledger = std::move(ledger);
  return result;
}

}  // namespace

std::string_view to_string(OperationKind kind) noexcept {
  switch (kind) {
    case OperationKind::kMatch: return "match";
    case OperationKind::kShift: return "shift";
    case OperationKind::kInsert: return "insert";
    case OperationKind::kDelete: return "delete";
  }
  return "unknown";
}

Operation Operation::match(double detection, double annotation) {
  return {OperationKind::kMatch, detection, annotation};
}
Operation Operation::shift(double detection, double annotation) {
  return {OperationKind::kShift, detection, annotation};
}
Operation Operation::insert(double annotation) {
  return {OperationKind::kInsert, std::nullopt, annotation};
}
Operation Operation::remove(double detection) {
  return {OperationKind::kDelete, detection, std::nullopt};
}

double Operation::offset() const noexcept {
  if (!detection_time || !annotation_time) return 0.0;
  return *annotation_time - *detection_time;
}

Counts OperationLedger::counts() const noexcept {
  Counts counts;
  for (const Operation& op : operations) {
    switch (op.kind) {
      case OperationKind::kMatch: ++counts.true_positives; break;
      case OperationKind::kShift: ++counts.shifts; break;
      case OperationKind::kInsert: ++counts.false_negatives; break;
      case OperationKind::kDelete: ++counts.false_positives; break;
    }
  }
  return counts;
}

void OperationLedger::canonicalize() {
  std::stable_sort(operations.begin(), operations.end(),
                   [](const Operation& a, const Operation& b) {
                     return ledger_key(a) < ledger_key(b);
                   });
}

TruePositiveMatch match_true_positives(const BeatSequence& detections,
                                       const BeatSequence& annotations,
                                       double inner_half_width) {
  if (!(inner_half_width > 0.0)) {
    throw InvalidInputError("inner window must be positive");
  }
  TruePositiveMatch out;
  std::vector<double> lone_detections;
  std::vector<double> lone_annotations;
  std::size_t next = 0;
  for (double annotation : annotations) {
    // Detections left of this window are left of every later window too.
    while (next < detections.size() &&
           detections[next] < annotation - inner_half_width - kWindowSlack) {
      lone_detections.push_back(detections[next]);
      ++next;
    }
    if (next < detections.size() && within(detections[next], annotation, inner_half_width)) {
      out.pairs.emplace_back(detections[next], annotation);
      ++next;
    } else {
      lone_annotations.push_back(annotation);
    }
  }
  lone_detections.insert(lone_detections.end(), detections.begin() + next,
                         detections.end());
  out.unmatched_detections = BeatSequence(std::move(lone_detections));
  out.unmatched_annotations = BeatSequence(std::move(lone_annotations));
  return out;
}

ShiftAssignment assign_shifts(const BeatSequence& unmatched_detections,
                              const BeatSequence& unmatched_annotations,
                              double outer_half_width) {
  const auto dets = unmatched_detections.times();
  std::vector<bool> claimed(dets.size(), false);
  ShiftAssignment out;
  std::vector<double> leftover_annotations;

  for (double annotation : unmatched_annotations) {
    const auto pivot = static_cast<std::size_t>(
        std::lower_bound(dets.begin(), dets.end(), annotation) - dets.begin());
    std::optional<std::size_t> best;
    double best_distance = 0.0;
    auto consider = [&](std::size_t i) {
      const double distance = std::abs(dets[i] - annotation);
      // Near-equal distances count as a tie and keep the earlier detection.
      if (!best || distance < best_distance - kWindowSlack ||
          (distance <= best_distance + kWindowSlack && i < *best)) {
        best = i;
        best_distance = distance;
      }
    };
    for (std::size_t i = pivot; i-- > 0;) {
      if (!within(dets[i], annotation, outer_half_width)) break;
      if (!claimed[i]) consider(i);
    }
    for (std::size_t i = pivot; i < dets.size(); ++i) {
      if (!within(dets[i], annotation, outer_half_width)) break;
      if (!claimed[i]) consider(i);
    }
    if (best) {
      claimed[*best] = true;
      out.shifts.push_back(Operation::shift(dets[*best], annotation));
    } else {
      leftover_annotations.push_back(annotation);
    }
  }

  std::vector<double> leftover_detections;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (!claimed[i]) leftover_detections.push_back(dets[i]);
  }
  out.leftover_detections = BeatSequence(std::move(leftover_detections));
  out.leftover_annotations = BeatSequence(std::move(leftover_annotations));
  return out;
}

EvalResult evaluate(const BeatSequence& detections, const BeatSequence& annotations,
                    const EvalConfig& config) {
  config.validate();
  const TruePositiveMatch tp =
      match_true_positives(detections, annotations, config.inner_half_width);
  ShiftAssignment shifted = assign_shifts(tp.unmatched_detections,
                                          tp.unmatched_annotations,
                                          config.outer_half_width);
  OperationLedger ledger;
  for (const auto& [det, ann] : tp.pairs) {
    ledger.operations.push_back(Operation::match(det, ann));
  }
  for (Operation& op : shifted.shifts) ledger.operations.push_back(op);
  for (double ann : shifted.leftover_annotations) {
    ledger.operations.push_back(Operation::insert(ann));
  }
  for (double det : shifted.leftover_detections) {
    ledger.operations.push_back(Operation::remove(det));
  }
  return finish(detections, std::move(ledger));
}

namespace {

// Search over partial pairings. Annotations are visited in ascending order;
// for each one the options are, in order: a true-positive detection, a
// shift detection (each by ascending detection index), or no partner. The
// first pairing in that order reaching the optimal (t+, s) is returned.
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(std::span<const double> dets, std::span<const double> anns,
                   const EvalConfig& config)
      : dets_(dets), anns_(anns), memo_(anns.size()) {
    options_.resize(anns.size());
    for (std::size_t j = 0; j < anns.size(); ++j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < dets.size(); ++i) {
          const bool inner = within(dets[i], anns[j], config.inner_half_width);
          const bool outer = within(dets[i], anns[j], config.outer_half_width);
          if (pass == 0 && inner) options_[j].push_back({i, true});
          if (pass == 1 && outer && !inner) options_[j].push_back({i, false});
        }
      }
    }
    limit_ = std::min(dets.size(), anns.size());
  }

  OperationLedger run() {
    const Reachable& root = reachable(0, 0);
    std::size_t best_t = 0;
    std::size_t best_s = 0;
    bool have = false;
    const std::size_t total = dets_.size() + anns_.size();
    for (std::size_t t = 0; t <= limit_; ++t) {
      for (std::size_t s = 0; t + s <= limit_; ++s) {
        if (!(root[t] >> s & 1U)) continue;
        if (!have || better(t, s, best_t, best_s, total)) {
          best_t = t;
          best_s = s;
          have = true;
        }
      }
    }
    return reconstruct(best_t, best_s);
  }

 private:
  struct Option {
    std::size_t detection;
    bool true_positive;
  };
  // reachable[t] has bit s set when (t+, s) is attainable from a state.
  using Reachable = std::vector<std::uint64_t>;

  static bool better(std::size_t t, std::size_t s, std::size_t bt, std::size_t bs,
                     std::size_t total) {
    // ae = t / (total - t - s); compare as exact fractions.
    const std::size_t den = total - t - s;
    const std::size_t best_den = total - bt - bs;
    const std::size_t lhs = t * best_den;
    const std::size_t rhs = bt * den;
    if (lhs != rhs) return lhs > rhs;
    if (t != bt) return t > bt;
    return s < bs;
  }

  const Reachable& reachable(std::size_t j, std::uint64_t used) {
    if (j == anns_.size()) {
      if (terminal_.empty()) {
        terminal_.assign(limit_ + 1, 0U);
        terminal_[0] = 1U;
      }
      return terminal_;
    }
    auto found = memo_[j].find(used);
    if (found != memo_[j].end()) return found->second;

    Reachable acc(limit_ + 1, 0U);
    auto merge = [&](const Reachable& sub, bool true_positive, bool paired) {
      for (std::size_t t = 0; t <= limit_; ++t) {
        if (!sub[t]) continue;
        if (!paired) {
          acc[t] |= sub[t];
        } else if (true_positive) {
          if (t + 1 <= limit_) acc[t + 1] |= sub[t];
        } else {
          acc[t] |= sub[t] << 1;
        }
      }
    };
    merge(reachable(j + 1, used), false, false);
    for (const Option& opt : options_[j]) {
      const std::uint64_t bit = std::uint64_t{1} << opt.detection;
      if (used & bit) continue;
      merge(reachable(j + 1, used | bit), opt.true_positive, true);
    }
    return memo_[j].emplace(used, std::move(acc)).first->second;
  }

  OperationLedger reconstruct(std::size_t t, std::size_t s) {
    OperationLedger ledger;
    std::uint64_t used = 0;
    for (std::size_t j = 0; j < anns_.size(); ++j) {
      bool placed = false;
      for (const Option& opt : options_[j]) {
        const std::uint64_t bit = std::uint64_t{1} << opt.detection;
        if (used & bit) continue;
        if (opt.true_positive ? t == 0 : s == 0) continue;
        const std::size_t need_t = opt.true_positive ? t - 1 : t;
        const std::size_t need_s = opt.true_positive ? s : s - 1;
        const Reachable& next = reachable(j + 1, used | bit);
        if (!(next[need_t] >> need_s & 1U)) continue;
        used |= bit;
        t = need_t;
        s = need_s;
        const double det = dets_[opt.detection];
        ledger.operations.push_back(opt.true_positive ? Operation::match(det, anns_[j])
                                                      : Operation::shift(det, anns_[j]));
        placed = true;
        break;
      }
      if (!placed) ledger.operations.push_back(Operation::insert(anns_[j]));
    }
    for (std::size_t i = 0; i < dets_.size(); ++i) {
      if (!(used >> i & 1U)) ledger.operations.push_back(Operation::remove(dets_[i]));
    }
    return ledger;
  }

  std::span<const double> dets_;
  std::span<const double> anns_;
  std::vector<std::vector<Option>> options_;
  std::vector<std::unordered_map<std::uint64_t, Reachable>> memo_;
  Reachable terminal_;
  std::size_t limit_ = 0;
};

}  // namespace

EvalResult evaluate_exhaustive(const BeatSequence& detections,
                               const BeatSequence& annotations,
                               const EvalConfig& config) {
  config.validate();
  const std::size_t total = detections.size() + annotations.size();
  if (total > config.max_exhaustive_events) {
    throw SizeLimitError("exhaustive search limited to " +
                         std::to_string(config.max_exhaustive_events) +
                         " events, instance has " + std::to_string(total));
  }
  if (detections.size() > 63) {
    throw SizeLimitError("exhaustive search supports at most 63 detections");
  }
  ExhaustiveSearch search(detections.times(), annotations.times(), config);
  return finish(detections, search.run());
}

EvalResult evaluate_with_mode(const BeatSequence& detections,
                              const BeatSequence& annotations,
                              const EvalConfig& config) {
  return config.matching_mode == MatchingMode::kExhaustive
             ? evaluate_exhaustive(detections, annotations, config)
             : evaluate(detections, annotations, config);
}

BeatSequence apply_operations(const BeatSequence& detections,
                              const OperationLedger& ledger) {
  std::vector<double> remaining = detections.vector();
  std::vector<double> added;
  for (const Operation& op : ledger.operations) {
    switch (op.kind) {
      case OperationKind::kMatch:
        erase_one(remaining, *op.detection_time, "match");
        added.push_back(*op.detection_time);
        break;
      case OperationKind::kShift:
        erase_one(remaining, *op.detection_time, "shift");
        added.push_back(*op.annotation_time);
        break;
      case OperationKind::kInsert:
        added.push_back(*op.annotation_time);
        break;
      case OperationKind::kDelete:
        erase_one(remaining, *op.detection_time, "delete");
        break;
    }
  }
  remaining.insert(remaining.end(), added.begin(), added.end());
  return BeatSequence::from_unsorted(std::move(remaining));
}

double annotation_efficiency(const Counts& c) noexcept {
  const std::size_t den = c.true_positives + c.shifts + c.false_positives + c.false_negatives;
  if (den == 0) return 1.0;
  return static_cast<double>(c.true_positives) / static_cast<double>(den);
}

double f_measure(const Counts& c) noexcept {
  const std::size_t fp = c.false_positives + c.shifts;
  const std::size_t fn = c.false_negatives + c.shifts;
  const std::size_t den = 2 * c.true_positives + fp + fn;
  if (den == 0) return 1.0;
  return 2.0 * static_cast<double>(c.true_positives) / static_cast<double>(den);
}

double classic_f_measure(const BeatSequence& detections, const BeatSequence& annotations,
                         double inner_half_width) {
  const std::size_t matched =
      max_matching_size(detections.times(), annotations.times(), inner_half_width);
  return f_from_matching(matched, detections.size(), annotations.size());
}

std::vector<CurvePoint> transformation_curve(const BeatSequence& detections,
                                             const BeatSequence& annotations,
                                             const OperationLedger& ledger,
                                             const EvalConfig& config) {
  config.validate();
  const double inner = config.inner_half_width;
  std::vector<double> current = detections.vector();
  auto score = [&] {
    return f_from_matching(max_matching_size(current, annotations.times(), inner),
                           current.size(), annotations.size());
  };

  // Every referenced detection must exist before anything is applied.
  {
    std::vector<double> check = current;
    for (const Operation& op : ledger.operations) {
      if (op.kind != OperationKind::kInsert) {
        erase_one(check, *op.detection_time, std::string(to_string(op.kind)).c_str());
      }
    }
  }

  std::vector<Operation> steps;
  for (OperationKind kind :
       {OperationKind::kShift, OperationKind::kInsert, OperationKind::kDelete}) {
    for (const Operation& op : ledger.operations) {
      if (op.kind == kind) steps.push_back(op);
    }
  }
  std::stable_sort(steps.begin(), steps.end(), [](const Operation& a, const Operation& b) {
    return ledger_key(a) < ledger_key(b);
  });

  std::vector<CurvePoint> curve;
  curve.push_back({std::nullopt, score()});
  for (const Operation& op : steps) {
    switch (op.kind) {
      case OperationKind::kShift:
        erase_one(current, *op.detection_time, "shift");
        insert_sorted(current, *op.annotation_time);
        break;
      case OperationKind::kInsert:
        insert_sorted(current, *op.annotation_time);
        break;
      case OperationKind::kDelete:
        erase_one(current, *op.detection_time, "delete");
        break;
      case OperationKind::kMatch:
        break;
    }
    curve.push_back({op, score()});
  }
  return curve;
}

}  // namespace shiftbeat
