#include "shiftbeat/eval.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "shiftbeat/errors.hpp"

namespace shiftbeat {
namespace {

using Pairs = std::vector<std::pair<double, double>>;

const BeatSequence kTraceDets{1.0, 2.5, 4.5};
const BeatSequence kTraceAnns{1.0, 2.0, 3.0};

TEST(MatchTruePositivesTest, PairsWithinInnerWindow) {
  const auto m = match_true_positives({1.00, 2.05, 3.50}, {1.00, 2.00, 3.00}, 0.07);
  EXPECT_EQ(m.pairs, (Pairs{{1.00, 1.00}, {2.05, 2.00}}));
  EXPECT_EQ(m.unmatched_detections, BeatSequence({3.50}));
  EXPECT_EQ(m.unmatched_annotations, BeatSequence({3.00}));
  EXPECT_EQ(m.pairs.size(), oracle::brute_force_matching({1.00, 2.05, 3.50},
                                                        {1.00, 2.00, 3.00}, 0.07));
}

TEST(MatchTruePositivesTest, IdentityPairsEverything) {
  const BeatSequence s{0.5, 1.0, 1.5};
  const auto m = match_true_positives(s, s, 0.07);
  EXPECT_EQ(m.pairs.size(), 3u);
  EXPECT_TRUE(m.unmatched_detections.empty());
  EXPECT_TRUE(m.unmatched_annotations.empty());
}

TEST(MatchTruePositivesTest, EmptyDetections) {
  const auto m = match_true_positives({}, {1.0}, 0.07);
  EXPECT_TRUE(m.pairs.empty());
  EXPECT_EQ(m.unmatched_annotations, BeatSequence({1.0}));
}

TEST(MatchTruePositivesTest, EarliestUnusedDetection) {
  const auto m = match_true_positives({1.01, 1.03}, {1.00, 1.05}, 0.07);
  EXPECT_EQ(m.pairs, (Pairs{{1.01, 1.00}, {1.03, 1.05}}));
  EXPECT_EQ(oracle::brute_force_matching({1.01, 1.03}, {1.00, 1.05}, 0.07), 2u);
}

TEST(MatchTruePositivesTest, WindowBoundaryIsInclusive) {
  const auto m = match_true_positives({1.07}, {1.0}, 0.07);
  EXPECT_EQ(m.pairs.size(), 1u);
  const auto miss = match_true_positives({1.0701}, {1.0}, 0.07);
  EXPECT_TRUE(miss.pairs.empty());
}

TEST(MatchTruePositivesTest, RejectsNonPositiveWindow) {
  EXPECT_THROW(match_true_positives({1.0}, {1.0}, 0.0), InvalidInputError);
}

TEST(AssignShiftsTest, ClosestWithinOuterWindow) {
  const auto s = assign_shifts({2.5, 4.5}, {2.0, 3.0}, 1.0);
  ASSERT_EQ(s.shifts.size(), 1u);
  EXPECT_EQ(s.shifts[0], Operation::shift(2.5, 2.0));
  EXPECT_DOUBLE_EQ(s.shifts[0].offset(), -0.5);
  EXPECT_EQ(s.leftover_detections, BeatSequence({4.5}));
  EXPECT_EQ(s.leftover_annotations, BeatSequence({3.0}));
}

TEST(AssignShiftsTest, EmptyInputs) {
  const auto s = assign_shifts({}, {}, 1.0);
  EXPECT_TRUE(s.shifts.empty());
  EXPECT_TRUE(s.leftover_detections.empty());
  EXPECT_TRUE(s.leftover_annotations.empty());
}

TEST(AssignShiftsTest, TieGoesToEarlierDetection) {
  const auto s = assign_shifts({1.5, 2.5}, {2.0}, 1.0);
  ASSERT_EQ(s.shifts.size(), 1u);
  EXPECT_EQ(s.shifts[0], Operation::shift(1.5, 2.0));
  EXPECT_DOUBLE_EQ(s.shifts[0].offset(), 0.5);
  EXPECT_EQ(s.leftover_detections, BeatSequence({2.5}));
}

TEST(AssignShiftsTest, ClaimedDetectionsAreNotReused) {
  // 2.0 and 2.2 both prefer 2.1; the later annotation falls back to 3.0.
  const auto s = assign_shifts({2.1, 3.0}, {2.0, 2.2}, 1.0);
  ASSERT_EQ(s.shifts.size(), 2u);
  EXPECT_EQ(s.shifts[0], Operation::shift(2.1, 2.0));
  EXPECT_EQ(s.shifts[1], Operation::shift(3.0, 2.2));
}

TEST(EvaluateTest, HandTrace) {
  const EvalResult r = evaluate(kTraceDets, kTraceAnns, EvalConfig{});
  EXPECT_EQ(r.counts, (Counts{1, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(r.annotation_efficiency, 0.25);
  const std::vector<Operation> expected{Operation::match(1.0, 1.0), Operation::shift(2.5, 2.0),
                                        Operation::insert(3.0), Operation::remove(4.5)};
  EXPECT_EQ(r.ledger.operations, expected);
  EXPECT_EQ(r.transformed, BeatSequence({1.0, 2.0, 3.0}));
}

TEST(EvaluateTest, IdentityNeedsNoCorrection) {
  const BeatSequence s{0.5, 1.0, 1.6, 2.4};
  const EvalResult r = evaluate(s, s, EvalConfig{});
  EXPECT_EQ(r.counts, (Counts{4, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(r.annotation_efficiency, 1.0);
  EXPECT_DOUBLE_EQ(r.f_measure, 1.0);
}

TEST(EvaluateTest, NoDetections) {
  const EvalResult r = evaluate({}, {1, 2, 3}, EvalConfig{});
  EXPECT_EQ(r.counts, (Counts{0, 0, 0, 3}));
  EXPECT_DOUBLE_EQ(r.annotation_efficiency, 0.0);
  EXPECT_EQ(r.ledger.operations.size(), 3u);
  for (const Operation& op : r.ledger.operations) EXPECT_EQ(op.kind, OperationKind::kInsert);
}

TEST(EvaluateTest, BothEmpty) {
  const EvalResult r = evaluate({}, {}, EvalConfig{});
  EXPECT_DOUBLE_EQ(r.annotation_efficiency, 1.0);
  EXPECT_DOUBLE_EQ(r.f_measure, 1.0);
}

TEST(EvaluateTest, RejectsInvalidConfig) {
  EvalConfig c;
  c.inner_half_width = 2.0;
  c.outer_half_width = 1.0;
  EXPECT_THROW(evaluate(kTraceDets, kTraceAnns, c), InvalidInputError);
  c.inner_half_width = 0.0;
  EXPECT_THROW(evaluate(kTraceDets, kTraceAnns, c), InvalidInputError);
}

TEST(EvaluateTest, InvalidTimesRejectedAtConstruction) {
  EXPECT_THROW(BeatSequence({-1.0}), InvalidInputError);
  EXPECT_THROW(BeatSequence({1.0, std::nan("")}), InvalidInputError);
  EXPECT_THROW(BeatSequence({2.0, 1.0}), InvalidInputError);
}

TEST(EvaluateExhaustiveTest, HandTraceAgreesWithGreedy) {
  const EvalResult g = evaluate(kTraceDets, kTraceAnns, EvalConfig{});
  const EvalResult e = evaluate_exhaustive(kTraceDets, kTraceAnns, EvalConfig{});
  EXPECT_DOUBLE_EQ(e.annotation_efficiency, 0.25);
  EXPECT_EQ(e.counts, g.counts);
}

TEST(EvaluateExhaustiveTest, SingleEvent) {
  EXPECT_DOUBLE_EQ(evaluate_exhaustive({1.0}, {1.0}, EvalConfig{}).annotation_efficiency, 1.0);
}

TEST(EvaluateExhaustiveTest, SizeLimit) {
  EvalConfig c;
  c.max_exhaustive_events = 4;
  EXPECT_THROW(evaluate_exhaustive({1, 2, 3}, {1, 2}, c), SizeLimitError);
  EXPECT_NO_THROW(evaluate_exhaustive({1, 2}, {1, 2}, c));
}

TEST(EvaluateExhaustiveTest, BeatsGreedyWhenGreedyIsSuboptimal) {
  // Greedy hands 1.9 to 2.0, after which nothing reaches 2.85. Shifting
  // 1.3 -> 2.0 and 1.9 -> 2.85 serves both.
  const BeatSequence dets{0.5, 1.3, 1.9};
  const BeatSequence anns{0.5, 2.0, 2.85};
  const EvalResult g = evaluate(dets, anns, EvalConfig{});
  const EvalResult e = evaluate_exhaustive(dets, anns, EvalConfig{});
  EXPECT_DOUBLE_EQ(g.annotation_efficiency, 1.0 / 4.0);
  EXPECT_DOUBLE_EQ(e.annotation_efficiency, 1.0 / 3.0);
  EXPECT_EQ(e.counts.shifts, 2u);
  EXPECT_EQ(g.counts.shifts, 1u);
}

TEST(EvaluateExhaustiveTest, DominatesGreedyAndMatchesBruteForce) {
  std::mt19937_64 rng(7);
  const EvalConfig config;
  for (int trial = 0; trial < 400; ++trial) {
    const auto inst = oracle::random_small_instance(rng, 6, 4.0);
    const BeatSequence dets(inst.dets);
    const BeatSequence anns(inst.anns);
    const EvalResult g = evaluate(dets, anns, config);
    const EvalResult e = evaluate_exhaustive(dets, anns, config);
    EXPECT_GE(e.annotation_efficiency + 1e-12, g.annotation_efficiency);
    EXPECT_DOUBLE_EQ(e.annotation_efficiency,
                     oracle::brute_force_best_ae(inst.dets, inst.anns, 0.07, 1.0));
    const Counts& c = e.counts;
    EXPECT_EQ(c.true_positives + c.shifts + c.false_positives, dets.size());
    EXPECT_EQ(c.true_positives + c.shifts + c.false_negatives, anns.size());
  }
}

TEST(ApplyOperationsTest, HandTrace) {
  const EvalResult r = evaluate(kTraceDets, kTraceAnns, EvalConfig{});
  EXPECT_EQ(apply_operations(kTraceDets, r.ledger), BeatSequence({1.0, 2.0, 3.0}));
}

TEST(ApplyOperationsTest, MatchesOnlyLeaveDetectionsUnchanged) {
  const BeatSequence dets{1.0, 2.02};
  OperationLedger ledger{{Operation::match(1.0, 1.0), Operation::match(2.02, 2.0)}};
  EXPECT_EQ(apply_operations(dets, ledger), dets);
  EXPECT_EQ(apply_operations(dets, OperationLedger{}), dets);
}

TEST(ApplyOperationsTest, InsertionsIntoEmpty) {
  OperationLedger ledger{{Operation::insert(1.0), Operation::insert(2.0)}};
  EXPECT_EQ(apply_operations({}, ledger), BeatSequence({1.0, 2.0}));
}

TEST(ApplyOperationsTest, InconsistentLedger) {
  OperationLedger ledger{{Operation::remove(7.0)}};
  EXPECT_THROW(apply_operations(kTraceDets, ledger), InconsistentLedgerError);
  OperationLedger twice{{Operation::remove(1.0), Operation::shift(1.0, 2.0)}};
  EXPECT_THROW(apply_operations(kTraceDets, twice), InconsistentLedgerError);
}

TEST(MetricsTest, AnnotationEfficiency) {
  EXPECT_DOUBLE_EQ(annotation_efficiency({13, 3, 2, 2}), 13.0 / 20.0);
  EXPECT_DOUBLE_EQ(annotation_efficiency({5, 0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(annotation_efficiency({0, 2, 1, 1}), 0.0);
  EXPECT_DOUBLE_EQ(annotation_efficiency({1, 1, 1, 1}), 0.25);
  EXPECT_DOUBLE_EQ(annotation_efficiency({0, 0, 0, 0}), 1.0);
}

TEST(MetricsTest, FMeasure) {
  EXPECT_DOUBLE_EQ(f_measure({13, 3, 2, 2}), 26.0 / 36.0);
  EXPECT_DOUBLE_EQ(f_measure({9, 0, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(f_measure({0, 1, 0, 0}), 0.0);
  EXPECT_DOUBLE_EQ(f_measure({0, 0, 0, 0}), 1.0);
}

TEST(TransformationCurveTest, HandTrace) {
  const EvalConfig config;
  const EvalResult r = evaluate(kTraceDets, kTraceAnns, config);
  const auto curve = transformation_curve(kTraceDets, kTraceAnns, r.ledger, config);
  ASSERT_EQ(curve.size(), 4u);
  EXPECT_FALSE(curve[0].operation.has_value());
  EXPECT_NEAR(curve[0].f_measure, 2.0 / 6.0, 1e-9);
  EXPECT_NEAR(curve[1].f_measure, 4.0 / 6.0, 1e-9);
  EXPECT_NEAR(curve[2].f_measure, 6.0 / 7.0, 1e-9);
  EXPECT_NEAR(curve[3].f_measure, 1.0, 1e-9);
  EXPECT_EQ(curve[1].operation->kind, OperationKind::kShift);
  EXPECT_EQ(curve[2].operation->kind, OperationKind::kInsert);
  EXPECT_EQ(curve[3].operation->kind, OperationKind::kDelete);
}

TEST(TransformationCurveTest, AlignedInputIsSinglePoint) {
  const BeatSequence s{1.0, 2.0};
  const EvalResult r = evaluate(s, s, EvalConfig{});
  const auto curve = transformation_curve(s, s, r.ledger, EvalConfig{});
  ASSERT_EQ(curve.size(), 1u);
  EXPECT_DOUBLE_EQ(curve[0].f_measure, 1.0);
}

TEST(TransformationCurveTest, InconsistentLedger) {
  OperationLedger ledger{{Operation::shift(9.0, 1.0)}};
  EXPECT_THROW(transformation_curve(kTraceDets, kTraceAnns, ledger, EvalConfig{}),
               InconsistentLedgerError);
}

TEST(EvaluatePropertyTest, InvariantsOnRandomInstances) {
  std::mt19937_64 rng(2024);
  const EvalConfig config;
  for (int trial = 0; trial < 500; ++trial) {
    const auto inst = oracle::random_instance(rng, 40);
    const BeatSequence dets(inst.dets);
    const BeatSequence anns(inst.anns);
    const EvalResult r = evaluate(dets, anns, config);
    const Counts& c = r.counts;
    ASSERT_EQ(c.true_positives + c.shifts + c.false_positives, dets.size());
    ASSERT_EQ(c.true_positives + c.shifts + c.false_negatives, anns.size());
    ASSERT_EQ(c.true_positives, oracle::augmenting_matching(inst.dets, inst.anns, 0.07));
    for (const Operation& op : r.ledger.operations) {
      if (op.kind != OperationKind::kShift) continue;
      EXPECT_GT(std::abs(op.offset()), config.inner_half_width);
      EXPECT_LE(std::abs(op.offset()), config.outer_half_width + 1e-9);
    }
    if (!anns.empty()) {
      EXPECT_EQ(oracle::direct_f_measure(r.transformed.vector(), inst.anns, 0.07), 1.0);
    }
    EXPECT_DOUBLE_EQ(r.f_measure, oracle::direct_f_measure(inst.dets, inst.anns, 0.07));
    // Same input, same ledger.
    EXPECT_EQ(evaluate(dets, anns, config).ledger, r.ledger);
  }
}

TEST(EvaluatePropertyTest, ShrinkingInnerWindowNeverAddsTruePositives) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = oracle::random_instance(rng, 30);
    const BeatSequence dets(inst.dets);
    const BeatSequence anns(inst.anns);
    std::size_t previous = SIZE_MAX;
    for (double inner : {0.2, 0.1, 0.07, 0.03, 0.01, 1e-9}) {
      const std::size_t tp = match_true_positives(dets, anns, inner).pairs.size();
      EXPECT_LE(tp, previous);
      previous = tp;
    }
  }
}

}  // namespace
}  // namespace shiftbeat
