#include "shiftbeat/batch.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <optional>
#include <thread>

#include "shiftbeat/errors.hpp"

namespace shiftbeat {
namespace {

struct PairSlot {
  std::optional<PairReport> report;
  std::vector<std::string> warnings;
  std::exception_ptr error;
};

void run_pair(const CorpusPair& pair, const EvalConfig& config, PairSlot& slot) {
  try {
    BeatFile dets = read_beat_file(pair.detection_path);
    BeatFile anns = read_beat_file(pair.annotation_path);
    slot.warnings = std::move(dets.warnings);
    slot.warnings.insert(slot.warnings.end(), anns.warnings.begin(), anns.warnings.end());
    slot.report = PairReport{pair.id,
                             evaluate_all_variations(dets.sequence, anns.sequence, config)};
  } catch (const Error& e) {
    slot.error = std::current_exception();
    slot.warnings.push_back(pair.id + ": skipped: " + e.what());
  }
}

}  // namespace

CorpusOutcome evaluate_corpus(std::span<const CorpusPair> pairs, const EvalConfig& config,
                              std::size_t parallelism, bool strict) {
  config.validate();
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].id < pairs[b].id;
  });

  std::vector<PairSlot> slots(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      run_pair(pairs[order[i]], config, slots[i]);
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(1, pairs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  CorpusOutcome outcome;
  for (PairSlot& slot : slots) {
    if (slot.error && strict) std::rethrow_exception(slot.error);
    outcome.warnings.insert(outcome.warnings.end(), slot.warnings.begin(), slot.warnings.end());
    if (slot.report) {
      outcome.reports.push_back(std::move(*slot.report));
    } else {
      ++outcome.skipped;
    }
  }
  return outcome;
}

}  // namespace shiftbeat
