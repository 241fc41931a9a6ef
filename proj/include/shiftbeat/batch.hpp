#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shiftbeat/config.hpp"
#include "shiftbeat/io.hpp"

namespace shiftbeat {

struct CorpusOutcome {
  /// Sorted by pair id whatever the execution order.
  std::vector<PairReport> reports;
  /// Parse warnings and skipped pairs, grouped per pair in id order.
  std::vector<std::string> warnings;
  std::size_t skipped = 0;
};

/// Reads and evaluates every pair with up to `parallelism` worker threads.
/// A pair whose files fail to read or parse is skipped with a warning, unless
/// `strict` is set, in which case the first such error (in id order) is
/// rethrown.
CorpusOutcome evaluate_corpus(std::span<const CorpusPair> pairs, const EvalConfig& config,
                              std::size_t parallelism, bool strict = false);

}  // namespace shiftbeat
