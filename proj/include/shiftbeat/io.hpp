#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shiftbeat/beat_sequence.hpp"
#include "shiftbeat/config.hpp"
#include "shiftbeat/variations.hpp"

namespace shiftbeat {

struct BeatFile {
  std::filesystem::path path;
  BeatSequence sequence;
  /// One entry per normalization, each prefixed with its line number (and the
  /// path when read from disk).
  std::vector<std::string> warnings;
};

/// One event per non-empty line. Lines whose first non-blank character is '#'
/// are comments. The first whitespace- or comma-separated token is the time in
/// seconds; anything after it is ignored. Unsorted input is sorted and
/// duplicates are kept, each with a warning. Throws ParseError for a
/// non-numeric, negative or non-finite time.
BeatFile parse_beats(std::string_view text);

/// Reads and parses a file. Throws IoError when it cannot be read; parse
/// errors carry the path in their message.
BeatFile read_beat_file(const std::filesystem::path& path);

/// One time per line with full round-trip precision.
std::string format_beats(const BeatSequence& sequence);

struct CorpusPair {
  std::string id;
  std::filesystem::path detection_path;
  std::filesystem::path annotation_path;
};

struct CorpusPairing {
  /// Sorted by id.
  std::vector<CorpusPair> pairs;
  std::vector<std::string> warnings;
};

/// Matches regular files of the two directories by stem, ignoring
/// extensions. Hidden files are skipped. Throws IoError when either directory
/// cannot be listed.
CorpusPairing pair_corpus(const std::filesystem::path& detection_dir,
                          const std::filesystem::path& annotation_dir);

enum class ReportFormat { kJson, kCsv, kText };

/// Throws UnsupportedFormatError for anything but json, csv or text.
ReportFormat parse_report_format(std::string_view name);

struct PairReport {
  std::string id;
  VariationSummary summary;
};

struct ReportOptions {
  EvalConfig config;
  /// Append per-variation corpus means (mean ae and mean F).
  bool corpus_summary = true;
  /// Permit a report without pairs.
  bool allow_empty = false;
};

/// Renders reports in the given order. Numbers in JSON and CSV carry six
/// decimals and keys appear in a fixed order, so equal inputs give equal
/// bytes. Throws InvalidInputError for an empty report unless allowed.
std::string write_report(std::span<const PairReport> reports, ReportFormat format,
                         const ReportOptions& options);

}  // namespace shiftbeat
