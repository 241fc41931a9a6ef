#include "shiftbeat/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

#include "shiftbeat/errors.hpp"

namespace shiftbeat {
namespace fs = std::filesystem;
namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }
bool is_separator(char c) { return is_blank(c) || c == ','; }

std::string_view trim_left(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_blank(s[i])) ++i;
  return s.substr(i);
}

std::string fixed6(double v) { return fmt::format("{:.6f}", v); }
std::string fixed3(double v) { return fmt::format("{:.3f}", v); }

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<unsigned>(c));
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Kinds appearing in the reports, in listing order.
std::vector<VariationKind> report_kinds(std::span<const PairReport> reports,
                                        const EvalConfig& config) {
  std::vector<VariationKind> kinds;
  for (VariationKind kind : kAllVariations) {
    bool present = std::find(config.variation_kinds.begin(), config.variation_kinds.end(),
                             kind) != config.variation_kinds.end();
    for (const PairReport& r : reports) {
      for (const VariationResult& vr : r.summary.results) present |= vr.kind == kind;
    }
    if (present) kinds.push_back(kind);
  }
  return kinds;
}

struct Mean {
  double ae = 0.0;
  double f = 0.0;
  std::size_t n = 0;
};

std::map<VariationKind, Mean> corpus_means(std::span<const PairReport> reports) {
  std::map<VariationKind, Mean> sums;
  for (const PairReport& r : reports) {
    for (const VariationResult& vr : r.summary.results) {
      Mean& m = sums[vr.kind];
      m.ae += vr.result.annotation_efficiency;
      m.f += vr.result.f_measure;
      ++m.n;
    }
  }
  for (auto& [kind, m] : sums) {
    m.ae /= static_cast<double>(m.n);
    m.f /= static_cast<double>(m.n);
  }
  return sums;
}

void write_operation_json(std::string& out, const Operation& op) {
  out += fmt::format("{{\"kind\": \"{}\"", to_string(op.kind));
  if (op.detection_time) out += ", \"detection_time\": " + fixed6(*op.detection_time);
  if (op.annotation_time) out += ", \"annotation_time\": " + fixed6(*op.annotation_time);
  if (op.kind == OperationKind::kShift) out += ", \"offset\": " + fixed6(op.offset());
  out += "}";
}

std::string write_json(std::span<const PairReport> reports, const ReportOptions& options) {
  std::string out = "{\n";
  out += "  \"inner_half_width\": " + fixed6(options.config.inner_half_width) + ",\n";
  out += "  \"outer_half_width\": " + fixed6(options.config.outer_half_width) + ",\n";
  out += fmt::format("  \"matching\": \"{}\",\n", to_string(options.config.matching_mode));
  out += "  \"pairs\": [";
  for (std::size_t p = 0; p < reports.size(); ++p) {
    const PairReport& r = reports[p];
    out += p == 0 ? "\n" : ",\n";
    out += "    {\n";
    out += "      \"id\": " + json_escape(r.id) + ",\n";
    out += fmt::format("      \"best_variation\": \"{}\",\n", to_string(r.summary.best));
    out += "      \"variations\": {";
    for (std::size_t v = 0; v < r.summary.results.size(); ++v) {
      const VariationResult& vr = r.summary.results[v];
      const Counts& c = vr.result.counts;
      out += v == 0 ? "\n" : ",\n";
      out += fmt::format("        \"{}\": {{\n", to_string(vr.kind));
      out += fmt::format("          \"t_plus\": {},\n", c.true_positives);
      out += fmt::format("          \"shifts\": {},\n", c.shifts);
      out += fmt::format("          \"false_positives\": {},\n", c.false_positives);
      out += fmt::format("          \"false_negatives\": {},\n", c.false_negatives);
      out += "          \"ae\": " + fixed6(vr.result.annotation_efficiency) + ",\n";
      out += "          \"f_measure\": " + fixed6(vr.result.f_measure) + ",\n";
      out += "          \"operations\": [";
      const auto& ops = vr.result.ledger.operations;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        out += i == 0 ? "\n            " : ",\n            ";
        write_operation_json(out, ops[i]);
      }
      out += ops.empty() ? "]\n" : "\n          ]\n";
      out += "        }";
    }
    out += r.summary.results.empty() ? "}\n" : "\n      }\n";
    out += "    }";
  }
  out += reports.empty() ? "]" : "\n  ]";
  if (options.corpus_summary) {
    const auto means = corpus_means(reports);
    const auto kinds = report_kinds(reports, options.config);
    out += ",\n  \"summary\": {\n";
    out += fmt::format("    \"pair_count\": {},\n", reports.size());
    for (int pass = 0; pass < 2; ++pass) {
      out += pass == 0 ? "    \"mean_ae\": {" : "    \"mean_f_measure\": {";
      bool first = true;
      for (VariationKind kind : kinds) {
        auto it = means.find(kind);
        if (it == means.end()) continue;
        out += first ? "\n" : ",\n";
        first = false;
        out += fmt::format("      \"{}\": {}", to_string(kind),
                           fixed6(pass == 0 ? it->second.ae : it->second.f));
      }
      out += first ? "}" : "\n    }";
      out += pass == 0 ? ",\n" : "\n";
    }
    out += "  }";
  }
  out += "\n}\n";
  return out;
}

std::string write_csv(std::span<const PairReport> reports, const ReportOptions& options) {
  std::string out =
      "id,variation,t_plus,shifts,false_positives,false_negatives,ae,f_measure,best\n";
  for (const PairReport& r : reports) {
    for (const VariationResult& vr : r.summary.results) {
      const Counts& c = vr.result.counts;
      out += fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_field(r.id), to_string(vr.kind),
                         c.true_positives, c.shifts, c.false_positives, c.false_negatives,
                         fixed6(vr.result.annotation_efficiency),
                         fixed6(vr.result.f_measure), vr.kind == r.summary.best ? 1 : 0);
    }
  }
  if (options.corpus_summary && !reports.empty()) {
    // Aggregate rows use id "*" and leave the count and best columns empty.
    const auto means = corpus_means(reports);
    for (VariationKind kind : report_kinds(reports, options.config)) {
      auto it = means.find(kind);
      if (it == means.end()) continue;
      out += fmt::format("*,{},,,,,{},{},\n", to_string(kind), fixed6(it->second.ae),
                         fixed6(it->second.f));
    }
  }
  return out;
}

std::string write_text(std::span<const PairReport> reports, const ReportOptions& options) {
  std::string out;
  for (const PairReport& r : reports) {
    for (const VariationResult& vr : r.summary.results) {
      const Counts& c = vr.result.counts;
      out += fmt::format("{} {} t+={} s={} f+={} f-={} ae={} F={}{}\n", r.id,
                         to_string(vr.kind), c.true_positives, c.shifts, c.false_positives,
                         c.false_negatives, fixed3(vr.result.annotation_efficiency),
                         fixed3(vr.result.f_measure),
                         vr.kind == r.summary.best ? " *" : "");
    }
    double best_ae = 0.0;
    for (const VariationResult& vr : r.summary.results) {
      if (vr.kind == r.summary.best) best_ae = vr.result.annotation_efficiency;
    }
    out += fmt::format("{} best={} ae={}\n", r.id, to_string(r.summary.best), fixed3(best_ae));
  }
  if (options.corpus_summary && !reports.empty()) {
    const auto means = corpus_means(reports);
    for (VariationKind kind : report_kinds(reports, options.config)) {
      auto it = means.find(kind);
      if (it == means.end()) continue;
      out += fmt::format("mean {} ae={} F={} pairs={}\n", to_string(kind),
                         fixed3(it->second.ae), fixed3(it->second.f), it->second.n);
    }
  }
  return out;
}

}  // namespace

BeatFile parse_beats(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  BeatFile file;
  std::vector<double> times;
  std::set<double> seen;
  std::size_t line_no = 0;
  std::size_t first_out_of_order = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim_left(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::size_t end = 0;
    while (end < line.size() && !is_separator(line[end])) ++end;
    const std::string_view token = line.substr(0, end);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw ParseError(line_no, "'" + std::string(token) + "' is not a number");
    }
    if (!std::isfinite(value)) throw ParseError(line_no, "time is not finite");
    if (value < 0.0) throw ParseError(line_no, "time is negative");

    if (!times.empty() && value < times.back() && first_out_of_order == 0) {
      first_out_of_order = line_no;
    }
    if (!seen.insert(value).second) {
      file.warnings.push_back(
          fmt::format("line {}: duplicate time {} kept", line_no, value));
    }
    times.push_back(value);
  }
  if (first_out_of_order != 0) {
    file.warnings.insert(
        file.warnings.begin(),
        fmt::format("line {}: times out of order; sequence sorted", first_out_of_order));
  }
  file.sequence = BeatSequence::from_unsorted(std::move(times));
  return file;
}

BeatFile read_beat_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  BeatFile file;
  try {
    file = parse_beats(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.detail(), path.string());
  }
  file.path = path;
  for (std::string& w : file.warnings) w = path.string() + ": " + w;
  return file;
}

std::string format_beats(const BeatSequence& sequence) {
  std::string out;
  for (double t : sequence) out += fmt::format("{}\n", t);
  return out;
}

CorpusPairing pair_corpus(const fs::path& detection_dir, const fs::path& annotation_dir) {
  CorpusPairing pairing;
  auto list = [&pairing](const fs::path& dir) {
    std::map<std::string, fs::path> by_stem;
    std::error_code ec;
    fs::directory_iterator it(dir, ec);
    if (ec) throw IoError("cannot read directory " + dir.string() + ": " + ec.message());
    std::vector<fs::path> files;
    for (; it != fs::directory_iterator(); it.increment(ec)) {
      if (ec) throw IoError("cannot read directory " + dir.string() + ": " + ec.message());
      const fs::path& p = it->path();
      if (p.filename().string().starts_with('.')) continue;
      if (!it->is_regular_file(ec)) continue;
      files.push_back(p);
    }
    std::sort(files.begin(), files.end());
    for (const fs::path& p : files) {
      const std::string stem = p.stem().string();
      auto [pos, inserted] = by_stem.emplace(stem, p);
      if (!inserted) {
        pairing.warnings.push_back(p.string() + ": stem '" + stem + "' already provided by " +
                                   pos->second.string() + "; ignored");
      }
    }
    return by_stem;
  };
  const auto dets = list(detection_dir);
  const auto anns = list(annotation_dir);
  for (const auto& [stem, path] : dets) {
    auto it = anns.find(stem);
    if (it == anns.end()) {
      pairing.warnings.push_back(path.string() + ": no matching annotation file");
    } else {
      pairing.pairs.push_back({stem, path, it->second});
    }
  }
  for (const auto& [stem, path] : anns) {
    if (!dets.contains(stem)) {
      pairing.warnings.push_back(path.string() + ": no matching detection file");
    }
  }
  return pairing;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "text") return ReportFormat::kText;
  throw UnsupportedFormatError("unsupported report format '" + std::string(name) + "'");
}

std::string write_report(std::span<const PairReport> reports, ReportFormat format,
                         const ReportOptions& options) {
  if (reports.empty() && !options.allow_empty) {
    throw InvalidInputError("no results to report");
  }
  switch (format) {
    case ReportFormat::kJson: return write_json(reports, options);
    case ReportFormat::kCsv: return write_csv(reports, options);
    case ReportFormat::kText: return write_text(reports, options);
  }
  throw UnsupportedFormatError("unsupported report format");
}

}  // namespace shiftbeat
