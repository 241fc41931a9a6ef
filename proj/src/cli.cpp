#include "shiftbeat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "shiftbeat/batch.hpp"
#include "shiftbeat/errors.hpp"
#include "shiftbeat/io.hpp"
#include "shiftbeat/svg.hpp"
#include "shiftbeat/variations.hpp"

namespace shiftbeat {
namespace fs = std::filesystem;
namespace {

// Raised inside the tool to leave with a given status.
struct Failure {
  int code;
  std::string kind;
  std::string message;
};

struct CliConfig {
  std::string det;
  std::string ann;
  std::string det_dir;
  std::string ann_dir;
  double inner = 0.070;
  double outer = 1.000;
  std::vector<std::string> variations;
  std::string matching = "greedy";
  std::string format = "text";
  std::string svg;
  std::string output;
  std::size_t parallel = 1;
  bool strict = false;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  return s;
}

EvalConfig to_eval_config(const CliConfig& cli) {
  EvalConfig config;
  config.inner_half_width = cli.inner;
  config.outer_half_width = cli.outer;
  if (auto mode = parse_matching_mode(cli.matching)) {
    config.matching_mode = *mode;
  } else {
    throw Failure{kExitUsage, "usage", "unknown matching mode '" + cli.matching + "'"};
  }
  if (!cli.variations.empty()) {
    config.variation_kinds.clear();
    for (const std::string& name : cli.variations) {
      auto kind = parse_variation_kind(name);
      if (!kind) throw Failure{kExitUsage, "usage", "unknown variation '" + name + "'"};
      if (std::find(config.variation_kinds.begin(), config.variation_kinds.end(), *kind) ==
          config.variation_kinds.end()) {
        config.variation_kinds.push_back(*kind);
      }
    }
  }
  try {
    config.validate();
  } catch (const InvalidInputError& e) {
    throw Failure{kExitInvalidWindow, "invalid-window", e.what()};
  }
  return config;
}

ReportFormat to_format(const std::string& name) {
  try {
    return parse_report_format(name);
  } catch (const UnsupportedFormatError& e) {
    throw Failure{kExitUsage, "unsupported-format", e.what()};
  }
}

void require_file(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Failure{kExitMissingFile, "missing-file", std::string(what) + " file not found: " + path};
  }
}

void require_dir(const std::string& path, const char* what) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw Failure{kExitIo, "io", std::string(what) + " directory not readable: " + path};
  }
}

void emit(const std::string& document, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << document;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file << document;
  if (!file) throw Failure{kExitIo, "io", "cannot write " + path};
}

BeatFile load(const std::string& path) {
  try {
    return read_beat_file(path);
  } catch (const ParseError& e) {
    throw Failure{kExitParse, "parse", e.what()};
  } catch (const IoError& e) {
    throw Failure{kExitIo, "io", e.what()};
  }
}

int cmd_eval(const CliConfig& cli, std::ostream& out, std::ostream& err) {
  const EvalConfig config = to_eval_config(cli);
  const ReportFormat format = to_format(cli.format);
  require_file(cli.det, "detection");
  require_file(cli.ann, "annotation");
  const BeatFile dets = load(cli.det);
  const BeatFile anns = load(cli.ann);
  for (const auto& w : dets.warnings) err << "warning: " << w << '\n';
  for (const auto& w : anns.warnings) err << "warning: " << w << '\n';

  PairReport report{fs::path(cli.det).stem().string(),
                    evaluate_all_variations(dets.sequence, anns.sequence, config)};
  ReportOptions options;
  options.config = config;
  options.corpus_summary = false;
  emit(write_report({&report, 1}, format, options), cli.output, out);
  if (!cli.svg.empty()) {
    emit(render_comparison_svg(report.summary.results, anns.sequence, config), cli.svg, out);
  }
  return kExitOk;
}

int cmd_corpus(const CliConfig& cli, std::ostream& out, std::ostream& err) {
  const EvalConfig config = to_eval_config(cli);
  const ReportFormat format = to_format(cli.format);
  if (cli.parallel == 0) throw Failure{kExitUsage, "usage", "--parallel must be at least 1"};
  require_dir(cli.det_dir, "detection");
  require_dir(cli.ann_dir, "annotation");

  CorpusPairing pairing;
  try {
    pairing = pair_corpus(cli.det_dir, cli.ann_dir);
  } catch (const IoError& e) {
    throw Failure{kExitIo, "io", e.what()};
  }
  for (const auto& w : pairing.warnings) err << "warning: " << w << '\n';

  CorpusOutcome outcome;
  try {
    outcome = evaluate_corpus(pairing.pairs, config, cli.parallel, cli.strict);
  } catch (const ParseError& e) {
    throw Failure{kExitParse, "parse", e.what()};
  } catch (const IoError& e) {
    throw Failure{kExitIo, "io", e.what()};
  }
  for (const auto& w : outcome.warnings) err << "warning: " << w << '\n';

  ReportOptions options;
  options.config = config;
  options.allow_empty = true;
  emit(write_report(outcome.reports, format, options), cli.output, out);
  return kExitOk;
}

void add_shared_options(CLI::App& app, CliConfig& cli) {
  app.add_option("--inner-window", cli.inner,
                 "Inner tolerance half-width in seconds; a detection this close to an "
                 "annotation is a true positive (default 0.070 = +-70 ms)")
      ->capture_default_str();
  app.add_option("--outer-window", cli.outer,
                 "Outer tolerance half-width in seconds; a detection this close may be "
                 "shifted onto an annotation (default 1.0 = +-1 s)")
      ->capture_default_str();
  app.add_option("--variations", cli.variations,
                 "Comma-separated detection variations to evaluate: original, double, "
                 "offbeat, half_odd, half_even (default: all five)")
      ->delimiter(',');
  app.add_option("--matching", cli.matching,
                 "greedy (fast, default) or exhaustive (optimal search, small inputs)")
      ->capture_default_str();
  app.add_option("--format", cli.format, "Report format: json, csv or text")
      ->capture_default_str();
  app.add_option("-o,--output", cli.output, "Write the report to this file instead of stdout");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beat tracking evaluation by counting the shifts, insertions and deletions "
               "needed to correct a detection sequence.",
               "shiftbeat"};
  app.require_subcommand(1);
  CliConfig cli;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate one detection file against one annotation file");
  eval->add_option("--det", cli.det, "Detection file (one time in seconds per line)")->required();
  eval->add_option("--ann", cli.ann, "Annotation file (one time in seconds per line)")->required();
  eval->add_option("--svg", cli.svg, "Write a comparison figure of all variations to this path");
  add_shared_options(*eval, cli);

  CLI::App* corpus = app.add_subcommand("corpus", "Evaluate every file pair sharing a stem in two directories");
  corpus->add_option("--det-dir", cli.det_dir, "Directory of detection files")->required();
  corpus->add_option("--ann-dir", cli.ann_dir, "Directory of annotation files")->required();
  corpus->add_option("--parallel", cli.parallel, "Number of pairs evaluated concurrently")
      ->capture_default_str();
  corpus->add_flag("--strict", cli.strict, "Abort on the first unreadable or malformed pair");
  add_shared_options(*corpus, cli);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(cli, out, err);
    return cmd_corpus(cli, out, err);
  } catch (const Failure& f) {
    err << "error[" << f.kind << "]: " << one_line(f.message) << '\n';
    return f.code;
  } catch (const SizeLimitError& e) {
    err << "error[size-limit]: " << one_line(e.what()) << '\n';
    return kExitSizeLimit;
  } catch (const std::exception& e) {
    err << "error[internal]: " << one_line(e.what()) << '\n';
    return kExitInternal;
  }
}

}  // namespace shiftbeat
