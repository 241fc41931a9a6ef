#include "shiftbeat/cli.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace shiftbeat {
namespace {

using testing::TempDir;
using testing::write_file;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "shiftbeat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Exactly one line, tagged with an error kind.
void expect_error_line(const CliRun& r, const std::string& kind) {
  EXPECT_EQ(r.err.rfind("error[" + kind + "]: ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
}

TEST(CliEvalTest, IdenticalFiles) {
  TempDir dir;
  write_file(dir / "d.txt", "1\n2\n3\n");
  write_file(dir / "a.txt", "1\n2\n3\n");
  const CliRun r = run({"eval", "--det", (dir / "d.txt").string(), "--ann", (dir / "a.txt").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("d original t+=3 s=0 f+=0 f-=0 ae=1.000 F=1.000 *"), std::string::npos)
      << r.out;
  EXPECT_NE(r.out.find("best=original ae=1.000"), std::string::npos);
}

TEST(CliEvalTest, JsonOnHandTrace) {
  TempDir dir;
  write_file(dir / "d.txt", "1.0\n2.5\n4.5\n");
  write_file(dir / "a.txt", "1.0\n2.0\n3.0\n");
  const CliRun r = run({"eval", "--det", (dir / "d.txt").string(), "--ann",
                     (dir / "a.txt").string(), "--format", "json", "--variations", "original",
                     "--svg", (dir / "fig.svg").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"ae\": 0.250000"), std::string::npos) << r.out;
  const std::string svg = testing::read_file(dir / "fig.svg");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
}

TEST(CliEvalTest, Errors) {
  TempDir dir;
  write_file(dir / "d.txt", "1\n");
  write_file(dir / "bad.txt", "1\nzz\n");
  const std::string d = (dir / "d.txt").string();

  CliRun r = run({"eval", "--det", d, "--ann", d, "--inner-window", "2.0", "--outer-window", "1.0"});
  EXPECT_EQ(r.code, kExitInvalidWindow);
  expect_error_line(r, "invalid-window");

  r = run({"eval", "--det", d, "--ann", (dir / "none.txt").string()});
  EXPECT_EQ(r.code, kExitMissingFile);
  expect_error_line(r, "missing-file");

  r = run({"eval", "--det", d, "--ann", (dir / "bad.txt").string()});
  EXPECT_EQ(r.code, kExitParse);
  expect_error_line(r, "parse");

  r = run({"eval", "--det", d, "--ann", d, "--format", "xml"});
  EXPECT_EQ(r.code, kExitUsage);
  expect_error_line(r, "unsupported-format");

  r = run({"eval", "--det", d});
  EXPECT_EQ(r.code, kExitUsage);
  expect_error_line(r, "usage");

  r = run({"eval", "--det", d, "--ann", d, "--variations", "triple"});
  EXPECT_EQ(r.code, kExitUsage);
}

TEST(CliHelpTest, DocumentsFlagsAndDefaults) {
  const CliRun r = run({"eval", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  for (const char* flag : {"--det", "--ann", "--inner-window", "--outer-window", "--variations",
                           "--matching", "--format", "--svg", "70 ms", "1 s"}) {
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  }
  const CliRun c = run({"corpus", "--help"});
  for (const char* flag : {"--det-dir", "--ann-dir", "--parallel", "--strict"}) {
    EXPECT_NE(c.out.find(flag), std::string::npos) << flag;
  }
}

class CliCorpusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const char* id : {"p1", "p2", "p3"}) {
      write_file(dir_ / (std::string("det/") + id + ".txt"), "0.5\n1.0\n1.5\n");
      write_file(dir_ / (std::string("ann/") + id + ".txt"), "0.5\n1.0\n1.5\n");
    }
  }
  std::vector<std::string> base(const std::string& format) {
    return {"corpus", "--det-dir", (dir_ / "det").string(), "--ann-dir",
            (dir_ / "ann").string(), "--format", format};
  }
  TempDir dir_;
};

TEST_F(CliCorpusTest, AlignedCorpus) {
  const CliRun r = run(base("text"));
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mean original ae=1.000 F=1.000 pairs=3"), std::string::npos) << r.out;
}

TEST_F(CliCorpusTest, MalformedFileSkipped) {
  write_file(dir_ / "det/p4.txt", "nonsense\n");
  write_file(dir_ / "ann/p4.txt", "1\n");
  CliRun r = run(base("csv"));
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.find("p4,"), std::string::npos);
  EXPECT_NE(r.out.find("p3,original"), std::string::npos);
  EXPECT_NE(r.err.find("warning: p4: skipped"), std::string::npos) << r.err;

  auto strict = base("csv");
  strict.push_back("--strict");
  r = run(strict);
  EXPECT_EQ(r.code, kExitParse);
  expect_error_line(r, "parse");
}

TEST_F(CliCorpusTest, ParallelismDoesNotChangeBytes) {
  auto one = base("json");
  one.insert(one.end(), {"--parallel", "1"});
  auto four = base("json");
  four.insert(four.end(), {"--parallel", "4"});
  const CliRun a = run(one);
  const CliRun b = run(four);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliCorpusTest, MissingDirectory) {
  const CliRun r = run({"corpus", "--det-dir", (dir_ / "zzz").string(), "--ann-dir",
                     (dir_ / "ann").string()});
  EXPECT_EQ(r.code, kExitIo);
  expect_error_line(r, "io");
}

}  // namespace
}  // namespace shiftbeat
