#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kacss/cli.hpp"
#include "kacss/dot.hpp"
#include "kacss/json.hpp"

namespace kacss {
namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "kacss");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(KACSS_DATA_DIR) + "/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("kacss_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

TEST(Cli, DerandomizedCycleHasRatioOne) {
  RunResult r = run_cli({"solve", data("cycle5.kacss"), "--derandomize", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["mode"], "derandomized");
  EXPECT_EQ(j["ratio"], "1/1");
  EXPECT_EQ(j["size"], "5/1");
  EXPECT_EQ(j["lp_value"], "5/1");
  EXPECT_TRUE(j["within_bound"].get<bool>());
  EXPECT_FALSE(j.contains("seed"));
  EXPECT_EQ(j["arcs"], Json::parse("[0,1,2,3,4]"));
}

TEST(Cli, SolveOutputIsByteIdenticalAcrossRuns) {
  Instance inst = random_k_connected(12, 2, 10, 99);
  TempDir dir;
  std::string path = dir.file("inst.kacss");
  {
    std::ofstream f(path);
    write_instance(f, inst);
  }
  for (const char* seed : {"0", "5", "18446744073709551615"}) {
    RunResult a = run_cli({"solve", path, "--seed", seed, "--json"});
    RunResult b = run_cli({"solve", path, "--seed", seed, "--json"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(Json::parse(a.out)["seed"].dump(), seed);
  }
  RunResult d1 = run_cli({"solve", path, "--derandomize"});
  RunResult d2 = run_cli({"solve", path, "--derandomize"});
  EXPECT_EQ(d1.out, d2.out);
}

TEST(Cli, SolveWritesArcsDotAndTranscript) {
  TempDir dir;
  RunResult r = run_cli({"solve", data("cycle5.kacss"), "--arcs", dir.file("out.arcs"), "--dot", dir.file("out.dot"),
                         "--transcript", dir.file("lp.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  Instance inst = parse_instance(slurp(data("cycle5.kacss")));
  std::ifstream arcs_in(dir.file("out.arcs"));
  ArcSet arcs = parse_arc_set(arcs_in, inst.arcs.size());
  EXPECT_TRUE(is_k_arc_connected(inst, arcs, 1));
  EXPECT_EQ(slurp(dir.file("out.dot")), export_dot(inst, arcs));
  Json t = Json::parse(slurp(dir.file("lp.json")));
  EXPECT_EQ(t["value"], "5/1");
  EXPECT_EQ(t["x"].size(), inst.arcs.size());

  RunResult check = run_cli({"verify", data("cycle5.kacss"), "--subgraph", dir.file("out.arcs")});
  EXPECT_EQ(check.code, 0);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run_cli({"verify", data("cycle5.kacss"), "--subgraph", data("cycle5_cycle.arcs")}).code, 0);
  RunResult bad = run_cli({"verify", data("cycle5.kacss"), "--subgraph", data("cycle5_path.arcs")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("witness"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", data("cycle5.kacss"), "--k", "2"}).code, 1);
  EXPECT_EQ(run_cli({"verify", data("bidirected_triangle.kacss"), "--k", "2"}).code, 0);
}

TEST(Cli, InfeasibleInstanceExitsWithOne) {
  TempDir dir;
  std::string path = dir.file("path.kacss");
  {
    std::ofstream f(path);
    f << "p kacss 3 2 1\na 0 1 1/1\na 1 2 1/1\n";
  }
  RunResult r = run_cli({"solve", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"solve"}).code, 2);
  EXPECT_EQ(run_cli({"solve", "/definitely/not/here.kacss"}).code, 2);
  EXPECT_EQ(run_cli({"solve", data("cycle5.kacss"), "--root", "9"}).code, 2);
  EXPECT_EQ(run_cli({"decompose", data("cycle5.kacss"), "--direction", "sideways"}).code, 2);
  EXPECT_EQ(run_cli({"gap", "--depth", "0"}).code, 2);
  EXPECT_EQ(run_cli({"random", "--n", "4", "--k", "3"}).code, 2);
  EXPECT_EQ(run_cli({"verify", data("cycle5.kacss"), "--subgraph", data("cycle5.kacss")}).code, 2);

  TempDir dir;
  std::string path = dir.file("broken.kacss");
  {
    std::ofstream f(path);
    f << "p kacss 2 1 1\na 0 0 1/1\n";
  }
  RunResult r = run_cli({"solve", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("self-loop"), std::string::npos);
}

TEST(Cli, HelpExitsWithZero) {
  RunResult r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("solve"), std::string::npos);
}

TEST(Cli, DecomposeReproducesTheLpPoint) {
  for (const char* dir : {"in", "out"}) {
    RunResult r = run_cli({"decompose", data("bidirected_triangle.kacss"), "--direction", dir, "--root", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["direction"], dir);
    EXPECT_EQ(j["root"], 1);
    Rational total = 0;
    for (const Json& t : j["terms"]) total += parse_rational(t["lambda"].get<std::string>());
    EXPECT_EQ(total, 1);
  }
}

TEST(Cli, GapEmitsInstanceAndLevels) {
  TempDir dir;
  std::string prefix = dir.file("g");
  RunResult r = run_cli({"gap", "--depth", "2", "--columns", "3", "--exact", "--json", "--emit", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["lp_value"], "1/1");
  EXPECT_EQ(j["exact_opt"], "5/4");
  EXPECT_TRUE(j["exact_proven"].get<bool>());

  Instance inst = parse_instance(slurp(prefix + ".kacss"));
  GapInstance expected = build_gap_instance(GapParams{2, 3});
  EXPECT_EQ(write_instance(inst), write_instance(expected.instance));
  Json levels = Json::parse(slurp(prefix + ".levels.json"));
  EXPECT_EQ(levels["levels"].size(), inst.arcs.size());
}

TEST(Cli, RandomIsDeterministicAndFeasible) {
  RunResult a = run_cli({"random", "--n", "9", "--k", "2", "--extra", "4", "--seed", "3"});
  RunResult b = run_cli({"random", "--n", "9", "--k", "2", "--extra", "4", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  Instance inst = parse_instance(a.out);
  EXPECT_EQ(inst.n, 9u);
  EXPECT_EQ(inst.k, 2);
  EXPECT_TRUE(is_k_arc_connected(inst, 2));
}

TEST(Dot, HighlightMarksChosenArcs) {
  Instance inst = parse_instance("p kacss 2 2 1\na 0 1 1/1\na 1 0 3/2\n");
  std::string plain = export_dot(inst);
  EXPECT_EQ(plain, "digraph kacss {\n  node [shape=circle];\n  0;\n  1;\n  0 -> 1 [label=\"0: 1/1\"];\n"
                   "  1 -> 0 [label=\"1: 3/2\"];\n}\n");
  std::string marked = export_dot(inst, ArcSet(std::vector<ArcId>{1}));
  EXPECT_NE(marked.find("0 -> 1 [label=\"0: 1/1\", color=grey]"), std::string::npos);
  EXPECT_NE(marked.find("1 -> 0 [label=\"1: 3/2\", style=bold, color=black]"), std::string::npos);
}

TEST(Dot, GapInstanceWithSolutionHighlight) {
  GapInstance g = build_gap_instance(GapParams{2, 3});
  ExactOptResult opt = exact_opt(g.instance);
  ASSERT_TRUE(opt.proven);
  std::string text = export_dot(g.instance, opt.best);
  auto count = [&](const std::string& needle) {
    std::size_t c = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++c;
    return c;
  };
  EXPECT_EQ(count(" -> "), 32u);
  EXPECT_EQ(count("style=bold"), opt.best.size());
  EXPECT_EQ(count("color=grey"), 32u - opt.best.size());
  std::size_t nodes = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);)
    if (line.find(" -> ") == std::string::npos && line.back() == ';' && line.find('[') == std::string::npos) ++nodes;
  EXPECT_EQ(nodes, 16u);
}

TEST(Dot, EmptyHighlightGreysEveryArc) {
  Instance inst = parse_instance("p kacss 2 2 1\na 0 1 1/1\na 1 0 1/1\n");
  std::string text = export_dot(inst, ArcSet{});
  EXPECT_EQ(text.find("bold"), std::string::npos);
  EXPECT_NE(text.find("0 -> 1 [label=\"0: 1/1\", color=grey]"), std::string::npos);
  EXPECT_NE(text.find("1 -> 0 [label=\"1: 1/1\", color=grey]"), std::string::npos);
}

TEST(Json, RationalsAreStrings) {
  EXPECT_EQ(to_json(Rational(3, 6)).dump(), "\"1/2\"");
  EXPECT_EQ(to_json(std::vector<Rational>{0, 2}).dump(), "[\"0/1\",\"2/1\"]");
}

}  // namespace
}  // namespace kacss
