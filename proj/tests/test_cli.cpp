#include "qexlab/channel.hpp"
#include "qexlab/instance.hpp"
#include "qexlab/qszk.hpp"
#include "qexlab/report.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qexlab;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qexlab_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args, const std::string& env = "") const {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" + QEXLAB_CLI_PATH + "' " + args + " >'" +
                            path("stdout.txt") + "' 2>'" + path("stderr.txt") + "'";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string stdout_text() const { return read_file(path("stdout.txt")); }

  Json read_json(const std::string& name) const { return Json::parse(read_file(path(name))); }

  std::vector<std::vector<std::string>> read_csv(const std::string& name) const {
    std::istringstream in(read_file(path(name)));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      rows.push_back(cells);
    }
    return rows;
  }

  void write_instance(const std::string& name, const PromiseInstance& inst) const {
    write_file_atomic(path(name), instance_to_json(inst).dump(2));
  }

  fs::path dir_;
};

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  ADD_FAILURE() << "missing column " << name;
  return 0;
}

}  // namespace

TEST_F(Cli, VerifyAllExitCodes) {
  ASSERT_EQ(run("verify-all --out " + path("v.json")), 0);
  auto j = read_json("v.json");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["meta"]["tool"], "qexlab");
  EXPECT_EQ(j["meta"]["version"], kVersion);
  EXPECT_EQ(run("verify-all --tolerance 1e-15 --out " + path("tight.json")), 2);
  EXPECT_FALSE(read_json("tight.json")["pass"].get<bool>());
  EXPECT_EQ(run("verify-all --frobnicate"), 1);
  EXPECT_EQ(run("no-such-command"), 1);
}

TEST_F(Cli, VerifyAllDeterministic) {
  ASSERT_EQ(run("verify-all --seed 5 --out " + path("a.json")), 0);
  ASSERT_EQ(run("verify-all --seed 5 --out " + path("b.json")), 0);
  EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));
  ASSERT_EQ(run("verify-all --out " + path("env.json"), "QEXLAB_SEED=5"), 0);
  EXPECT_EQ(read_json("env.json")["meta"]["seed"], 5);
  EXPECT_EQ(read_json("env.json")["meta"]["config_hash"], read_json("a.json")["meta"]["config_hash"]);
}

TEST_F(Cli, GapReportCyclic) {
  ASSERT_EQ(run("gap-report --group cyclic:3 --generators random:2 --csv " + path("g.csv") + " --json " +
                path("g.json")),
            0);
  auto rows = read_csv("g.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][column(rows[0], "lambda_bar")]), 0.5, 1e-12);
  EXPECT_LE(std::stod(rows[1][column(rows[0], "sigma2")]), 0.5 + 1e-8);
  EXPECT_EQ(rows[1][column(rows[0], "gap_bound_pass")], "true");
  EXPECT_EQ(read_file(path("g.csv")).rfind("# config_hash=", 0), 0u);
  EXPECT_TRUE(read_json("g.json").contains("meta"));
}

TEST_F(Cli, GapReportPgl2) {
  ASSERT_EQ(run("gap-report --group pgl2:3 --generators random:4 --csv " + path("p.csv")), 0);
  auto rows = read_csv("p.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_LE(std::stod(rows[1][column(rows[0], "sigma2")]),
            std::stod(rows[1][column(rows[0], "lambda_bar")]) + 1e-7);
}

TEST_F(Cli, MalformedSpecLeavesNoFiles) {
  EXPECT_EQ(run("gap-report --group cyclic --csv " + path("bad.csv") + " --json " + path("bad.json")), 1);
  EXPECT_FALSE(fs::exists(path("bad.csv")));
  EXPECT_FALSE(fs::exists(path("bad.json")));
  EXPECT_EQ(run("gap-report --group pgl2:4 --csv " + path("bad.csv")), 1);
  EXPECT_EQ(run("gap-report --group cyclic:5 --generators 1,2 --csv " + path("bad.csv")), 1);
  EXPECT_FALSE(fs::exists(path("bad.csv")));
}

TEST_F(Cli, SweepMonotoneAndDeterministic) {
  ASSERT_EQ(run("sweep --group pgl2:3 --degrees 4,16,36 --out " + path("s.csv")), 0);
  auto rows = read_csv("s.csv");
  ASSERT_EQ(rows.size(), 4u);
  const auto c = column(rows[0], "sigma2_min");
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][c]), std::stod(rows[i - 1][c]));

  ASSERT_EQ(run("sweep --group dihedral:5 --degrees 4,16 --samples 2 --out " + path("a.csv")), 0);
  ASSERT_EQ(run("sweep --group dihedral:5 --degrees 4,16 --samples 2 --out " + path("b.csv")), 0);
  EXPECT_EQ(read_file(path("a.csv")), read_file(path("b.csv")));
  EXPECT_EQ(run("sweep --group pgl2:3 --degrees '' --out " + path("e.csv")), 1);
  EXPECT_EQ(run("sweep --group pgl2:3 --degrees 5 --out " + path("e.csv")), 1);
  EXPECT_FALSE(fs::exists(path("e.csv")));
}

TEST_F(Cli, BuildExpanderThenVerifyExtractor) {
  ASSERT_EQ(run("build-expander --group cyclic:8 --generators all --out " + path("e.json")), 0);
  auto e = read_json("e.json");
  EXPECT_EQ(e["N"], 8);
  EXPECT_LE(e["sigma2"].get<double>(), 1e-8);
  EXPECT_TRUE(e["pass"].get<bool>());
  ASSERT_EQ(run("verify-extractor --expander " + path("e.json") + " --t 2 --out " + path("x.json")), 0);
  auto x = read_json("x.json");
  EXPECT_TRUE(x["pass"].get<bool>());
  EXPECT_LE(x["worst_distance"].get<double>(), 1e-7);
  EXPECT_EQ(run("verify-extractor --expander " + path("missing.json")), 1);
}

TEST_F(Cli, DumpFourier) {
  ASSERT_EQ(run("dump-fourier --group cyclic:2 --out " + path("f.csv")), 0);
  auto rows = read_csv("f.csv");
  ASSERT_EQ(rows.size(), 5u);  // header + 2 x 2 entries
  const auto re = column(rows[0], "re");
  double sum_sq = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) sum_sq += std::pow(std::stod(rows[i][re]), 2);
  EXPECT_NEAR(sum_sq, 2.0, 1e-12);
}

TEST_F(Cli, RunReductionQsdQed) {
  auto [a0, a1] = qubit_pair_at_distance(1.0);
  PromiseInstance far;
  far.kind = ProblemKind::qsd;
  far.circuits = {a0, a1};
  far.alpha = 0.1;
  far.beta = 0.9;
  far.params = Json{{"m0", 8}};
  write_instance("far.json", far);
  ASSERT_EQ(run("run-reduction --kind qsd-qed --instance " + path("far.json") + " --out " + path("r.json")), 0);
  auto r = read_json("r.json");
  EXPECT_TRUE(r["pass"].get<bool>());
  EXPECT_LE(r["gap"].get<double>(), -0.8);

  auto [m0, m1] = qubit_pair_at_distance(0.5);
  far.circuits = {m0, m1};
  write_instance("mid.json", far);
  EXPECT_EQ(run("run-reduction --kind qsd-qed --instance " + path("mid.json") + " --out " + path("m.json")), 1);
  EXPECT_FALSE(fs::exists(path("m.json")));
  EXPECT_EQ(run("run-reduction --kind qea-qsd --instance " + path("far.json")), 1);  // wrong problem kind
}

TEST_F(Cli, RunReductionQedFormulaAndQea) {
  PromiseInstance qed;
  qed.kind = ProblemKind::qed;
  qed.circuits = {tensor({maximally_mixed_qubit(), prepare_zeros(1)}), prepare_zeros(2)};
  write_instance("qed.json", qed);
  ASSERT_EQ(run("run-reduction --kind qed-formula --instance " + path("qed.json") + " --out " + path("q.json")), 0);
  auto q = read_json("q.json");
  EXPECT_EQ(q["promise"], "yes");
  EXPECT_EQ(q["value"], "1");

  PromiseInstance qea;
  qea.kind = ProblemKind::qea;
  qea.circuits = {tensor({maximally_mixed_qubit(), prepare_zeros(1)})};
  qea.t = 2;
  qea.params = Json{{"seed_bits", 0}};
  write_instance("qea.json", qea);
  ASSERT_EQ(run("run-reduction --kind qea-qsd --instance " + path("qea.json") + " --out " + path("a.json")), 0);
  auto a = read_json("a.json");
  EXPECT_EQ(a["promise"], "no");
  EXPECT_EQ(a["outcome"], "far");

  qea.params = Json{{"strict", true}};
  write_instance("strict.json", qea);
  EXPECT_EQ(run("run-reduction --kind qea-qsd --instance " + path("strict.json")), 1);
}
