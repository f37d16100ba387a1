#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "test_support.hpp"

namespace zerodist {
namespace {

using testing::dist;
using testing::reals;
namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
  io::json json() const { return io::json::parse(out); }
  io::json error() const { return io::json::parse(err); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "zerodist");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("zerodist_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const PointDistribution& d) {
    const auto p = (dir_ / name).string();
    std::ofstream f(p);
    io::write_json(f, d);
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, CheckWithIdenticalInputsGivesZero) {
  const auto z = write("z.json", dist({{2, 0, 1}, {-3, 1, 2}, {0, 5, 1}}));
  const auto o = run({"check", z, z, "--theorem", "c"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.json()["satisfied_constant"], 0.0);
  EXPECT_EQ(o.json()["theorem"], "C");
}

TEST_F(CliTest, BalanceWritesCompensator) {
  const auto z = write("z.json", reals({2.0}));
  const auto comp = path("comp.json");
  const auto o = run({"balance", z, "--compensator", comp});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = o.json();
  EXPECT_EQ(j["certificates"][0]["N"], 1);
  EXPECT_EQ(j["certificates"][0]["k"], 0);
  EXPECT_EQ(io::read_points_file(comp), reals({-2.0}));
}

TEST_F(CliTest, BadIntervalIsADomainError) {
  const auto z = write("z.json", reals({2.0}));
  const auto o = run({"measures", z, "--r", "4", "--R", "2"});
  EXPECT_EQ(o.code, 1);
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(o.error()["error"], "domain.bad-interval");
  EXPECT_EQ(std::count(o.err.begin(), o.err.end(), '\n'), 1);
}

TEST_F(CliTest, MeasuresReportsBothSides) {
  const auto z = write("z.json", dist({{1, 0, 1}, {-2, 0, 1}, {4, 0, 2}}));
  const auto o = run({"measures", z, "--r", "0.5", "--R", "5"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.json()["l_rh"], 1.5);
  EXPECT_EQ(o.json()["l_lh"], 0.5);
  EXPECT_EQ(o.json()["l"], 1.5);
}

TEST_F(CliTest, IoAndUsageErrorsExitTwo) {
  EXPECT_EQ(run({"measures", path("missing.json"), "--r", "1", "--R", "2"}).code, 2);
  {
    std::ofstream f(path("bad.json"));
    f << "{not json";
  }
  const auto bad = run({"lindelof", path("bad.json")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.error()["error"], "io.parse");

  const auto z = write("z.json", reals({2.0}));
  const auto unknown = run({"lindelof", z, "--bogus", "1"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_EQ(unknown.error()["error"], "cli.usage");
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"gen"}).code, 2);  // --count is required
  EXPECT_EQ(run({"type", z, "--grid", "x"}).code, 2);
}

TEST_F(CliTest, ContainmentAndRangeErrorsExitOne) {
  EXPECT_EQ(run({"gen", "--count", "10", "--r-min", "5", "--r-max", "2"}).code, 1);
  EXPECT_EQ(run({"gen", "--count", "3", "--family", "symmetric"}).code, 1);
  const auto z = write("z.json", reals({2.0}));
  EXPECT_EQ(run({"lemma31", z, "--grid", "4:2"}).code, 1);
}

TEST_F(CliTest, GenIsDeterministicAndRoundTrips) {
  const std::vector<std::string> args{"gen", "--family", "perturbed", "--count", "50", "--seed", "42"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  const auto d = io::read_json(in);
  EXPECT_EQ(d, generate({Family::perturbed, 50, 1.0, 1024.0, std::numbers::pi / 4, 42}));

  const auto file = path("g.csv");
  ASSERT_EQ(run({"gen", "--family", "real", "--count", "10", "--format", "csv", "-o", file}).code, 0);
  const auto real = io::read_points_file(file);
  for (const auto& e : real.entries()) EXPECT_EQ(e.point.im, 0.0);
}

TEST_F(CliTest, BalanceThenLindelofStaysWithinPrefixBound) {
  const auto z = write("z.json", generate({Family::sector, 300, 1.0, 5000.0, 0.9, 7}));
  const auto balanced = path("bal.json");
  ASSERT_EQ(run({"complete", z, "-o", balanced}).code, 0);
  const auto o = run({"lindelof", balanced, "--kind", "real"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto d = io::read_points_file(balanced);
  // sup |sum Re(1/z)| <= 1 + 2 n(r)/r over the blocks; at most 1 + 2 * upper density
  EXPECT_LE(o.json()["sup_abs"].get<double>(), 1.0 + 2.0 * upper_density(d).value + 1e-9);
}

TEST_F(CliTest, ProductTraceCsvAndJson) {
  const auto z = write("z.json", reals({1.0}));
  const auto csv = run({"product-trace", z, "--ys", "1,2"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out.substr(0, 14), "y,log_modulus\n");
  EXPECT_NE(csv.out.find("1,0.34657359027997"), std::string::npos);

  const auto js = run({"product-trace", z, "--y-range", "0,2,3", "--format", "json"});
  ASSERT_EQ(js.code, 0) << js.err;
  EXPECT_EQ(js.json()["trace"].size(), 3u);
}

TEST_F(CliTest, JintTypeDiscrepancyDominance) {
  const auto none = write("none.json", PointDistribution{});
  const auto j = run({"jint", none, "--origin-mult", "1", "--r", "2", "--R", "8"});
  ASSERT_EQ(j.code, 0) << j.err;
  const double want = ((std::log(2.0) + 1.0) / 2.0 - (std::log(8.0) + 1.0) / 8.0) / std::numbers::pi;
  EXPECT_NEAR(j.json()["value"].get<double>(), want, 1e-6 * want);

  const auto t = run({"type", none, "--exp-re", "1"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NEAR(t.json()["value"].get<double>(), 1.0, 1e-15);

  const auto sym = write("sym.json", reals({2.0, -2.0}));
  const auto l = run({"lemma31", sym, "--grid", "0:4"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(l.json()["pairs"].size(), 10u);

  const auto d = run({"dominance", none, sym});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.json()["holds"], true);
  const auto d2 = run({"dominance", sym, none});
  EXPECT_EQ(d2.json()["holds"], false);
}

TEST(DominanceGrid, DefaultAvoidsDyadicOrdinates) {
  const auto ys = cli::default_dominance_grid();
  ASSERT_EQ(ys.size(), 2u * 12 * 64);
  for (double y : ys) {
    EXPECT_GT(std::abs(y), 1.0);
    EXPECT_LT(std::abs(y), 4096.0);
    int e = 0;
    EXPECT_NE(std::frexp(std::abs(y), &e), 0.5);
  }
}

}  // namespace
}  // namespace zerodist
