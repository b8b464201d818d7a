#include <a2lab/cli.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

using namespace a2lab;
using json = nlohmann::ordered_json;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("a2lab_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, CensusCsv) {
  auto r = run({"census", "--N", "10"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out,
            "x,y,z\n1,1,3\n1,2,5\n2,1,5\n2,3,6\n2,9,41\n3,2,6\n5,9,19\n9,2,41\n9,5,19\n");
}

TEST(Cli, CensusJson) {
  auto r = run({"census", "--N", "10", "--format", "json", "--workers", "2"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["count"], 9);
  EXPECT_EQ(run({"census", "--N", "10", "--format", "xml"}).status, 2);
}

TEST(Cli, Reduce) {
  auto r = run({"reduce", "--point", "2,9,41"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["point"], json({"1", "1", "3"}));
  EXPECT_EQ(j["word"], "sx,t,sx");
  EXPECT_EQ(run({"reduce", "--point", "2,9,40"}).status, 2);
  EXPECT_EQ(run({"reduce", "--surface", "T2,3", "--point", "1,1,8"}).status, 2);
  EXPECT_EQ(run({"reduce", "--invariants", "2,5"}).status, 0);
}

TEST(Cli, Verify) {
  auto r = run({"verify"});
  EXPECT_EQ(r.status, 0) << r.out << r.err;
  auto j = json::parse(r.out);
  EXPECT_FALSE(j.dump().empty());
}

TEST(Cli, OrbitAndClassify) {
  auto o = run({"orbit", "--surface", "T2,3", "--point", "1,1,8", "--iterate", "3"});
  EXPECT_EQ(o.status, 0) << o.err;
  auto c = run({"classify", "--surface", "T2,3", "--to", "S0"});
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_NE(c.out.find("ℤ"), std::string::npos);
}

TEST(Cli, ConicLinesCompose) {
  EXPECT_EQ(run({"conic", "--point", "2,9", "--lift", "--count", "4"}).status, 0);
  EXPECT_EQ(run({"lines", "--curve", "l3", "--word", "sy"}).status, 0);
  auto c = run({"compose", "--word", "sx,sy", "--no-polys"});
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_NE(c.out.find("degrees"), std::string::npos);
}

TEST(Cli, ErrorsExitTwo) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"census", "--surface", "a=1,x;b=1,0,0,1"}).status, 2);
  EXPECT_EQ(run({"census", "--N", "0"}).status, 2);
  EXPECT_EQ(run({"compose"}).status, 2);
  EXPECT_EQ(run({"lines", "--curve", "nope"}).status, 2);
  EXPECT_EQ(run({"--help"}).status, 0);
}

TEST(Cli, AtomicOut) {
  auto path = temp_path("census.csv");
  std::filesystem::remove(path);
  auto r = run({"census", "--N", "2", "--out", path.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(path), "x,y,z\n1,1,3\n1,2,5\n2,1,5\n");
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);

  auto bad = temp_path("bad.csv");
  std::filesystem::remove(bad);
  EXPECT_EQ(run({"census", "--surface", "garbage", "--out", bad.string()}).status, 2);
  EXPECT_FALSE(std::filesystem::exists(bad));
}

TEST(Cli, Binary) {
  const std::string cmd = std::string(A2LAB_CLI_PATH) + " census --N 10 > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  const std::string bad = std::string(A2LAB_CLI_PATH) + " census --surface nonsense 2> /dev/null";
  int st = std::system(bad.c_str());
  ASSERT_TRUE(WIFEXITED(st));
  EXPECT_EQ(WEXITSTATUS(st), 2);
}
