#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(LK_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir = fs::temp_directory_path() / ("lk_cli_" + std::to_string(::getpid()));

  void SetUp() override { fs::create_directories(dir); }
  void TearDown() override { fs::remove_all(dir); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

TEST_F(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check " + write("a", "vertex v0 unframed\nvertex v -2\nedge v0 v\n")).status, 0);
  EXPECT_EQ(run("check " + write("b", "vertex v0 unframed\nvertex a -1\nvertex b -1\nedge a b\n")).status, 1);
  EXPECT_EQ(run("check " + write("c", "vertex v0 unframed\nvertex a oops\n")).status, 2);
  EXPECT_EQ(run("check " + write("d", "vertex a unframed\nvertex b unframed\n")).status, 2);
}

TEST_F(Cli, MoveThenEquiv) {
  const auto base = write("base", "vertex v0 unframed\nvertex v -2\nedge v0 v\n");
  const auto moved = run("move " + base + " --kind vertex --site v");
  ASSERT_EQ(moved.status, 0);
  EXPECT_NE(moved.out.find("vertex v -3"), std::string::npos);
  const auto blown = write("blown", moved.out);
  EXPECT_EQ(run("equiv " + base + " " + blown).status, 0);
  EXPECT_EQ(run("equiv " + base + " " + write("other", "vertex v0 unframed\nvertex v -3\nedge v0 v\n")).status, 1);
}

TEST_F(Cli, Reduce) {
  const auto r = run("reduce " + write("r", "vertex v0 unframed\nvertex v -3\nvertex w -1\nedge v0 v\nedge v w\n"));
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "vertex v -2\nvertex v0 unframed\nedge v v0\n");
}

TEST_F(Cli, FiltrationOnS3) {
  const auto s3 = write("s3", "vertex v0 unframed\nvertex v -1\nedge v0 v\n");
  const auto r = run("filtration " + s3 + " --margin 1 --ucap 2 --json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& e : j["entries"])
    if (e["grading"] == "0") {
      ASSERT_FALSE(e["steps"].empty());
      EXPECT_EQ(e["steps"][0]["level"], "0");
      EXPECT_EQ(e["steps"][0]["dim"], 1);
      found = true;
    }
  EXPECT_TRUE(found);
}

TEST_F(Cli, VerifyEchoesSeedAndExitCodes) {
  const auto ok = run("verify --suite vertex_family --instances 4 --seed 7 --margin 0 --json");
  EXPECT_EQ(ok.status, 0);
  const auto j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(run("verify --suite edge_family --instances 4 --seed 3 --margin 1").status, 3);
  EXPECT_EQ(run("verify --suite bogus").status, 2);
}

}  // namespace
