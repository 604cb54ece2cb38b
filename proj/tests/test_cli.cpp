#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("mb_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

// Runs the tool inside dir with the given arguments; returns the exit code.
int run(const fs::path& dir, const std::vector<std::string>& args) {
  std::string cmd = "cd " + quote(dir.string()) + " && " + quote(MB_CLI_PATH);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " >stdout.log 2>stderr.log";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<double> split(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stod(tok));
  return out;
}

json manifest_of(const std::vector<std::string>& ls) {
  const std::string prefix = "# manifest: ";
  REQUIRE(!ls.empty());
  REQUIRE(ls[0].rfind(prefix, 0) == 0);
  return json::parse(ls[0].substr(prefix.size()));
}

std::vector<std::string> files_in(const fs::path& dir) {
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (name != "stdout.log" && name != "stderr.log") out.push_back(name);
  }
  return out;
}

}  // namespace

TEST_CASE("sample writes replicas x N with a manifest, and the manifest replays the run") {
  TempDir t;
  REQUIRE(run(t.path, {"sample", "--family", "laguerre", "--theta", "2", "--c", "0", "--n", "50", "--replicas", "100",
                       "--seed", "7", "--out", "s.csv"}) == 0);
  CHECK(files_in(t.path) == std::vector<std::string>{"s.csv"});
  const auto ls = lines(t.path / "s.csv");
  REQUIRE(ls.size() == 101);
  for (size_t i = 1; i < ls.size(); ++i) REQUIRE(split(ls[i]).size() == 50);
  const json m = manifest_of(ls);
  CHECK(m["seed"] == 7);
  CHECK(m["params"]["theta"] == 2.0);
  CHECK(m["params"]["n"] == 50);
  CHECK(m.contains("git_describe"));
  CHECK(m.contains("timestamp"));
  CHECK(m.contains("version"));

  // replay argv from the manifest into a second file
  auto argv = m["argv"].get<std::vector<std::string>>();
  argv.erase(argv.begin());
  for (size_t i = 0; i + 1 < argv.size(); ++i)
    if (argv[i] == "--out") argv[i + 1] = "replay.csv";
  REQUIRE(run(t.path, argv) == 0);
  const auto again = lines(t.path / "replay.csv");
  REQUIRE(again.size() == ls.size());
  for (size_t i = 1; i < ls.size(); ++i) CHECK(again[i] == ls[i]);
}

TEST_CASE("density grid carries the arcsine value") {
  TempDir t;
  REQUIRE(run(t.path, {"density", "--family", "jacobi", "--theta", "1", "--grid", "200", "--out", "d.csv"}) == 0);
  const auto ls = lines(t.path / "d.csv");
  REQUIRE(ls.size() == 201);
  bool found = false;
  for (size_t i = 1; i < ls.size(); ++i) {
    const auto row = split(ls[i]);
    REQUIRE(row.size() == 2);
    if (row[0] == 0.5) {
      found = true;
      CHECK(std::abs(row[1] - 2 / std::numbers::pi) < 1e-10);
    }
  }
  CHECK(found);
}

TEST_CASE("density without --out goes to stdout") {
  TempDir t;
  REQUIRE(run(t.path, {"density", "--family", "laguerre", "--theta", "2", "--grid", "5"}) == 0);
  CHECK(files_in(t.path).empty());
  CHECK(lines(t.path / "stdout.log").size() == 6);
}

TEST_CASE("moments and kernel") {
  TempDir t;
  REQUIRE(run(t.path, {"moments", "--family", "laguerre", "--theta", "2", "--pmax", "4", "--out", "m.csv"}) == 0);
  const auto ms = lines(t.path / "m.csv");
  REQUIRE(ms.size() == 6);
  CHECK(split(ms[4])[1] == doctest::Approx(12));
  REQUIRE(run(t.path, {"kernel", "--family", "jacobi", "--theta", "2", "--c1", "0", "--c2", "1", "--n", "4", "--grid",
                       "3", "--out", "k.csv"}) == 0);
  const auto ks = lines(t.path / "k.csv");
  REQUIRE(ks.size() == 10);
  CHECK(split(ks[1]).size() == 3);
  CHECK(manifest_of(ks)["columns"] == json({"x", "y", "K"}));
}

TEST_CASE("hardedge grid and convergence report") {
  TempDir t;
  REQUIRE(run(t.path, {"hardedge", "--theta", "1", "--c", "0", "--grid", "3", "--out", "h.csv", "--report", "r.json",
                       "--n-list", "10,20,40"}) == 0);
  CHECK(lines(t.path / "h.csv").size() == 10);
  std::ifstream in(t.path / "r.json");
  const json r = json::parse(in);
  CHECK(r["pass"] == true);
  CHECK(r["detail"]["errors"].size() == 3);
  CHECK(r.contains("manifest"));
}

TEST_CASE("verify emits a JSON array and exit status") {
  TempDir t;
  REQUIRE(run(t.path, {"verify", "--suite", "kernel-oracle", "--seeds", "1,2,3", "--out", "v.json"}) == 0);
  std::ifstream in(t.path / "v.json");
  const json v = json::parse(in);
  REQUIRE(v.is_array());
  CHECK(v.size() == 8);
  for (const auto& r : v) {
    CHECK(r["pass"] == true);
    CHECK(r.contains("wall_time"));
  }
}

TEST_CASE("usage and validation errors exit 1") {
  TempDir t;
  CHECK(run(t.path, {"sample", "--bogus-flag", "1"}) == 1);
  CHECK(run(t.path, {"sample", "--family", "laguerre", "--c", "-2", "--out", "x.csv"}) == 1);
  CHECK(run(t.path, {"verify", "--suite", "nope"}) == 1);
  CHECK(run(t.path, {"verify", "--suite", "kernel-oracle", "--seeds", "a,b"}) == 1);
  CHECK(run(t.path, {}) == 1);
  CHECK(run(t.path, {"--help"}) == 0);
}
