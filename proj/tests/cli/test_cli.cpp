// Runs the wliso executable and checks exit codes and output.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(WLISO_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("wliso_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

const std::string kC6 = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
const std::string kC6Permuted = "6 6\n3 0\n0 5\n5 1\n1 4\n4 2\n2 3\n";
const std::string kTwoTriangles = "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n";

}  // namespace

TEST_CASE("iso exit codes") {
  const auto c6 = write("c6.txt", kC6);
  const auto c6p = write("c6p.txt", kC6Permuted);
  const auto tt = write("tt.txt", kTwoTriangles);
  CHECK(run("iso " + c6 + " " + c6p).code == 0);
  auto k1 = run("iso --k 1 --json " + c6 + " " + tt);
  CHECK(k1.code == 0);
  auto j = nlohmann::json::parse(k1.out);
  CHECK(j["k"] == 1);
  CHECK(j["variant"] == "counting");
  CHECK(j["decision"] == "isomorphic");
  CHECK(run("iso --k 2 " + c6 + " " + tt).code == 1);
  CHECK(run("iso --k 2 --variant count-free " + c6 + " " + tt).code == 1);
  // A round cap reached before stabilization is inconclusive.
  const auto p6 = write("p6.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n");
  const auto p6b = write("p6b.txt", "6 5\n5 4\n4 3\n3 2\n2 1\n1 0\n");
  CHECK(run("iso --k 1 --max-rounds 1 " + p6 + " " + p6b).code == 2);
  CHECK(run("iso " + p6 + " " + p6b).code == 0);
}

TEST_CASE("iso errors") {
  const auto c6 = write("c6.txt", kC6);
  const auto bad = write("bad.txt", "3 1\n0 7\n");
  CHECK(run("iso " + c6 + " " + bad).code == 64);
  CHECK(run("iso " + c6 + " /nonexistent/file").code == 66);
  CHECK(run("iso " + c6).code == 64);
  CHECK(run("frobnicate").code == 64);
  CHECK(run("iso --k 9 " + c6 + " " + c6).code == 2);
}

TEST_CASE("iso on rotation systems") {
  const auto a = write("rot_a.txt", run("gen rotation --n 7 --seed 3").out);
  const auto b = write("rot_b.txt", run("gen rotation --n 7 --seed 4").out);
  CHECK(run("iso --rotation " + a + " " + a).code == 0);
  CHECK(run("iso --rotation " + a + " " + b).code == 1);
}

TEST_CASE("depth table") {
  const auto c6 = write("c6.txt", kC6);
  const auto tt = write("tt.txt", kTwoTriangles);
  auto same = run("depth --k 2 --variant plain " + c6 + " " + c6);
  CHECK(same.code == 0);
  CHECK(same.out.find("∞") != std::string::npos);
  auto k3 = write("k3.txt", "3 3\n0 1\n1 2\n0 2\n");
  auto p3 = write("p3.txt", "3 2\n0 1\n1 2\n");
  auto d = run("depth --k 2 --variant counting " + k3 + " " + p3);
  CHECK(d.code == 0);
  CHECK(d.out.rfind("pair\tk\tvariant\tdepth\twl_dimension\twl_round\n", 0) == 0);
  CHECK(d.out.find("0\t2\tcounting\t") != std::string::npos);
  CHECK(run("depth --k 3 --variant counting " + c6 + " " + tt).code == 3);
  const auto big = write("big.txt", "7 0\n");
  CHECK(run("depth --k 2 " + big + " " + big).code == 3);
}

TEST_CASE("bench-bounds") {
  auto t = run("bench-bounds --family btw --kmax 1 --nmax 5 --seeds 1");
  CHECK(t.code == 0);
  CHECK(t.out.find("overall\tpass") != std::string::npos);
  auto e = run("bench-bounds --family rotation --nmax 2");
  CHECK(e.code == 0);
  CHECK(e.out.rfind("pair\t", 0) == 0);
  CHECK(run("bench-bounds --family bogus").code == 64);
}

TEST_CASE("circuit") {
  auto stats = run("circuit --n 3 --k 2 --r 1 --variant count-free");
  CHECK(stats.code == 0);
  CHECK(nlohmann::json::parse(stats.out)["threshold_count"] == 0);
  auto a = run("circuit --n 3 --k 2 --r 1 --emit");
  auto b = run("circuit --n 3 --k 2 --r 1 --emit");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  for (const char* v : {"counting", "count-free"}) {
    auto c = run(std::string("circuit --n 3 --k 2 --r 2 --check --variant ") + v);
    CHECK(c.code == 0);
    CHECK(nlohmann::json::parse(c.out)["equivalent"] == true);
  }
  CHECK(run("circuit --n 8 --k 2 --r 1").code == 3);
}

TEST_CASE("gen") {
  auto t = run("gen tree --n 9 --seed 2");
  CHECK(t.code == 0);
  CHECK(t.out.rfind("9 8\n", 0) == 0);
  CHECK(run("gen tree --n 9 --seed 2").out == t.out);
  CHECK(run("gen regular --n 6 --index 0").out == "6 6\n0 1\n0 5\n1 2\n2 3\n3 4\n4 5\n");
  CHECK(run("gen regular --n 6 --index 1").out == "6 6\n0 1\n0 2\n1 2\n3 4\n3 5\n4 5\n");
  CHECK(run("gen ktree --n 8 --k 2 --seed 1").code == 0);
  CHECK(run("gen gnp --n 8 --p 0.3 --seed 1").code == 0);
  const auto k3 = write("k3.txt", "3 3\n0 1\n1 2\n0 2\n");
  auto cfi = run("gen cfi --base " + k3 + " --twist");
  CHECK(cfi.code == 0);
  CHECK(cfi.out.find("c ") != std::string::npos);
  const auto out = (scratch() / "tree_out.txt").string();
  CHECK(run("gen tree --n 5 -o " + out).code == 0);
  CHECK(fs::exists(out));
  CHECK(run("gen nothing").code == 64);
}

TEST_CASE("coords") {
  const auto tri = write("tri_rot.txt", "0: 1 2\n1: 0 2\n2: 0 1\n");
  auto c = run("coords " + tri + " --a 0 --b 1");
  CHECK(c.code == 0);
  CHECK(c.out == "0:\n1: 0\n2: 1\n");
  auto j = run("coords " + tri + " --a 0 --b 1 --json");
  CHECK(nlohmann::json::parse(j.out).size() == 3);
  CHECK(run("coords " + tri + " --a 0 --b 0").code == 64);
}
