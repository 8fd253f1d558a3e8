#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "meshsoc/error.hpp"

namespace fs = std::filesystem;
using namespace meshsoc::cli;

namespace {

// Fresh scratch directory per test case.
fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("meshsoc_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int run(std::vector<std::string> args, std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = parse_and_dispatch(args, out, err);
  if (err_text) *err_text = err.str();
  return code;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("centrality on a three-node path") {
  const auto dir = scratch("centrality");
  spit(dir / "p3.txt", "A B\nB C\n");
  REQUIRE(run({"centrality", "--topo", (dir / "p3.txt").string(), "--out", dir.string(),
               "--quiet"}) == kOk);
  const auto csv = slurp(dir / "centrality.csv");
  CHECK(line_count(csv) == 13);
  CHECK(csv.rfind("node_label,metric,value\n", 0) == 0);
  CHECK(csv.find("B,betweenness,1.000000\n") != std::string::npos);
  CHECK(csv.find("A,closeness,0.666667\n") != std::string::npos);
  CHECK(csv.find("B,eigenvector,0.707107\n") != std::string::npos);
  CHECK(fs::exists(dir / kManifestName));
  CHECK_FALSE(fs::exists(dir / "ranking.csv"));

  REQUIRE(run({"centrality", "--topo", (dir / "p3.txt").string(), "--out", dir.string(),
               "--metrics", "degree", "--top", "1", "--quiet"}) == kOk);
  CHECK(slurp(dir / "ranking.csv") == "metric,rank,node_label,value\ndegree,1,B,1.000000\n");
}

TEST_CASE("gen-topo is deterministic") {
  const auto a = scratch("gen_a");
  const auto b = scratch("gen_b");
  for (const auto& dir : {a, b})
    REQUIRE(run({"gen-topo", "--n", "50", "--degree", "6", "--seed", "3", "--out", dir.string(),
                 "--quiet"}) == kOk);
  CHECK(slurp(a / "topology.txt") == slurp(b / "topology.txt"));
  CHECK_FALSE(slurp(a / "topology.txt").empty());
}

TEST_CASE("attack on a star disconnects every pair") {
  const auto dir = scratch("attack");
  spit(dir / "star.txt", "c a\nc b\nc d\nc e\nc f\n");
  REQUIRE(run({"attack", "--topo", (dir / "star.txt").string(), "--metrics", "degree",
               "--removals", "1", "--trials", "2", "--out", dir.string(), "--quiet"}) == kOk);
  const auto csv = slurp(dir / "attack.csv");
  CHECK(csv.find("degree,0,1.666667,15,0,\n") != std::string::npos);
  CHECK(csv.find("degree,1,,0,10,\n") != std::string::npos);
}

TEST_CASE("usage and runtime errors map to exit codes") {
  const auto dir = scratch("errors");
  CHECK(run({"frobnicate"}) == kUsageError);
  CHECK(run({"centrality"}) == kUsageError);
  CHECK(run({"centrality", "--topo", "x", "--bogus"}) == kUsageError);
  std::string err;
  CHECK(run({"centrality", "--topo", (dir / "missing.txt").string(), "--out", dir.string()},
            &err) == kRuntimeError);
  CHECK(err.find("missing.txt") != std::string::npos);

  spit(dir / "loop.txt", "A B\nB B\n");
  CHECK(run({"centrality", "--topo", (dir / "loop.txt").string(), "--out", dir.string()}, &err) ==
        kRuntimeError);
  CHECK(err.find("line 2") != std::string::npos);

  spit(dir / "p3.txt", "A B\nB C\n");
  CHECK(run({"centrality", "--topo", (dir / "p3.txt").string(), "--metrics", "fame", "--out",
             dir.string()}) == kUsageError);
  CHECK(run({"attack", "--topo", (dir / "p3.txt").string(), "--removals", "3", "--out",
             dir.string()}) == kUsageError);
  CHECK(run({"stdma", "--topo", (dir / "p3.txt").string(), "--mode", "greedy", "--out",
             dir.string()}) == kUsageError);
  CHECK(run({"replay", "--manifest", (dir / "none.json").string()}) == kRuntimeError);
}

TEST_CASE("manifest survives a JSON round-trip") {
  RunManifest m;
  m.command = "stdma";
  m.config = {{"rate", "700"}, {"seed", "4"}};
  m.seed = 4;
  m.output_dir = "/tmp/x";
  m.tool_version = std::string(tool_version());
  m.outputs = {"stdma.csv"};
  CHECK(manifest_from_json(to_json(m)) == m);
  CHECK_THROWS_AS(manifest_from_json(nlohmann::json::object()), meshsoc::InvalidArgument);
}

TEST_CASE("replay reproduces outputs byte for byte") {
  const auto dir = scratch("replay");
  const auto again = scratch("replay_again");
  REQUIRE(run({"gen-topo", "--n", "15", "--degree", "5", "--seed", "2", "--out", dir.string(),
               "--quiet"}) == kOk);
  const auto topo = (dir / "topology.txt").string();
  REQUIRE(run({"stdma", "--topo", topo, "--rate", "800", "--duration", "3", "--seed", "9",
               "--mode", "random", "--out", dir.string(), "--quiet"}) == kOk);
  const auto manifest = read_manifest(dir / kManifestName);
  CHECK(manifest.command == "stdma");
  CHECK(manifest.seed == 9);
  CHECK(manifest.outputs == std::vector<std::string>{"stdma.csv"});
  REQUIRE(run({"replay", "--manifest", (dir / kManifestName).string(), "--out", again.string(),
               "--quiet"}) == kOk);
  CHECK(slurp(again / "stdma.csv") == slurp(dir / "stdma.csv"));
}

TEST_CASE("config file supplies defaults and explicit flags win") {
  const auto dir = scratch("config");
  spit(dir / "p3.txt", "A B\nB C\n");
  spit(dir / "cfg.json", "{\"topo\": \"" + (dir / "p3.txt").string() +
                             "\", \"metrics\": \"degree\", \"top\": 2}");
  REQUIRE(run({"centrality", "--config", (dir / "cfg.json").string(), "--out", dir.string(),
               "--quiet"}) == kOk);
  CHECK(line_count(slurp(dir / "centrality.csv")) == 4);
  CHECK(line_count(slurp(dir / "ranking.csv")) == 3);

  REQUIRE(run({"centrality", "--config", (dir / "cfg.json").string(), "--metrics", "closeness",
               "--out", dir.string(), "--quiet"}) == kOk);
  CHECK(slurp(dir / "centrality.csv").find(",closeness,") != std::string::npos);
  CHECK(slurp(dir / "centrality.csv").find(",degree,") == std::string::npos);

  spit(dir / "bad.json", "[1, 2]");
  CHECK(run({"centrality", "--config", (dir / "bad.json").string()}) == kUsageError);
}
