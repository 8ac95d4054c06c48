#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "swloc/cli.hpp"
#include "swloc/error.hpp"

using namespace swloc;
using namespace swloc::cli;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("swloc_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path, std::ios::binary) << text; }

int invoke(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  args.insert(args.begin(), "swloc");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace

TEST_CASE("duration and number lists") {
  CHECK(parse_durations("1d,2h,30s,45") == std::vector<std::uint64_t>{86400, 7200, 30, 45});
  CHECK_THROWS_AS(parse_durations("1w"), ParameterError);
  CHECK_THROWS_AS(parse_durations("0d"), ParameterError);
  CHECK_THROWS_AS(parse_durations("1d,,2d"), ParameterError);
  CHECK(format_duration(86400 * 14) == "14d");
  CHECK(format_duration(7200) == "2h");
  CHECK(format_duration(90) == "90s");
  CHECK(parse_number_list("0.5, 1,2") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK_THROWS_AS(parse_number_list("a"), ParameterError);
}

TEST_CASE("analyze-trace golden table") {
  Scratch s;
  std::ostringstream out, err;
  const int rc = invoke({"analyze-trace", "--trace", SWLOC_FIXTURE_DIR "/micro_trace.csv", "--windows", "1d,2d,7d",
                         "--samples", "16", "--seed", "2002", "--out", s.path("r.json")},
                        out, err);
  CHECK(rc == 0);
  CHECK(out.str() == slurp(SWLOC_FIXTURE_DIR "/micro_trace.table.txt"));

  const auto j = nlohmann::json::parse(slurp(s.path("r.json")));
  CHECK(j["schema_version"] == 1);
  REQUIRE(j["windows"].size() == 3);
  CHECK(j["windows"][0]["interval"] == "1d");
  CHECK(j["windows"][0]["observed"]["lcc_nodes"] == 5);
  CHECK(j["windows"][1]["observed"]["clustering"].get<double>() == doctest::Approx(5.0 / 6.0));
  for (const char* key : {"random_baseline", "clustering_ratio", "path_ratio", "baseline_samples"}) {
    CHECK(j["windows"][2].contains(key));
  }
}

TEST_CASE("analyze-trace edge cases") {
  Scratch s;
  std::ostringstream out, err;
  spit(s.path("empty.csv"), "# nothing here\n");
  CHECK(cmd_analyze_trace({s.path("empty.csv"), "1d", 4, 1, s.path("e.json")}, out, err) == 0);
  CHECK(nlohmann::json::parse(slurp(s.path("e.json")))["windows"].empty());

  CHECK(cmd_analyze_trace({s.path("missing.csv"), "1d", 4, 1, s.path("m.json")}, out, err) == 2);

  spit(s.path("bad.csv"), "u1,f1,1\nu2,f1\n");
  err.str("");
  CHECK(cmd_analyze_trace({s.path("bad.csv"), "1d", 4, 1, s.path("b.json")}, out, err) == 2);
  CHECK(err.str().find(":2:") != std::string::npos);

  CHECK(cmd_analyze_trace({SWLOC_FIXTURE_DIR "/micro_trace.csv", "1y", 4, 1, s.path("y.json")}, out, err) == 2);
}

TEST_CASE("estimate") {
  const auto sized = compute_estimate({});
  CHECK(sized.memory_bytes <= 20e6);
  CHECK(sized.bits_per_entry <= 16.0);
  CHECK(sized.expected_fp <= 0.001);

  EstimateOptions quiet;
  quiet.fanout = 0.0;
  CHECK(compute_estimate(quiet).traffic_bytes_per_sec == 0.0);

  EstimateOptions fixed;
  fixed.bytes_per_entry = 2.0;
  CHECK(compute_estimate(fixed).traffic_bytes_per_sec == doctest::Approx(24000.0));

  EstimateOptions any;
  any.fp = 1.0;
  std::ostringstream out, err;
  CHECK(cmd_estimate(any, out, err) == 0);
  CHECK(err.str().find("warning") != std::string::npos);
  CHECK(compute_estimate(any).m == 8);

  EstimateOptions bad;
  bad.files = 0;
  CHECK(cmd_estimate(bad, out, err) == 2);

  out.str("");
  CHECK(invoke({"estimate", "--files", "10000000", "--nodes", "1000", "--fp", "0.001", "--lifetime-days", "10",
                "--fanout", "1.2", "--period-secs", "1", "--bytes-per-entry", "2"},
               out, err) == 0);
  CHECK(out.str().find("24000.0 B/s") != std::string::npos);
}

TEST_CASE("workload-curve") {
  std::ostringstream out, err;
  CHECK(cmd_workload_curve({"1", 1'000'000, "0,0.01,1", ""}, out, err) == 0);
  CHECK(out.str() ==
        "alpha,coverage,fraction_served\n"
        "1,0,0.000000\n"
        "1,0.01,0.680038\n"
        "1,1,1.000000\n");
  CHECK(cmd_workload_curve({"x", 10, "0.5", ""}, out, err) == 2);
  CHECK(cmd_workload_curve({"1", 10, "1.5", ""}, out, err) == 2);
}

TEST_CASE("build-overlay") {
  Scratch s;
  std::ostringstream out, err;
  BuildOverlayOptions opt;
  opt.clusters = 3;
  opt.size = 4;
  opt.degree = 2;
  opt.wiring = "gateway";
  opt.param = 2;
  opt.out = s.path("o.edges");
  CHECK(cmd_build_overlay(opt, out, err) == 0);
  const auto clusters = slurp(s.path("o.edges.clusters.csv"));
  CHECK(clusters.rfind("node_id,cluster_id,gateway\n0,0,1\n1,0,0\n", 0) == 0);
  CHECK(!slurp(s.path("o.edges")).empty());

  opt.wiring = "mesh";
  CHECK(cmd_build_overlay(opt, out, err) == 2);
}

TEST_CASE("simulate") {
  Scratch s;
  std::ostringstream out, err;
  SimulateOptions opt{SWLOC_CONFIG_DIR "/example_sim.conf", s.path("a.json"), s.path("a.csv")};
  REQUIRE(cmd_simulate(opt, out, err) == 0);
  opt.out = s.path("b.json");
  opt.per_round.clear();
  REQUIRE(cmd_simulate(opt, out, err) == 0);
  CHECK(slurp(s.path("a.json")) == slurp(s.path("b.json")));
  const auto metrics = nlohmann::json::parse(slurp(s.path("a.json")));
  CHECK(metrics["rounds"] == 200);
  CHECK(slurp(s.path("a.csv")).rfind("round,served_local,fp,fn,bytes\n", 0) == 0);

  spit(s.path("bad.conf"), "rounds = 10\noverlay.sise = 4\n");
  err.str("");
  CHECK(cmd_simulate({s.path("bad.conf"), s.path("c.json"), ""}, out, err) == 2);
  CHECK(err.str().find("overlay.sise") != std::string::npos);

  spit(s.path("flood.conf"),
       "strategy = flood\nrounds = 80\noverlay.clusters = 5\noverlay.size = 8\noverlay.degree = 4\n"
       "overlay.param = 1\nworkload.files = 300\nworkload.coverage = 0.2\n");
  CHECK(cmd_simulate({s.path("flood.conf"), s.path("f.json"), ""}, out, err) == 0);
  const auto flood = nlohmann::json::parse(slurp(s.path("f.json")));
  CHECK(flood["unresolved"] == 0);
  CHECK(flood["requests_total"].get<int>() > 0);

  CHECK(cmd_simulate({s.path("nope.conf"), s.path("n.json"), ""}, out, err) == 2);
}

TEST_CASE("argument parsing exit codes") {
  std::ostringstream out, err;
  CHECK(invoke({}, out, err) == 2);
  CHECK(invoke({"frobnicate"}, out, err) == 2);
  CHECK(invoke({"estimate", "--files", "many"}, out, err) == 2);
  CHECK(invoke({"--help"}, out, err) == 0);
  CHECK(invoke({"analyze-trace"}, out, err) == 2);
}
