#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinlink/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / fs::path("spinlink_cli_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const json& config, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int rc = spinlink::cli::execute(config, o, e);
  if (out != nullptr) *out = o.str();
  return rc;
}

bool empty_dir(const TempDir& d) { return fs::is_empty(d.path); }

}  // namespace

TEST_CASE("invalid configs exit with code 2 and write nothing") {
  TempDir d;
  const auto out = d.file("p.csv");
  CHECK(run(json{{"command", "nope"}, {"out", out}}) == spinlink::cli::kExitInvalidConfig);
  CHECK(run(json{{"command", "compute-params"}, {"out", out}}) == spinlink::cli::kExitInvalidConfig);
  CHECK(run(json{{"command", "compute-params"}, {"chain", {{"preset", 33}}}, {"out", out}}) == 2);
  CHECK(run(json{{"command", "compute-params"}, {"chain", {{"preset", 20}}}, {"bogus", 1}, {"out", out}}) == 2);
  CHECK(run(json{{"command", "create-state"}, {"chain", {{"preset", 20}}}, {"target", {{"werner", 0.3}}}, {"out", out}}) ==
        2);
  CHECK(run(json{{"command", "create-state"}, {"chain", {{"preset", 20}}}, {"seed", 1}, {"target", {{"werner", 1.5}}},
                 {"out", out}}) == 2);
  CHECK(run(json::array()) == 2);
  CHECK(empty_dir(d));
}

TEST_CASE("numeric failures exit with code 4 and write nothing") {
  TempDir d;
  const auto out = d.file("s.json");
  CHECK(run(json{{"command", "create-state"},
                 {"chain", {{"preset", 20}}},
                 {"seed", 1},
                 {"starts", 4},
                 {"target", {{"werner", 0.95}}},
                 {"out", out}}) == spinlink::cli::kExitNumeric);
  CHECK(empty_dir(d));
}

TEST_CASE("missing input files exit with code 3") {
  TempDir d;
  CHECK(run(json{{"command", "create-state"}, {"params", d.file("missing.csv")}, {"seed", 1},
                 {"target", {{"werner", 0.3}}}}) == spinlink::cli::kExitIo);
}

TEST_CASE("compute-params writes a csv with provenance") {
  TempDir d;
  const auto out = d.file("p.csv");
  const auto amps = d.file("a.csv");
  REQUIRE(run(json{{"command", "compute-params"}, {"chain", {{"preset", 20}}}, {"out", out}, {"amplitudes_out", amps}}) == 0);
  std::ifstream f(out);
  std::string first;
  std::getline(f, first);
  CHECK(first.rfind("# spinlink", 0) == 0);
  std::stringstream rest;
  rest << f.rdbuf();
  CHECK(rest.str().find("p_N,1,") != std::string::npos);
  CHECK(fs::exists(amps));
  CHECK(!fs::exists(out + ".partial"));
}

TEST_CASE("create-state from a parameter file") {
  TempDir d;
  const auto params = d.file("p.csv");
  REQUIRE(run(json{{"command", "compute-params"}, {"chain", {{"n", 12}, {"delta1", 0.5}, {"delta2", 0.8}}}, {"out", params}}) ==
          0);
  std::string text;
  REQUIRE(run(json{{"command", "create-state"}, {"params", params}, {"seed", 3}, {"target", {{"werner", 0.2}}}}, &text) == 0);
  const auto j = json::parse(text);
  CHECK(j.at("residual").get<double>() < 1e-10);
  CHECK(j.at("a_ij").size() == 6);
  CHECK(j.at("provenance").at("config").at("seed") == 3);
}

TEST_CASE("probe-params through a probe file") {
  TempDir d;
  const auto probes = d.file("probes.json");
  const auto direct = d.file("direct.csv");
  const auto via_file = d.file("extracted.csv");
  REQUIRE(run(json{{"command", "probe-params"}, {"chain", {{"preset", 20}}}, {"probes_out", probes}, {"out", direct}}) == 0);
  REQUIRE(run(json{{"command", "probe-params"}, {"probes", probes}, {"n", 20}, {"out", via_file}}) == 0);
  CHECK(fs::file_size(direct) > 1000);
  CHECK(fs::file_size(via_file) > 1000);
}

TEST_CASE("disorder study is reproducible") {
  TempDir d;
  const json base{{"command", "disorder-study"}, {"chain", {{"preset", 20}}}, {"seed", 4}, {"epsilon", 0.02},
                  {"chains", 4}, {"p_grid", {0.1, 0.5}}};
  std::string a, b;
  REQUIRE(run(base, &a) == 0);
  REQUIRE(run(base, &b) == 0);
  CHECK(a == b);
  json no_seed = base;
  no_seed.erase("seed");
  CHECK(run(no_seed) == 2);
}

TEST_CASE("flags map onto configs") {
  const char* argv[] = {"spinlink", "--print-config", "create-state", "--n", "20", "--target", "werner", "--p", "0.4",
                        "--seed", "5"};
  CHECK(spinlink::cli::main(11, const_cast<char**>(argv)) == 0);
  const char* bad[] = {"spinlink", "create-state", "--n", "20", "--target", "werner", "--p", "0.4"};
  CHECK(spinlink::cli::main(8, const_cast<char**>(bad)) == 2);
}
