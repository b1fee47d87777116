#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "json.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = PPAK_FIXTURE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ppak::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json report(const Result& r) {
  INFO(r.err);
  REQUIRE_FALSE(r.out.empty());
  return json::parse(r.out);
}

std::string fixture(const char* name) { return (kFixtures / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the installed binary through the shell and returns its exit status.
int run_binary(const std::string& args, const fs::path& out, const fs::path& err) {
  const std::string cmd = std::string("\"") + PPAK_CLI_PATH + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("curvature of a linear profile") {
  const Result r = run({"curvature", "--profile", "x3", "--samples", "20", "--no-timestamp"});
  CHECK(r.code == 0);
  const json j = report(r);
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "curvature");
  CHECK(j["scalar_range"][0].get<double>() == Catch::Approx(-0.5).epsilon(1e-12));
  CHECK(j["scalar_range"][1].get<double>() == Catch::Approx(-0.5).epsilon(1e-12));
  CHECK(j["verdict"] == "curved");
  CHECK(j["exit_code"] == 0);
  CHECK_FALSE(j.contains("generated_at"));
}

TEST_CASE("curvature of the zero profile is flat") {
  const json j = report(run({"curvature", "--profile", "0", "--samples", "10"}));
  CHECK(j["verdict"] == "flat");
  CHECK(j.contains("generated_at"));
}

TEST_CASE("curvature report at a point") {
  const Result r = run({"curvature", "--profile", "x3^2+x4^2", "--point", "0,0,1,0", "--samples", "5"});
  CHECK(r.code == 0);
  const json m = report(r)["point"]["frame_ricci"];
  const double expected[4][4] = {{2, 0, 0, -2}, {0, -2, 0, 0}, {0, 0, 0, 0}, {-2, 0, 0, -2}};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) CHECK(m[i][k].get<double>() == Catch::Approx(expected[i][k]).margin(1e-12));
  CHECK(run({"curvature", "--profile", "x3", "--point", "0,0,1"}).code == 2);
}

TEST_CASE("almost kahler verification") {
  {
    const Result r = run({"verify-ak", "--profile", "sin(u)*x3", "--samples", "30"});
    CHECK(r.code == 0);
    const json j = report(r);
    CHECK(j["classification"]["verdict"] == "strictly_almost_kahler");
    CHECK(j["classification"]["max_domega"].get<double>() <= 1e-10);
    CHECK(j["domega_ok"] == true);
  }
  CHECK(report(run({"verify-ak", "--profile", "sin(u)"}))["classification"]["verdict"] == "kahler_flat");
  CHECK(report(run({"verify-ak", "--profile", "0"}))["classification"]["verdict"] == "kahler_flat");
  CHECK(report(run({"verify-ak", "--profile", "a3*x3 + sin(u)", "--param", "a3=0"}))["classification"]["verdict"] ==
        "kahler_flat");
  CHECK(run({"verify-ak", "--profile", "x3", "--dim", "5"}).code == 2);
}

TEST_CASE("torus verification") {
  const json s = report(run({"torus-verify", "--chart", fixture("torus_sin.json")}));
  CHECK(s["classification"]["verdict"] == "strictly_almost_kahler");
  CHECK(s["exit_code"] == 0);
  CHECK(report(run({"torus-verify", "--chart", fixture("torus_cos.json")}))["classification"]["verdict"] ==
        "kahler_flat");
  CHECK(report(run({"torus-verify", "--profile", "cos(theta)*sin(x2)", "--dim", "6"}))["exit_code"] == 0);
  CHECK(run({"torus-verify", "--chart", fixture("plane_wave.json")}).code == 2);
}

TEST_CASE("geodesics of the zero profile") {
  const Result r = run({"geodesics", "--profile", "0", "--horizon", "100", "--samples", "5"});
  CHECK(r.code == 0);
  const json p = report(r)["probe"];
  CHECK(p["max_drift_c"].get<double>() == 0.0);
  CHECK(p["max_drift_c2"].get<double>() == 0.0);
  CHECK(p["failures"] == 0);
}

TEST_CASE("geodesic ensemble on a quadratic profile") {
  const Result r = run({"geodesics", "--profile", "x3^2+x4^2", "--horizon", "1000", "--samples", "20", "--jobs", "2"});
  CHECK(r.code == 0);
  const json p = report(r)["probe"];
  CHECK(p["ensemble"] == 20);
  CHECK(p["max_drift_c"].get<double>() <= 1e-6);
  CHECK(p["max_drift_c2"].get<double>() <= 1e-6);
  CHECK(p["max_drift_speed"].get<double>() <= 1e-6);
}

TEST_CASE("geodesic trajectory csv") {
  const fs::path csv = fs::temp_directory_path() / "ppak_cli_traj.csv";
  const Result r = run({"geodesics", "--profile", "sin(u)*x3", "--horizon", "10", "--samples", "2", "--csv",
                        csv.string()});
  CHECK(r.code == 0);
  std::ifstream in(csv);
  std::string header, row;
  std::getline(in, header);
  CHECK(header == "t,v,u,x3,x4,c,c2,speed");
  std::size_t rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    CHECK(std::count(row.begin(), row.end(), ',') == 7);
  }
  CHECK(rows >= 2);
  fs::remove(csv);
}

TEST_CASE("loose tolerances fail the drift check") {
  const Result r = run({"geodesics", "--profile", "x3^2+x4^2", "--horizon", "1000", "--samples", "3", "--tol-abs",
                        "1e-3", "--tol-rel", "1e-3"});
  CHECK(r.code == 1);
  CHECK(report(r)["exit_code"] == 1);
}

TEST_CASE("malformed profiles are input errors") {
  const Result r = run({"geodesics", "--profile", "x3 + * 2"});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("offset 5") != std::string::npos);
  CHECK(run({"curvature", "--profile", "v*x3"}).code == 2);
  CHECK(run({"curvature", "--chart", fixture("invalid/truncated.json")}).code == 2);
  CHECK(run({"curvature", "--chart", fixture("invalid/unknown_kind.json")}).code == 2);
  CHECK(run({"penrose", "--chart", fixture("invalid/fixed_entry.json")}).code == 2);
  CHECK(run({"curvature"}).code == 2);
  CHECK(run({"curvature", "--profile", "x3", "--chart", fixture("plane_wave.json")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"curvature", "--profile", "x3", "--samples", "many"}).code == 2);
  CHECK(run({"penrose", "--chart", fixture("minkowski.json"), "--omegas", "1,0"}).code == 2);
}

TEST_CASE("numeric failures") {
  const Result r = run({"curvature", "--profile", "log(x3)", "--samples", "20"});
  CHECK(r.code == 3);
  CHECK(r.err.find("numeric failure") != std::string::npos);
}

TEST_CASE("help") {
  const Result r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("penrose") != std::string::npos);
}

TEST_CASE("penrose reports") {
  {
    const Result r = run({"penrose", "--chart", fixture("minkowski.json")});
    CHECK(r.code == 0);
    const json j = report(r);
    CHECK(j["max_homothety_residual"].get<double>() <= 1e-10);
    CHECK(j["certificate"]["plane_wave"] == true);
    CHECK(j["certificate"]["max_curvature"].get<double>() == 0.0);
    CHECK(j["dual"]["classification"]["verdict"] == "kahler_flat");
  }
  {
    const json j = report(run({"penrose", "--chart", fixture("exp_front.json")}));
    CHECK(j["limit_components"]["h22"] == "exp(x0)");
    CHECK(j["dual"]["converted"] == false);
  }
  {
    const json j = report(run({"penrose", "--chart", fixture("generic_first_order.json"), "--omegas", "0.1,0.01,0.001"}));
    CHECK(j["deviation_monotone"] == true);
    CHECK(j["deviation_order_one"] == true);
    const json& sweep = j["omega_sweep"];
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[0]["limit_deviation"].get<double>() > sweep[1]["limit_deviation"].get<double>());
    CHECK(sweep[1]["limit_deviation"].get<double>() > sweep[2]["limit_deviation"].get<double>());
  }
  {
    const json j = report(run({"penrose", "--chart", fixture("minkowski.json"), "--brinkmann", "x3^2 - x4^2"}));
    CHECK(j["dual"]["conversion"] == "user-profile");
    CHECK(j["dual"]["classification"]["verdict"] == "strictly_almost_kahler");
  }
  CHECK(run({"penrose", "--profile", "x3"}).code == 2);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"curvature", "--profile", "sin(u)*x3^2", "--seed", "5"},
      {"verify-ak", "--profile", "x3*x4", "--seed", "5", "--samples", "10"},
      {"torus-verify", "--chart", fixture("torus_sin.json"), "--seed", "9", "--samples", "10"},
      {"geodesics", "--profile", "x3^2+x4^2", "--seed", "5", "--samples", "4", "--horizon", "50", "--jobs", "2"},
      {"penrose", "--chart", fixture("generic_mixed.json"), "--seed", "5"}};
  for (auto args : commands) {
    args.push_back("--no-timestamp");
    const Result a = run(args), b = run(args);
    INFO(args[0]);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  const Result s1 = run({"geodesics", "--profile", "x3^2", "--seed", "1", "--samples", "2", "--horizon", "5", "--no-timestamp"});
  const Result s2 = run({"geodesics", "--profile", "x3^2", "--seed", "2", "--samples", "2", "--horizon", "5", "--no-timestamp"});
  CHECK(s1.out != s2.out);
}

TEST_CASE("binary exit codes and output files") {
  const fs::path dir = fs::temp_directory_path();
  const fs::path out = dir / "ppak_cli_out.json", err = dir / "ppak_cli_err.txt";
  CHECK(run_binary("curvature --profile x3 --samples 5 --no-timestamp", out, err) == 0);
  const std::string first = slurp(out);
  CHECK(run_binary("curvature --profile x3 --samples 5 --no-timestamp", out, err) == 0);
  CHECK(slurp(out) == first);
  CHECK(run_binary("geodesics --profile 'x3^2+x4^2' --samples 2 --tol-abs 1e-3 --tol-rel 1e-3", out, err) == 1);
  CHECK(run_binary("geodesics --profile 'x3 +'", out, err) == 2);
  CHECK(slurp(err).find("offset 4") != std::string::npos);
  CHECK(run_binary("curvature --profile 'log(x3)' --samples 10", out, err) == 3);

  const fs::path file = dir / "ppak_cli_report.json";
  CHECK(run_binary("verify-ak --profile x3 --samples 5 --no-timestamp --out " + file.string(), out, err) == 0);
  CHECK(slurp(out).empty());
  CHECK(json::parse(slurp(file))["command"] == "verify-ak");
  fs::remove(file);
  fs::remove(out);
  fs::remove(err);
}
