#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <omegad/subspace.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = fs::temp_directory_path() / ("omegad_cli_out_" + std::to_string(counter++));
  std::string cmd = std::string(OMEGAD_CLI_PATH) + " " + args + " >'" + out.string() + "' 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream is(out);
  std::ostringstream os;
  os << is.rdbuf();
  r.output = os.str();
  fs::remove(out);
  return r;
}

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("omegad_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string shquote(const std::string& s) { return "'" + s + "'"; }

}  // namespace

TEST_CASE("cli rejects missing subcommands and unknown entries") {
  CHECK(run_cli("").code == 2);
  CHECK(run_cli("exponent --point catalog:nope --d 0").code == 2);
  CHECK(run_cli("exponent --point catalog:sqrt2_sqrt3 --n 3 --d 0").code == 2);
  CHECK(run_cli("exponent --point catalog:sqrt2_sqrt3 --d 5").code == 2);
  CHECK(run_cli("check --tuple 1,2,3 --n 2").code == 2);
  CHECK(run_cli("check --tuple 0.5,2 --n 2 --kind sideways").code == 2);
  CHECK(run_cli("check --tuple 0.5,2 --n 2 --uhat0 0.5").code == 2);
}

TEST_CASE("cli catalog lists every built-in point") {
  RunResult r = run_cli("catalog");
  CHECK(r.code == 0);
  for (const char* name :
       {"sqrt2_sqrt3", "cbrt2", "plastic", "qroot2", "liouville", "random_digits"})
    CHECK(r.output.find(name) != std::string::npos);
  CHECK(r.output.find("violated") == std::string::npos);
}

TEST_CASE("cli transfer checks mirror the predicate engine") {
  RunResult ok = run_cli("check --n 2 --tuple 0.5,2 --uhat0 0.5 --uhat-top 2");
  CHECK(ok.code == 0);
  CHECK(ok.output.find("violated") == std::string::npos);

  RunResult bad = run_cli("check --n 2 --tuple 0.4,2");
  CHECK(bad.code == 1);
  CHECK(bad.output.find("violated") != std::string::npos);

  CHECK(run_cli("check --n 1 --tuple inf").code == 0);
  CHECK(run_cli("check --n 3 --tuple 0.4,1,3 --kind lower").code == 0);

  fs::path dir = fresh_dir("check");
  RunResult rep = run_cli("check --n 2 --tuple 0.5,2 --out " + shquote(dir.string()));
  CHECK(rep.code == 0);
  std::string body = slurp(dir / "check_report.json");
  CHECK(body.find("\"status\"") != std::string::npos);
  CHECK(body.find("violated") == std::string::npos);
}

TEST_CASE("cli geometry queries print exact values") {
  omegad::Mat<omegad::Int> rows{{omegad::Int(1), omegad::Int(0), omegad::Int(0)},
                                {omegad::Int(0), omegad::Int(1), omegad::Int(0)}};
  std::string plane = omegad::RationalSubspace::from_generators(2, rows).serialize();
  RunResult h = run_cli("height --subspace " + shquote(plane));
  CHECK(h.code == 0);
  CHECK(h.output.find("height_sq = 1") != std::string::npos);

  RunResult d = run_cli("distance --point decimal:0.5,0.25 --subspace " + shquote(plane));
  CHECK(d.code == 0);
  CHECK(d.output.find("distance_sq = ") != std::string::npos);
  CHECK(d.output.find("halo = 0") != std::string::npos);

  omegad::Mat<omegad::Int> line{{omegad::Int(1), omegad::Int(1)}};
  std::string pt = omegad::RationalSubspace::from_generators(1, line).serialize();
  CHECK(run_cli("distance --point decimal:0.5,0.25 --subspace " + shquote(pt)).code == 2);
}

TEST_CASE("cli exponent campaign writes the full report set") {
  fs::path dir = fresh_dir("exp");
  RunResult r = run_cli("exponent --point catalog:sqrt2_sqrt3 --d 0,1 --hmax 2e3 --out " +
                        shquote(dir.string()));
  CHECK(r.code == 0);
  CHECK(r.output.find("omega d=0") != std::string::npos);
  CHECK(r.output.find("omega d=1") != std::string::npos);
  for (const char* stem : {"omega_d0", "omega_d1"}) {
    std::string csv = slurp(dir / (std::string(stem) + "_witness.csv"));
    CHECK(csv.rfind("d,height_sq,distance_sq,exponent,certified\n", 0) == 0);
    std::string summary = slurp(dir / (std::string(stem) + "_summary.json"));
    CHECK(summary.find("\"certified_lower\"") != std::string::npos);
    CHECK(summary.find("\"status\": \"certified\"") != std::string::npos);
    std::string scatter = slurp(dir / (std::string(stem) + "_scatter.csv"));
    CHECK(scatter.rfind("log_height_sq,neg_log_distance_sq\n", 0) == 0);
  }
  CHECK(fs::exists(dir / "scatter.gnuplot"));

  fs::path dir2 = fresh_dir("exp_repeat");
  RunResult r2 = run_cli("exponent --point catalog:sqrt2_sqrt3 --d 0,1 --hmax 2e3 --out " +
                         shquote(dir2.string()));
  CHECK(r2.code == 0);
  for (const char* f : {"omega_d0_witness.csv", "omega_d0_summary.json", "omega_d1_witness.csv",
                        "omega_d1_summary.json"})
    CHECK(slurp(dir / f) == slurp(dir2 / f));
}

TEST_CASE("cli uniform campaign covers both endpoint sides") {
  fs::path dir = fresh_dir("uni");
  RunResult r = run_cli(
      "exponent --point catalog:sqrt2_sqrt3 --d 0,1 --hmax 4096 --uniform --workers 2 --out " +
      shquote(dir.string()));
  CHECK(r.code == 0);
  for (const char* stem : {"uniform_d0", "uniform_d1"}) {
    std::string summary = slurp(dir / (std::string(stem) + "_summary.json"));
    CHECK(summary.find("\"kind\": \"uniform\"") != std::string::npos);
    CHECK(summary.find("onset") != std::string::npos);
  }
}

TEST_CASE("cli refuses certification when independence fails") {
  fs::path dir = fresh_dir("golden");
  RunResult r = run_cli("exponent --point " + shquote("poly:-1,-1,1;interval:1,2;powers:2") +
                        " --d 0 --hmax 200 --out " + shquote(dir.string()));
  CHECK(r.code == 0);
  CHECK(r.output.find("heuristic") != std::string::npos);
  std::string summary = slurp(dir / "omega_d0_summary.json");
  CHECK(summary.find("\"heuristic\"") != std::string::npos);
  CHECK(summary.find("certification refused") != std::string::npos);
  CHECK(summary.find("\"status\": \"violated\"") != std::string::npos);
  CHECK(summary.find("\"relation_verified\": true") != std::string::npos);
}

TEST_CASE("cli rational points are flagged degenerate") {
  fs::path dir = fresh_dir("degenerate");
  RunResult r = run_cli("exponent --point decimal:0.5 --d 0 --hmax 100 --out " +
                        shquote(dir.string()));
  CHECK(r.code == 0);
  CHECK(r.output.find("inf") != std::string::npos);
  std::string summary = slurp(dir / "omega_d0_summary.json");
  CHECK(summary.find("degenerate: point is rational") != std::string::npos);
}

TEST_CASE("cli going-up runs single and batch instances") {
  fs::path dir = fresh_dir("lift");
  omegad::Mat<omegad::Int> row{{omegad::Int(1), omegad::Int(1), omegad::Int(1)}};
  std::string pt = omegad::RationalSubspace::from_generators(2, row).serialize();
  RunResult single = run_cli("liftup --point catalog:sqrt2_sqrt3 --d 0 --subspace " + shquote(pt) +
                             " --out " + shquote(dir.string()));
  CHECK(single.code == 0);
  CHECK(single.output.find("lifted to dimension 1") != std::string::npos);
  std::string cert = slurp(dir / "liftup_certificate.json");
  CHECK(cert.find("\"bound_svp\": true") != std::string::npos);
  CHECK(cert.find("\"bound_norm\": true") != std::string::npos);
  CHECK(cert.find("\"bound_wedge\": true") != std::string::npos);

  RunResult batch = run_cli("liftup --batch 5 --n 3 --seed 7 --out " + shquote(dir.string()));
  CHECK(batch.code == 0);
  CHECK(batch.output.find("5/5") != std::string::npos);
  std::string bj = slurp(dir / "liftup_batch.json");
  CHECK(bj.find("\"verified\": 5") != std::string::npos);

  CHECK(run_cli("liftup --point catalog:sqrt2_sqrt3 --d 1 --subspace " + shquote(pt)).code == 2);
}
