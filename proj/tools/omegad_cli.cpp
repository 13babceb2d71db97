// Command-line front end: measurement campaigns, lift demonstrations,
// transfer checks, and small geometry queries. All numeric output is
// exact rational strings plus 15-digit decimal convenience values rounded
// toward minus infinity unless stated otherwise.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <omegad/omegad.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace omegad;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;

struct CliError {
  int code;
  std::string message;
};

// Accepts plain integers, decimal points, and e-notation: 1e5, 2.5e3.
Rat parse_magnitude(const std::string& s) {
  std::size_t epos = s.find_first_of("eE");
  std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
  long exp10 = 0;
  if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
  Rat base = parse_rat(mant);
  if (exp10 >= 0) return base * Rat(pow_int(Int(10), static_cast<unsigned long>(exp10)));
  return base / Rat(pow_int(Int(10), static_cast<unsigned long>(-exp10)));
}

PointSpec resolve_point(const std::string& arg) {
  if (arg.rfind("catalog:", 0) == 0) {
    std::string name = arg.substr(8);
    std::optional<CatalogEntry> e = find_catalog(name);
    if (!e) throw CliError{kExitConfig, "unknown catalog entry: " + name};
    return parse_point_spec(e->spec_text);
  }
  return parse_point_spec(arg);
}

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  const char* env = std::getenv("OMEGAD_OUT_DIR");
  if (env && *env) return fs::path(env);
  return fs::path(".");
}

std::string dec(const Rat& v) { return to_decimal(v, 15, RoundDir::down); }

json witness_json(const Witness& w) {
  json j;
  j["subspace"] = w.subspace;
  j["height_sq"] = w.height_sq.get_str();
  j["distance_sq"] = w.distance_sq.get_str();
  j["distance_sq_decimal_down"] = dec(w.distance_sq);
  j["exponent_decimal_down"] = ext_decimal(w.exponent, 15, RoundDir::down);
  j["certified"] = w.certified;
  return j;
}

json estimate_json(const CampaignResult& r, const IndependenceReport& indep) {
  json j;
  j["kind"] = r.est.kind;
  j["d"] = r.est.d;
  j["value_decimal_down"] = ext_decimal(r.est.value, 15, RoundDir::down);
  if (r.est.value.is_finite()) j["value_exact"] = r.est.value.value().get_str();
  j["direction"] =
      r.est.direction == Direction::certified_lower ? "certified_lower" : "heuristic";
  j["proxy_bits"] = r.proxy_bits;
  if (r.est.onset_index) j["onset_index"] = *r.est.onset_index;
  j["notes"] = r.est.notes;
  json ws = json::array();
  for (const Witness& w : r.est.witnesses) ws.push_back(witness_json(w));
  j["witnesses"] = ws;
  json ij;
  ij["status"] = to_string(indep.status);
  ij["note"] = indep.note;
  if (indep.relation) {
    json rel = json::array();
    for (const Int& c : *indep.relation) rel.push_back(c.get_str());
    ij["relation"] = rel;
    ij["relation_verified"] = indep.relation_verified;
  }
  j["independence"] = ij;
  return j;
}

// Scatter rows: natural logs, rounded toward minus infinity; exact-hit
// rows print inf.
void write_scatter(const fs::path& file, const RecordSequence& records) {
  std::ofstream os(file);
  os << "log_height_sq,neg_log_distance_sq\n";
  for (const RecordEntry& e : records.entries) {
    if (e.height_sq <= 1) continue;
    os << to_decimal(log_interval(Rat(e.height_sq)).lo, 15, RoundDir::down) << ",";
    if (sgn(e.distance_sq) == 0)
      os << "inf\n";
    else
      os << to_decimal(-log_interval(e.distance_sq).hi, 15, RoundDir::down) << "\n";
  }
}

void write_gnuplot(const fs::path& file, const std::vector<std::string>& scatter_files) {
  std::ofstream os(file);
  os << "# plot record scatters: log height_sq vs -log distance_sq\n";
  os << "set xlabel 'log height_sq'\nset ylabel '-log distance_sq'\n";
  os << "set datafile separator ','\nset key outside\n";
  os << "plot ";
  for (std::size_t i = 0; i < scatter_files.size(); ++i) {
    if (i) os << ", ";
    os << "'" << scatter_files[i] << "' skip 1 with points title '" << scatter_files[i] << "'";
  }
  os << "\n";
}

struct ExponentConfig {
  std::string point;
  int n = 0;
  std::string d_list = "0";
  std::string hmax = "1e5";
  int precision = 192;
  int workers = 1;
  bool uniform = false;
  std::string out;
};

int cmd_exponent(const ExponentConfig& cfg) {
  PointSpec spec = resolve_point(cfg.point);
  if (cfg.n != 0 && cfg.n != spec.n)
    throw CliError{kExitConfig, "--n disagrees with the point spec"};
  int n = spec.n;
  std::vector<int> ds;
  for (const std::string& s : detail::split(cfg.d_list, ',')) {
    int d = std::stoi(s);
    if (d < 0 || d > n - 1)
      throw CliError{kExitConfig, "d out of range for this point: " + s};
    if (cfg.uniform && d != 0 && d != n - 1)
      throw CliError{kExitConfig, "uniform estimates exist only for d=0 and d=n-1"};
    ds.push_back(d);
  }
  Rat hmax = parse_magnitude(cfg.hmax);
  if (hmax < 2) throw CliError{kExitConfig, "--hmax must be at least 2"};
  fs::path dir = resolve_out_dir(cfg.out);
  fs::create_directories(dir);

  IndependenceReport indep = independence_check(spec, n);
  SearchBudget budget;
  budget.h_sq_max = hmax * hmax;

  std::vector<Int> grid;
  for (Int x(16); Rat(x) <= hmax && x <= Int(65536); x *= 2) grid.push_back(x);
  if (cfg.uniform && grid.empty())
    throw CliError{kExitConfig, "--hmax too small for the uniform grid"};

  auto run_one = [&](int d) -> CampaignResult {
    auto refine_at = [spec](int bits) { return refine(spec, bits); };
    bool violated = indep.status == IndependenceStatus::violated;
    if (cfg.uniform)
      return estimate_uniform_campaign(refine_at, violated, d, grid, budget, cfg.precision);
    return estimate_omega_d_campaign(refine_at, violated, d, budget, cfg.precision);
  };

  std::vector<CampaignResult> results(ds.size());
  if (cfg.workers <= 1) {
    for (std::size_t i = 0; i < ds.size(); ++i) results[i] = run_one(ds[i]);
  } else {
    for (std::size_t base = 0; base < ds.size(); base += static_cast<std::size_t>(cfg.workers)) {
      std::vector<std::future<CampaignResult>> wave;
      for (std::size_t i = base;
           i < ds.size() && i < base + static_cast<std::size_t>(cfg.workers); ++i)
        wave.push_back(std::async(std::launch::async, run_one, ds[i]));
      for (std::size_t i = 0; i < wave.size(); ++i) results[base + i] = wave[i].get();
    }
  }

  std::vector<std::string> scatter_names;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CampaignResult& r = results[i];
    if (r.est.value.is_pos_inf() && !cfg.uniform) {
      bool noted = false;
      for (const std::string& s : r.est.notes)
        if (s.rfind("degenerate", 0) == 0) noted = true;
      if (!noted) r.est.notes.push_back("degenerate: point is rational");
    }
    std::string stem = (cfg.uniform ? "uniform_d" : "omega_d") + std::to_string(ds[i]);
    {
      std::ofstream os(dir / (stem + "_witness.csv"));
      write_witness_csv(os, r.est);
    }
    {
      std::ofstream os(dir / (stem + "_summary.json"));
      os << estimate_json(r, indep).dump(2) << "\n";
    }
    write_scatter(dir / (stem + "_scatter.csv"), r.records);
    scatter_names.push_back(stem + "_scatter.csv");
    std::cout << (cfg.uniform ? "uniform" : "omega") << " d=" << ds[i] << " value>="
              << ext_decimal(r.est.value, 12, RoundDir::down) << " ("
              << (r.est.direction == Direction::certified_lower ? "certified_lower"
                                                                : "heuristic")
              << ", witnesses " << r.est.witnesses.size() << ")\n";
  }
  write_gnuplot(dir / "scatter.gnuplot", scatter_names);
  return kExitOk;
}

struct LiftConfig {
  std::string point;
  std::string subspace;
  int n = 0;
  int d = 0;
  int precision = 192;
  int batch = 0;
  unsigned long seed = 1;
  std::string out;
};

RationalSubspace random_subspace(std::mt19937_64& rng, int n, int d) {
  std::uniform_int_distribution<int> entry(-9, 9);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Mat<Int> rows = make_mat<Int>(static_cast<std::size_t>(d + 1), static_cast<std::size_t>(n + 1));
    for (auto& row : rows)
      for (Int& v : row) v = entry(rng);
    try {
      RationalSubspace s = RationalSubspace::from_generators(n, rows);
      if (s.dim() == d) return s;
    } catch (const std::invalid_argument&) {
    }
  }
  throw CliError{kExitConfig, "failed to draw a random subspace"};
}

PointProxy random_proxy(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<long> num(1, (1L << 20) - 1);
  RatVec coords;
  coords.push_back(Rat(1));
  for (int i = 0; i < n; ++i) coords.push_back(make_rat(Int(num(rng)), Int(1L << 20)));
  return PointProxy(coords, Rat(0));
}

int cmd_liftup(const LiftConfig& cfg) {
  fs::path dir = resolve_out_dir(cfg.out);
  fs::create_directories(dir);
  if (cfg.batch > 0) {
    if (cfg.n < 2) throw CliError{kExitConfig, "--n must be at least 2 for batch lifts"};
    std::mt19937_64 rng(cfg.seed);
    int ok = 0;
    for (int i = 0; i < cfg.batch; ++i) {
      std::uniform_int_distribution<int> dpick(0, cfg.n - 2);
      int d = dpick(rng);
      RationalSubspace L = random_subspace(rng, cfg.n, d);
      PointProxy p = random_proxy(rng, cfg.n);
      LiftResult res = going_up_lift(p, L);
      if (res.cert.all_bounds() && res.lifted.dim() == d + 1) ++ok;
    }
    json j;
    j["instances"] = cfg.batch;
    j["verified"] = ok;
    std::ofstream os(dir / "liftup_batch.json");
    os << j.dump(2) << "\n";
    std::cout << "liftup batch: " << ok << "/" << cfg.batch << " certificates verified\n";
    return ok == cfg.batch ? kExitOk : kExitViolated;
  }

  PointSpec spec = resolve_point(cfg.point);
  int n = spec.n;
  if (cfg.n != 0 && cfg.n != n) throw CliError{kExitConfig, "--n disagrees with the point spec"};
  if (cfg.d > n - 2) throw CliError{kExitConfig, "no room to go up"};
  PointProxy p = refine(spec, cfg.precision);
  std::string serialized = cfg.subspace;
  if (serialized.empty()) {
    OmegaMeasurement m = estimate_omega_d(p, cfg.d);
    if (m.est.witnesses.empty())
      throw CliError{kExitConfig, "no witness subspace found to lift; pass --subspace"};
    serialized = m.est.witnesses.front().subspace;
  }
  RationalSubspace L = RationalSubspace::parse(serialized);
  if (L.dim() != cfg.d) throw CliError{kExitConfig, "--d disagrees with the subspace"};
  LiftResult res = going_up_lift(p, L);
  std::ofstream os(dir / "liftup_certificate.json");
  os << res.cert.to_json().dump(2) << "\n";
  std::cout << "lifted to dimension " << res.lifted.dim() << ", bounds "
            << (res.cert.all_bounds() ? "verified" : "FAILED") << "\n";
  return res.cert.all_bounds() ? kExitOk : kExitViolated;
}

struct CheckConfig {
  std::string tuple;
  int n = 0;
  std::string uhat0;
  std::string uhat_top;
  std::string kind = "exact";
  std::string out;
};

ExtReal parse_ext(const std::string& s) {
  if (s == "inf" || s == "+inf" || s == "oo") return ExtReal::infinity();
  return ExtReal(parse_magnitude(s));
}

int cmd_check(const CheckConfig& cfg) {
  std::vector<ExtReal> w;
  for (const std::string& s : detail::split(cfg.tuple, ',')) w.push_back(parse_ext(s));
  int n = cfg.n != 0 ? cfg.n : static_cast<int>(w.size());
  if (static_cast<int>(w.size()) != n)
    throw CliError{kExitConfig, "tuple length must equal n"};
  ValueKind kind;
  if (cfg.kind == "exact")
    kind = ValueKind::exact;
  else if (cfg.kind == "lower")
    kind = ValueKind::lower_bound;
  else
    throw CliError{kExitConfig, "--kind must be exact or lower"};

  ExponentTuple tuple{n, w};
  std::vector<CheckReport> reports = check_tuple(tuple, kind);
  if (!cfg.uhat0.empty() || !cfg.uhat_top.empty()) {
    if (cfg.uhat0.empty() || cfg.uhat_top.empty())
      throw CliError{kExitConfig, "supply both --uhat0 and --uhat-top or neither"};
    ExtReal u0 = parse_ext(cfg.uhat0);
    ExtReal utop = parse_ext(cfg.uhat_top);
    if (!u0.is_finite()) throw CliError{kExitConfig, "--uhat0 must be finite"};
    Theorem3Result t3 = theorem3_bounds(n, w.back(), u0, utop);
    MeasuredExponent w0{w.front(), kind};
    reports.push_back(detail::check_ge("uniform-pair lower", w0, t3.lower0, kind));
    reports.push_back(detail::check_le("uniform-pair upper", w0, t3.upper0, kind));
    for (const std::string& note : t3.warnings)
      std::cout << "note: " << note << "\n";
  }

  bool violated = false;
  json items = json::array();
  for (const CheckReport& r : reports) {
    if (r.status == CheckStatus::violated) violated = true;
    std::cout << r.name << ": " << to_string(r.status) << "  [target " << r.target.str()
              << ", threshold " << r.threshold.str() << "]"
              << (r.detail.empty() ? "" : "  " + r.detail) << "\n";
    json j;
    j["name"] = r.name;
    j["status"] = to_string(r.status);
    j["target"] = r.target.str();
    j["threshold"] = r.threshold.str();
    if (!r.detail.empty()) j["detail"] = r.detail;
    items.push_back(j);
  }
  if (!cfg.out.empty()) {
    fs::path dir = resolve_out_dir(cfg.out);
    fs::create_directories(dir);
    std::ofstream os(dir / "check_report.json");
    os << items.dump(2) << "\n";
  }
  return violated ? kExitViolated : kExitOk;
}

int cmd_distance(const std::string& point, const std::string& subspace, int precision) {
  PointSpec spec = resolve_point(point);
  PointProxy p = refine(spec, precision);
  RationalSubspace L = RationalSubspace::parse(subspace);
  if (L.ambient_n() != p.ambient_n())
    throw CliError{kExitConfig, "point and subspace dimensions disagree"};
  DistanceBound db = L.distance_sq(p);
  std::cout << "distance_sq = " << db.value.get_str() << " (" << dec(db.value) << ")\n";
  std::cout << "halo = " << db.halo.get_str() << " (" << dec(db.halo) << ")\n";
  return kExitOk;
}

int cmd_height(const std::string& subspace) {
  RationalSubspace L = RationalSubspace::parse(subspace);
  std::cout << "height_sq = " << L.height_sq().get_str() << "\n";
  std::cout << "height within ["
            << to_decimal(sqrt_interval(Rat(L.height_sq())).lo, 15, RoundDir::down) << ", "
            << to_decimal(sqrt_interval(Rat(L.height_sq())).hi, 15, RoundDir::up) << "]\n";
  std::cout << "grassmann = " << blade_string(L.plucker()) << "\n";
  return kExitOk;
}

int cmd_catalog() {
  for (const CatalogEntry& e : catalog()) {
    PointSpec spec = parse_point_spec(e.spec_text);
    IndependenceReport rep = independence_check(spec, spec.n);
    std::cout << e.name << " (n=" << spec.n << ", independence "
              << to_string(rep.status) << ")\n  " << e.summary << "\n  spec: " << e.spec_text
              << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact measurement of rational-subvariety approximation exponents"};
  app.require_subcommand(1);

  ExponentConfig ecfg;
  CLI::App* exp = app.add_subcommand("exponent", "measure approximation exponents");
  exp->add_option("--point", ecfg.point, "point spec or catalog:<name>")->required();
  exp->add_option("--n", ecfg.n, "ambient dimension (validated against the point spec)");
  exp->add_option("--d", ecfg.d_list, "comma list of dimensions");
  exp->add_option("--hmax", ecfg.hmax, "height budget");
  exp->add_option("--precision", ecfg.precision, "initial proxy precision bits");
  exp->add_option("--workers", ecfg.workers, "parallel campaigns");
  exp->add_flag("--uniform", ecfg.uniform, "finite-height uniform estimates instead");
  exp->add_option("--out", ecfg.out, "output directory");

  LiftConfig lcfg;
  CLI::App* lift = app.add_subcommand("liftup", "run the going-up construction");
  lift->add_option("--point", lcfg.point, "point spec or catalog:<name>");
  lift->add_option("--subspace", lcfg.subspace, "serialized subspace to lift");
  lift->add_option("--n", lcfg.n, "ambient dimension");
  lift->add_option("--d", lcfg.d, "input dimension");
  lift->add_option("--precision", lcfg.precision, "proxy precision bits");
  lift->add_option("--batch", lcfg.batch, "random instance count");
  lift->add_option("--seed", lcfg.seed, "random seed");
  lift->add_option("--out", lcfg.out, "output directory");

  CheckConfig ccfg;
  CLI::App* chk = app.add_subcommand("check", "evaluate transfer predicates on a tuple");
  chk->add_option("--tuple", ccfg.tuple, "comma list w_0..w_{n-1}; inf allowed")->required();
  chk->add_option("--n", ccfg.n, "ambient dimension");
  chk->add_option("--uhat0", ccfg.uhat0, "uniform exponent at d=0");
  chk->add_option("--uhat-top", ccfg.uhat_top, "uniform exponent at d=n-1");
  chk->add_option("--kind", ccfg.kind, "exact or lower");
  chk->add_option("--out", ccfg.out, "output directory");

  std::string dpoint, dsub;
  int dprec = 192;
  CLI::App* dist = app.add_subcommand("distance", "projective distance point to subspace");
  dist->add_option("--point", dpoint, "point spec or catalog:<name>")->required();
  dist->add_option("--subspace", dsub, "serialized subspace")->required();
  dist->add_option("--precision", dprec, "proxy precision bits");

  std::string hsub;
  CLI::App* hgt = app.add_subcommand("height", "height of a rational subspace");
  hgt->add_option("--subspace", hsub, "serialized subspace")->required();

  app.add_subcommand("catalog", "list built-in points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (exp->parsed()) return cmd_exponent(ecfg);
    if (lift->parsed()) return cmd_liftup(lcfg);
    if (chk->parsed()) return cmd_check(ccfg);
    if (dist->parsed()) return cmd_distance(dpoint, dsub, dprec);
    if (hgt->parsed()) return cmd_height(hsub);
    return cmd_catalog();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const budget_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal: " << e.what() << "\n";
    return kExitConfig;
  }
}
