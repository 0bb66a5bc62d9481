#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "thetanorm/invariants.hpp"
#include "thetanorm/scan.hpp"
#include "thetanorm/theta.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;
using namespace thetanorm;

constexpr int kExitOk = 0;
constexpr int kExitAmbiguous = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitUsage = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << content;
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty())
    std::cout << payload;
  else
    write_file(out_path, payload);
}

std::string json_payload(const ordered_json& j) { return j.dump(2) + "\n"; }

// flag handles shared by the subcommands; values land in RunConfig afterwards
struct ConfigFlags {
  std::string config_path;
  int g = 0;
  std::string preset;
  std::string x_file;
  std::string k_str;
  std::uint64_t seed = 0;
  double series_tol = 0, rank_tol = 0, accept = 0, reject = 0;
  long long min_h0 = 0, max_h0 = 0;
  std::string format;
  std::string out;
  bool force_numeric = false;
  int jobs = 0;

  CLI::Option *o_config = nullptr, *o_g = nullptr, *o_preset = nullptr, *o_xfile = nullptr,
              *o_k = nullptr, *o_seed = nullptr, *o_stol = nullptr, *o_rtol = nullptr,
              *o_accept = nullptr, *o_reject = nullptr, *o_min = nullptr, *o_max = nullptr,
              *o_format = nullptr, *o_out = nullptr, *o_force = nullptr, *o_jobs = nullptr;

  void attach(CLI::App* cmd, bool with_bounds, bool with_run_shape) {
    o_config = cmd->add_option("--config", config_path, "JSON config file; flags override it");
    o_g = cmd->add_option("--g", g, "genus (type length)");
    o_preset = cmd->add_option("--preset", preset, "named period point: paper-g3 or paper-g4");
    o_xfile = cmd->add_option("--X-file", x_file, "JSON file with the integer matrix X");
    o_k = cmd->add_option("--k", k_str, "diagonal shift k as re,im (with --X-file)");
    o_seed = cmd->add_option("--seed", seed, "random period point seed");
    o_stol = cmd->add_option("--series-tol", series_tol, "theta series truncation budget");
    o_rtol = cmd->add_option("--rank-tol", rank_tol, "relative rank cutoff tau_rank");
    o_accept = cmd->add_option("--accept", accept, "full-rank gap acceptance threshold");
    o_reject = cmd->add_option("--reject", reject, "deficient gap rejection threshold");
    if (with_bounds) {
      o_min = cmd->add_option("--min-h0", min_h0, "lower h0 bound (default 2^(g+1)-1)");
      o_max = cmd->add_option("--max-h0", max_h0, "upper h0 bound (default 2^g*g!)");
    }
    if (with_run_shape) {
      o_format = cmd->add_option("--format", format, "output format: json or csv")
                     ->check(CLI::IsMember({"json", "csv"}));
      o_force = cmd->add_flag("--force-numeric", force_numeric,
                              "run the rank certificate even when a predicate decides");
      o_jobs = cmd->add_option("--jobs", jobs, "worker threads for scan");
    }
    o_out = cmd->add_option("--out", out, "write the report to this path instead of stdout");
  }

  RunConfig resolve() const {
    RunConfig cfg;
    bool have_cfg_file = o_config && o_config->count();
    if (have_cfg_file) cfg = parse_run_config(json::parse(read_file(config_path)));

    bool src_flag = (o_preset && o_preset->count()) || (o_xfile && o_xfile->count()) ||
                    (o_seed && o_seed->count());
    if (src_flag) {
      cfg.preset.clear();
      cfg.X.reset();
      cfg.k.reset();
      cfg.Z.reset();
      cfg.seed.reset();
    }
    if (o_preset && o_preset->count()) cfg.preset = preset;
    if (o_xfile && o_xfile->count()) cfg.X = parse_x_file(x_file);
    if (o_k && o_k->count()) cfg.k = parse_k(k_str);
    if (o_seed && o_seed->count()) cfg.seed = seed;

    if (o_g && o_g->count()) {
      cfg.g = g;
    } else if (!have_cfg_file && !cfg.preset.empty()) {
      cfg.g = PeriodPoint::preset(cfg.preset).g();
    }
    if (o_stol && o_stol->count()) cfg.series_tol = series_tol;
    if (o_rtol && o_rtol->count()) cfg.tols.rank_tol = rank_tol;
    if (o_accept && o_accept->count()) cfg.tols.accept = accept;
    if (o_reject && o_reject->count()) cfg.tols.reject = reject;
    if (o_min && o_min->count()) cfg.min_h0 = min_h0;
    if (o_max && o_max->count()) cfg.max_h0 = max_h0;
    if (o_format && o_format->count()) cfg.format = format;
    if (o_out && o_out->count()) cfg.out = out;
    if (o_force && o_force->count()) cfg.force_numeric = true;
    if (o_jobs && o_jobs->count()) cfg.jobs = jobs;
    return cfg;
  }

  static Eigen::MatrixXi parse_x_file(const std::string& path) {
    json j = json::parse(read_file(path));
    if (j.is_object() && j.contains("X")) j = j["X"];
    if (!j.is_array() || j.empty() || !j[0].is_array())
      throw std::invalid_argument("X file must hold a JSON array of integer rows");
    Eigen::MatrixXi X(j.size(), j[0].size());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
      if (static_cast<Eigen::Index>(j[i].size()) != X.cols())
        throw std::invalid_argument("X file has ragged rows");
      for (Eigen::Index c = 0; c < X.cols(); ++c) X(i, c) = j[i][c].get<int>();
    }
    return X;
  }

  static std::complex<double> parse_k(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--k expects re,im");
    try {
      return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
      throw std::invalid_argument("--k expects re,im");
    }
  }
};

int cmd_check(const ConfigFlags& flags, const std::string& type_str) {
  RunConfig cfg = flags.resolve();
  PolarizationType D =
      !type_str.empty() ? PolarizationType::parse(type_str)
      : cfg.type         ? *cfg.type
                         : throw std::invalid_argument("check: --type is required");
  if (!(flags.o_g && flags.o_g->count()) && flags.config_path.empty() && cfg.preset.empty())
    cfg.g = D.g();
  CheckResult res = run_check(cfg, D);
  std::string payload = cfg.format == "csv"
                            ? csv_header() + "\n" + csv_row(res.verdict) + "\n"
                            : json_payload(report_json(res.verdict, cfg, res.radii));
  emit(cfg.out, payload);
  return res.verdict.conclusion == Conclusion::indeterminate ? kExitAmbiguous : kExitOk;
}

int cmd_scan(const ConfigFlags& flags) {
  RunConfig cfg = flags.resolve();
  ScanResult res = run_scan(cfg);
  std::string payload =
      cfg.format == "csv" ? scan_csv(res) : json_payload(scan_json(res));
  emit(cfg.out, payload);
  return ambiguous_set(res).empty() ? kExitOk : kExitAmbiguous;
}

int cmd_verify_invariants(const ConfigFlags& flags) {
  RunConfig cfg = flags.resolve();
  InvariantOptions opt;
  if (flags.o_g && flags.o_g->count()) opt.gs = {cfg.g};
  if (flags.o_seed && flags.o_seed->count()) opt.seeds = {*cfg.seed};
  if (flags.o_stol && flags.o_stol->count()) opt.tol = cfg.series_tol;
  opt.tols = cfg.tols;

  auto results = run_invariant_suites(opt);
  std::string payload = json_payload(invariants_json(results));
  if (!cfg.out.empty()) write_file(cfg.out, payload);
  char line[256];
  for (const auto& r : results) {
    std::snprintf(line, sizeof(line), "%-44s samples=%-4d max_residual=%.3e budget=%.3e %s",
                  r.name.c_str(), r.samples, r.max_residual, r.threshold,
                  r.pass ? "ok" : "FAIL");
    std::cout << line << "\n";
  }
  bool ok = invariants_pass(results);
  std::cout << (ok ? "all invariants hold" : "invariant failures present") << "\n";
  return ok ? kExitOk : kExitInvariant;
}

PolarizationType conjecture_type(int which, int g) {
  std::vector<int> d;
  if (which == 1) {
    // (1,3,...,3,6)
    d.assign(g, 3);
    d.front() = 1;
    d.back() = g >= 2 ? 6 : 1;
  }
  return PolarizationType::of(d);
}

int cmd_conjecture(const ConfigFlags& flags, int which, std::vector<int> g_list) {
  if (g_list.empty() && flags.o_g && flags.o_g->count()) g_list = {flags.g};
  if (g_list.empty()) g_list = {3, 4};
  ordered_json runs = ordered_json::array();
  bool ambiguous = false;

  for (int g : g_list) {
    if (g < 2 || g > 5)
      throw std::invalid_argument("conjecture: --g values must lie in [2,5]");
    RunConfig cfg = flags.resolve();
    cfg.g = g;
    if (!cfg.has_point()) {
      if (g == 3) cfg.preset = "paper-g3";
      else if (g == 4) cfg.preset = "paper-g4";
      else cfg.seed = 11;
    }
    if (!cfg.preset.empty() && PeriodPoint::preset(cfg.preset).g() != g)
      throw std::invalid_argument("conjecture: preset " + cfg.preset +
                                  " does not apply to g=" + std::to_string(g));
    cfg.force_numeric = true;

    std::vector<PolarizationType> targets;
    if (which == 1) {
      targets.push_back(conjecture_type(1, g));
    } else {
      long long lo = two_pow(g + 1) - 1;
      long long hi = cfg.max_h0 >= 0 ? cfg.max_h0 : two_pow(g + 1) + 6;
      for (long long d = lo; d <= hi; ++d) {
        std::vector<int> t(g, 1);
        t.back() = static_cast<int>(d);
        targets.push_back(PolarizationType::of(t));
      }
    }

    ordered_json reports = ordered_json::array();
    for (const auto& D : targets) {
      RunConfig one = cfg;
      one.min_h0 = -1;
      one.max_h0 = -1;
      CheckResult res = run_check(one, D);
      ambiguous = ambiguous || res.verdict.conclusion == Conclusion::indeterminate;
      reports.push_back(report_json(res.verdict, one, res.radii));
    }
    ordered_json run;
    run["g"] = g;
    run["reports"] = reports;
    runs.push_back(run);
  }

  ordered_json out;
  out["which"] = which;
  out["note"] = "evidence only; the conjecture itself is not asserted";
  out["runs"] = runs;
  emit(flags.o_out && flags.o_out->count() ? flags.out : "", json_payload(out));
  return ambiguous ? kExitAmbiguous : kExitOk;
}

int cmd_theta(const ConfigFlags& flags, const std::string& c1_str) {
  RunConfig cfg = flags.resolve();
  RationalVector c1 = parse_rational_vector(c1_str);
  if (!(flags.o_g && flags.o_g->count()) && flags.config_path.empty() && cfg.preset.empty())
    cfg.g = static_cast<int>(c1.size());
  if (static_cast<int>(c1.size()) != cfg.g)
    throw std::invalid_argument("theta: c1 length does not match g");
  cfg.validate();
  if (!cfg.has_point()) throw std::invalid_argument("theta: a period source is required");

  ThetaEvaluator ev(cfg.make_point(), cfg.series_tol);
  std::complex<double> value = ev.theta_null(c1);
  ordered_json j;
  j["c1"] = c1.str();
  ordered_json vj;
  vj["re"] = value.real();
  vj["im"] = value.imag();
  j["value"] = vj;
  j["radius"] = ev.budget().radius;
  j["path"] = ev.fast() ? "fast" : "general";
  j["series_tol"] = cfg.series_tol;
  emit(cfg.out, json_payload(j));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-normality certificates for polarized abelian varieties"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "verdict pipeline for one type");
  ConfigFlags check_flags;
  std::string check_type;
  check_flags.attach(check, false, true);
  check->add_option("--type", check_type, "polarization type, e.g. 1,2,8");

  auto* scan = app.add_subcommand("scan", "verdicts for every type in an h0 range");
  ConfigFlags scan_flags;
  scan_flags.attach(scan, true, true);

  auto* verify = app.add_subcommand("verify-invariants", "run the identity and witness suites");
  ConfigFlags verify_flags;
  verify_flags.attach(verify, false, false);

  auto* conj = app.add_subcommand("conjecture", "collect numeric evidence for the conjectures");
  ConfigFlags conj_flags;
  int conj_which = 0;
  std::vector<int> conj_gs;
  conj_flags.attach(conj, true, false);
  conj->add_option("--which", conj_which, "conjecture number")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  conj->add_option("--g-list", conj_gs, "genus values to sample (default 3 4)");

  auto* theta = app.add_subcommand("theta", "evaluate one theta constant");
  ConfigFlags theta_flags;
  std::string theta_c1;
  theta_flags.attach(theta, false, false);
  theta->add_option("--c1", theta_c1, "characteristic vector, e.g. 1/2,0,1/3")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_flags, check_type);
    if (scan->parsed()) return cmd_scan(scan_flags);
    if (verify->parsed()) return cmd_verify_invariants(verify_flags);
    if (conj->parsed()) return cmd_conjecture(conj_flags, conj_which, conj_gs);
    if (theta->parsed()) return cmd_theta(theta_flags, theta_c1);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
