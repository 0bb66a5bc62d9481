#include "thetanorm/scan.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace thetanorm {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += "\"\"";
    else r += c;
  }
  r += "\"";
  return r;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

ordered_json int_matrix_json(const Eigen::MatrixXi& X) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < X.cols(); ++j) row.push_back(X(i, j));
    rows.push_back(row);
  }
  return rows;
}

ordered_json double_matrix_json(const Eigen::MatrixXd& M) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXi parse_int_matrix(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty())
    throw std::invalid_argument("config: " + key + " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  Eigen::MatrixXi X(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(v[i].size()) != cols)
      throw std::invalid_argument("config: ragged rows in " + key);
    for (Eigen::Index j = 0; j < cols; ++j) X(i, j) = v[i][j].get<int>();
  }
  return X;
}

Eigen::MatrixXd parse_double_matrix(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty())
    throw std::invalid_argument("config: " + key + " must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(v[i].size()) != cols)
      throw std::invalid_argument("config: ragged rows in " + key);
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = v[i][j].get<double>();
  }
  return M;
}

}  // namespace

PeriodPoint RunConfig::make_point() const {
  if (!preset.empty()) return PeriodPoint::preset(preset);
  if (X) return PeriodPoint::from_split(*X, *k);
  if (Z) return PeriodPoint::from_dense(*Z);
  if (seed) return PeriodPoint::random(g, *seed);
  throw std::invalid_argument("config: no period source given");
}

void RunConfig::validate() const {
  if (g < 1 || g > 8) throw std::invalid_argument("config: g must be in [1,8]");
  int sources = (preset.empty() ? 0 : 1) + (X ? 1 : 0) + (Z ? 1 : 0) + (seed ? 1 : 0);
  if (sources > 1)
    throw std::invalid_argument("config: more than one period source (preset, X/k, Z, seed)");
  if (X.has_value() != k.has_value())
    throw std::invalid_argument("config: X and k must be given together");
  if (!preset.empty() && PeriodPoint::preset(preset).g() != g)
    throw std::invalid_argument("config: preset " + preset + " does not match g=" +
                                std::to_string(g));
  if (X && (X->rows() != g || X->cols() != g))
    throw std::invalid_argument("config: X must be g x g");
  if (Z && (Z->rows() != g || Z->cols() != g))
    throw std::invalid_argument("config: Z must be g x g");
  if (!(series_tol > 0 && series_tol < 1))
    throw std::invalid_argument("config: series_tol must lie in (0,1)");
  tols.validate();
  if (min_h0 >= 0 && max_h0 >= 0 && min_h0 > max_h0)
    throw std::invalid_argument("config: min_h0 exceeds max_h0");
  if (format != "json" && format != "csv")
    throw std::invalid_argument("config: format must be json or csv");
  if (jobs < 1 || jobs > 256) throw std::invalid_argument("config: jobs must be in [1,256]");
  if (force_numeric && !has_point())
    throw std::invalid_argument("config: force_numeric requires a period source");
  if (type && type->g() != g)
    throw std::invalid_argument("config: type " + type->str() + " does not match g=" +
                                std::to_string(g));
}

CheckResult run_check(const RunConfig& cfg, const PolarizationType& D) {
  cfg.validate();
  if (D.g() != cfg.g)
    throw std::invalid_argument("check: type " + D.str() + " does not match g=" +
                                std::to_string(cfg.g));
  auto t0 = std::chrono::steady_clock::now();
  CheckResult res;
  if (cfg.has_point()) {
    ThetaEvaluator ev(cfg.make_point(), cfg.series_tol);
    res.radii = RadiiInfo{ev.fast() ? "fast" : "general", ev.budget().radius};
    res.verdict = verdict(D, &ev, cfg.tols, cfg.force_numeric);
  } else {
    res.verdict = verdict(D, nullptr, cfg.tols, cfg.force_numeric);
  }
  res.wall_ms = ms_since(t0);
  return res;
}

ScanResult run_scan(const RunConfig& cfg) {
  cfg.validate();
  ScanResult out;
  out.config = cfg;
  out.config.min_h0 = cfg.effective_min_h0();
  out.config.max_h0 = cfg.effective_max_h0();
  if (out.config.min_h0 > out.config.max_h0)
    throw std::invalid_argument("config: empty h0 range for g=" + std::to_string(cfg.g));

  auto types = enumerate_types(cfg.g, out.config.min_h0, out.config.max_h0);
  out.rows.resize(types.size());
  if (cfg.has_point()) {
    ThetaEvaluator probe(cfg.make_point(), cfg.series_tol);
    out.radii = RadiiInfo{probe.fast() ? "fast" : "general", probe.budget().radius};
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    std::optional<ThetaEvaluator> ev;
    if (cfg.has_point()) ev.emplace(cfg.make_point(), cfg.series_tol);
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= types.size()) break;
      auto t0 = std::chrono::steady_clock::now();
      try {
        out.rows[i].verdict = verdict(types[i], ev ? &*ev : nullptr, cfg.tols,
                                      cfg.force_numeric);
      } catch (const std::exception& e) {
        Verdict v;
        v.type = types[i];
        v.conclusion = Conclusion::indeterminate;
        v.notes.push_back(std::string("error: ") + e.what());
        out.rows[i].verdict = std::move(v);
      }
      out.rows[i].wall_ms = ms_since(t0);
    }
  };

  const int jobs = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), types.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::vector<std::string> exceptional_set(const ScanResult& r) {
  std::vector<std::string> v;
  for (const auto& row : r.rows) {
    Conclusion c = row.verdict.conclusion;
    if (c == Conclusion::never_normally_generated ||
        c == Conclusion::not_two_normal_at_point)
      v.push_back(row.verdict.type.str());
  }
  return v;
}

std::vector<std::string> ambiguous_set(const ScanResult& r) {
  std::vector<std::string> v;
  for (const auto& row : r.rows)
    if (row.verdict.conclusion == Conclusion::indeterminate)
      v.push_back(row.verdict.type.str());
  return v;
}

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["g"] = cfg.g;
  if (!cfg.preset.empty()) j["preset"] = cfg.preset;
  if (cfg.seed) j["seed"] = *cfg.seed;
  if (cfg.X) {
    j["X"] = int_matrix_json(*cfg.X);
    ordered_json kj;
    kj["re"] = cfg.k->real();
    kj["im"] = cfg.k->imag();
    j["k"] = kj;
  }
  if (cfg.Z) {
    ordered_json zj;
    zj["re"] = double_matrix_json(cfg.Z->real());
    zj["im"] = double_matrix_json(cfg.Z->imag());
    j["Z"] = zj;
  }
  j["series_tol"] = cfg.series_tol;
  j["rank_tol"] = cfg.tols.rank_tol;
  j["accept"] = cfg.tols.accept;
  j["reject"] = cfg.tols.reject;
  j["min_h0"] = cfg.effective_min_h0();
  j["max_h0"] = cfg.effective_max_h0();
  j["force_numeric"] = cfg.force_numeric;
  return j;
}

RunConfig parse_run_config(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  RunConfig cfg;
  bool saw_g = false;
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "g") {
        cfg.g = val.get<int>();
        saw_g = true;
      } else if (key == "preset") {
        cfg.preset = val.get<std::string>();
      } else if (key == "X") {
        cfg.X = parse_int_matrix(val, "X");
      } else if (key == "k") {
        cfg.k = std::complex<double>(val.at("re").get<double>(), val.at("im").get<double>());
      } else if (key == "Z") {
        Eigen::MatrixXd re = parse_double_matrix(val.at("re"), "Z.re");
        Eigen::MatrixXd im = parse_double_matrix(val.at("im"), "Z.im");
        if (re.rows() != im.rows() || re.cols() != im.cols())
          throw std::invalid_argument("config: Z.re and Z.im differ in shape");
        Eigen::MatrixXcd Z(re.rows(), re.cols());
        Z.real() = re;
        Z.imag() = im;
        cfg.Z = Z;
      } else if (key == "seed") {
        cfg.seed = val.get<std::uint64_t>();
      } else if (key == "series_tol") {
        cfg.series_tol = val.get<double>();
      } else if (key == "rank_tol") {
        cfg.tols.rank_tol = val.get<double>();
      } else if (key == "accept") {
        cfg.tols.accept = val.get<double>();
      } else if (key == "reject") {
        cfg.tols.reject = val.get<double>();
      } else if (key == "min_h0") {
        cfg.min_h0 = val.get<long long>();
      } else if (key == "max_h0") {
        cfg.max_h0 = val.get<long long>();
      } else if (key == "format") {
        cfg.format = val.get<std::string>();
      } else if (key == "out") {
        cfg.out = val.get<std::string>();
      } else if (key == "force_numeric") {
        cfg.force_numeric = val.get<bool>();
      } else if (key == "jobs") {
        cfg.jobs = val.get<int>();
      } else if (key == "type") {
        cfg.type = PolarizationType::parse(val.get<std::string>());
      } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!saw_g) {
    if (cfg.preset.empty()) throw std::invalid_argument("config: g is required");
    cfg.g = PeriodPoint::preset(cfg.preset).g();
  }
  return cfg;
}

nlohmann::ordered_json report_json(const Verdict& v, const RunConfig& cfg,
                                   const std::optional<RadiiInfo>& radii) {
  ordered_json j;
  j["type"] = v.type.str();
  j["h0"] = v.type.h0();
  ordered_json pred;
  pred["necessary"] = necessary_condition(v.type);
  pred["fail1"] = fail1_predicate(v.type);
  pred["fail2"] = fail2_predicate(v.type);
  pred["iyer"] = iyer_bound(v.type);
  j["predicates"] = pred;
  ordered_json numeric = ordered_json::array();
  for (const auto& rep : v.reports) {
    ordered_json r;
    r["w"] = rep.w.str();
    r["sigma"] = rep.sigma;
    r["rank"] = rep.rank;
    r["gap"] = rep.gap;
    r["status"] = to_string(rep.status);
    numeric.push_back(r);
  }
  j["numeric"] = numeric;
  j["verdict"] = to_string(v.conclusion);
  j["reasons"] = v.reasons;
  j["notes"] = v.notes;
  ordered_json prov;
  if (!cfg.preset.empty()) prov["preset"] = cfg.preset;
  if (cfg.seed) prov["seed"] = *cfg.seed;
  if (cfg.X) {
    prov["X"] = int_matrix_json(*cfg.X);
    ordered_json kj;
    kj["re"] = cfg.k->real();
    kj["im"] = cfg.k->imag();
    prov["k"] = kj;
  }
  if (cfg.Z) {
    ordered_json zj;
    zj["re"] = double_matrix_json(cfg.Z->real());
    zj["im"] = double_matrix_json(cfg.Z->imag());
    prov["Z"] = zj;
  }
  ordered_json tj;
  tj["series_tol"] = cfg.series_tol;
  tj["rank_tol"] = cfg.tols.rank_tol;
  tj["accept"] = cfg.tols.accept;
  tj["reject"] = cfg.tols.reject;
  prov["tolerances"] = tj;
  if (radii) {
    ordered_json rj;
    rj["path"] = radii->path;
    rj["radius"] = radii->radius;
    prov["radii"] = rj;
  }
  j["provenance"] = prov;
  return j;
}

nlohmann::ordered_json scan_json(const ScanResult& r) {
  ordered_json j;
  j["config"] = config_json(r.config);
  ordered_json rows = ordered_json::array();
  for (const auto& row : r.rows) rows.push_back(report_json(row.verdict, r.config, r.radii));
  j["rows"] = rows;
  ordered_json s;
  s["count"] = r.rows.size();
  s["exceptional"] = exceptional_set(r);
  s["ambiguous"] = ambiguous_set(r);
  j["summary"] = s;
  return j;
}

std::string csv_header() {
  return "type,h0,necessary,fail1,fail2,iyer,ranks,gaps,statuses,verdict,notes";
}

std::string csv_row(const Verdict& v) {
  auto join = [](const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += sep;
      s += parts[i];
    }
    return s;
  };
  std::vector<std::string> ranks, gaps, statuses;
  for (const auto& rep : v.reports) {
    ranks.push_back(std::to_string(rep.rank));
    gaps.push_back(fmt17(rep.gap));
    statuses.push_back(to_string(rep.status));
  }
  std::string bools[4] = {
      necessary_condition(v.type) ? "true" : "false",
      fail1_predicate(v.type) ? "true" : "false",
      fail2_predicate(v.type) ? "true" : "false",
      iyer_bound(v.type) ? "true" : "false",
  };
  std::string row = csv_escape(v.type.str());
  row += "," + std::to_string(v.type.h0());
  for (const auto& b : bools) row += "," + b;
  row += "," + csv_escape(join(ranks, ";"));
  row += "," + csv_escape(join(gaps, ";"));
  row += "," + csv_escape(join(statuses, ";"));
  row += "," + to_string(v.conclusion);
  row += "," + csv_escape(join(v.notes, "; "));
  return row;
}

std::string scan_csv(const ScanResult& r) {
  std::string s = csv_header();
  s += "\n";
  for (const auto& row : r.rows) {
    s += csv_row(row.verdict);
    s += "\n";
  }
  return s;
}

nlohmann::ordered_json invariants_json(const std::vector<InvariantResult>& rs) {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (const auto& r : rs) {
    ordered_json e;
    e["name"] = r.name;
    e["samples"] = r.samples;
    e["max_residual"] = r.max_residual;
    e["threshold"] = r.threshold;
    e["pass"] = r.pass;
    arr.push_back(e);
  }
  j["invariants"] = arr;
  j["pass"] = invariants_pass(rs);
  return j;
}

}  // namespace thetanorm
