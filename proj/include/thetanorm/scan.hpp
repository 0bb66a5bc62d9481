#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetanorm/invariants.hpp"
#include "thetanorm/normality.hpp"
#include "thetanorm/period.hpp"
#include "thetanorm/polarization.hpp"
#include "thetanorm/rank.hpp"

namespace thetanorm {

// One run's inputs. At most one period source (preset, X+k, Z, seed); with
// none set, only predicate-decided verdicts are possible. h0 bounds of -1
// resolve to the defaults [2^{g+1}-1, 2^g g!].
struct RunConfig {
  int g = 3;
  std::string preset;
  std::optional<Eigen::MatrixXi> X;
  std::optional<std::complex<double>> k;
  std::optional<Eigen::MatrixXcd> Z;
  std::optional<std::uint64_t> seed;
  double series_tol = 1e-12;
  RankTolerances tols;
  long long min_h0 = -1;
  long long max_h0 = -1;
  std::string format = "json";
  std::string out;
  bool force_numeric = false;
  int jobs = 1;
  std::optional<PolarizationType> type;  // check target; ignored by scan

  bool has_point() const {
    return !preset.empty() || X.has_value() || Z.has_value() || seed.has_value();
  }
  long long effective_min_h0() const { return min_h0 >= 0 ? min_h0 : two_pow(g + 1) - 1; }
  long long effective_max_h0() const { return max_h0 >= 0 ? max_h0 : two_pow(g) * factorial(g); }
  PeriodPoint make_point() const;  // requires has_point()
  void validate() const;
};

// series path provenance of the evaluator used for a run
struct RadiiInfo {
  std::string path;  // "fast" | "general"
  int radius = 0;
};

struct ScanRow {
  Verdict verdict;
  double wall_ms = 0;  // measured, never serialized: reports stay byte-deterministic
};

struct CheckResult {
  Verdict verdict;
  std::optional<RadiiInfo> radii;
  double wall_ms = 0;
};

struct ScanResult {
  RunConfig config;
  std::vector<ScanRow> rows;  // sorted by (h0, lexicographic type)
  std::optional<RadiiInfo> radii;
};

CheckResult run_check(const RunConfig& cfg, const PolarizationType& D);
ScanResult run_scan(const RunConfig& cfg);

// exceptional set: types whose verdict is neither two_normal_at_point nor
// normally_generated_generic_evidence and that are not indeterminate
std::vector<std::string> exceptional_set(const ScanResult& r);
std::vector<std::string> ambiguous_set(const ScanResult& r);

nlohmann::ordered_json config_json(const RunConfig& cfg);
RunConfig parse_run_config(const nlohmann::json& j);

nlohmann::ordered_json report_json(const Verdict& v, const RunConfig& cfg,
                                   const std::optional<RadiiInfo>& radii);
nlohmann::ordered_json scan_json(const ScanResult& r);

std::string csv_header();
std::string csv_row(const Verdict& v);
std::string scan_csv(const ScanResult& r);

nlohmann::ordered_json invariants_json(const std::vector<InvariantResult>& rs);

}  // namespace thetanorm
