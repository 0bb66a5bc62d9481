#include "thetanorm/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "thetanorm/normality.hpp"
#include "thetanorm/period.hpp"
#include "thetanorm/polarization.hpp"
#include "thetanorm/structural.hpp"
#include "thetanorm/theta.hpp"

namespace thetanorm {

namespace {

constexpr double kAnchor = 1.086434811213308;  // theta((i), 0)

Rational rand_rational(std::mt19937_64& rng) {
  static const int dens[] = {1, 2, 3, 4, 5, 6, 8, 12};
  std::uniform_int_distribution<int> pick(0, 7);
  long long den = dens[pick(rng)];
  std::uniform_int_distribution<long long> num(-2 * den, 2 * den);
  return {num(rng), den};
}

RationalVector rand_vector(int g, std::mt19937_64& rng) {
  RationalVector c(g);
  for (int i = 0; i < g; ++i) c[i] = rand_rational(rng);
  return c;
}

Eigen::VectorXi rand_int_vector(int g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-1, 1);
  Eigen::VectorXi m(g);
  bool nonzero = false;
  for (int i = 0; i < g; ++i) {
    m(i) = pick(rng);
    nonzero = nonzero || m(i) != 0;
  }
  if (!nonzero) m(0) = 1;
  return m;
}

// random symmetric integer matrix with even diagonal
Eigen::MatrixXi rand_even_symmetric(int g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> off(-2, 2);
  std::uniform_int_distribution<int> dia(-1, 1);
  Eigen::MatrixXi X(g, g);
  for (int i = 0; i < g; ++i) {
    X(i, i) = 2 * dia(rng);
    for (int j = i + 1; j < g; ++j) X(i, j) = X(j, i) = off(rng);
  }
  return X;
}

Eigen::VectorXcd to_cvec(const std::vector<double>& v) {
  Eigen::VectorXcd r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i];
  return r;
}

struct Row {
  double max_residual = 0;
  int samples = 0;
  void feed(double r) {
    max_residual = std::max(max_residual, r);
    ++samples;
  }
};

void emit(std::vector<InvariantResult>& out, const std::string& name, const Row& row,
          double threshold, bool extra_ok = true) {
  out.push_back({name, row.samples, row.max_residual,
                 threshold, extra_ok && row.max_residual <= threshold});
}

void theta_identity_suite(int g, const InvariantOptions& opt,
                          std::vector<InvariantResult>& out) {
  const int per_seed = static_cast<int>(
      (opt.min_samples_per_g + opt.seeds.size() - 1) / opt.seeds.size());
  Row parity, periodicity, reduction, transform, nullsym, conv, evcons;

  for (std::uint64_t seed : opt.seeds) {
    PeriodPoint P = PeriodPoint::random(g, seed);
    SeriesBudget budget = truncation_radius(P.imZ(), opt.tol);
    SeriesBudget bumped = budget;
    bumped.radius += 2;
    ThetaEvaluator ev(P, opt.tol);
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(g));

    for (int s = 0; s < per_seed; ++s) {
      RationalVector c = rand_vector(g, rng).reduced_half();
      Eigen::VectorXcd v = P.Z() * to_cvec(c.to_doubles());
      std::complex<double> base = siegel_theta(P, v, budget);

      parity.feed(std::abs(siegel_theta(P, -v, budget) - base));

      Eigen::VectorXi m = rand_int_vector(g, rng);
      periodicity.feed(std::abs(
          siegel_theta(P, v + m.cast<std::complex<double>>(), budget) - base));

      RationalVector mshift(g);
      for (int i = 0; i < g; ++i) mshift[i] = Rational(m(i));
      RationalVector zero(g);
      reduction.feed(std::abs(
          theta_char(c + mshift, zero, Eigen::VectorXcd::Zero(g), P, bumped) -
          theta_null(c, P, budget)));

      Eigen::MatrixXi X = rand_even_symmetric(g, rng);
      PeriodPoint shifted =
          PeriodPoint::from_dense(P.Z() + X.cast<double>().cast<std::complex<double>>());
      transform.feed(std::abs(siegel_theta(shifted, v, budget) - base));

      std::complex<double> tn = theta_null(c, P, budget);
      nullsym.feed(std::abs(theta_null(-c, P, budget) - tn));
      conv.feed(std::abs(theta_null(c, P, bumped) - tn));
      evcons.feed(std::abs(ev.theta_null(c) - tn));
    }
  }

  const double bar = 10.0 * opt.tol;
  const std::string tag = "[g=" + std::to_string(g) + "]";
  emit(out, "parity" + tag, parity, bar);
  emit(out, "periodicity" + tag, periodicity, bar);
  emit(out, "char_reduction" + tag, reduction, bar);
  emit(out, "transformation" + tag, transform, bar);
  emit(out, "null_symmetry" + tag, nullsym, bar);
  emit(out, "convergence" + tag, conv, bar);
  emit(out, "evaluator_consistency" + tag, evcons, bar);
}

void fast_path_suite(int g, const InvariantOptions& opt,
                     std::vector<InvariantResult>& out) {
  Eigen::MatrixXi X;
  std::complex<double> k;
  if (g == 1) {
    X = Eigen::MatrixXi::Constant(1, 1, 2);
    k = {0.0, 1.0};
  } else if (g == 2) {
    X.setZero(2, 2);
    X(0, 1) = X(1, 0) = 1;
    k = paper_k();
  } else {
    PeriodPoint pre = PeriodPoint::preset(g == 3 ? "paper-g3" : "paper-g4");
    X = pre.split()->X;
    k = pre.split()->k;
  }
  PeriodPoint P = PeriodPoint::from_split(X, k);
  SeriesBudget b1 = fast_truncation_radius(k, opt.tol, g);
  SeriesBudget bg = truncation_radius(P.imZ(), opt.tol);

  Row row;
  std::mt19937_64 rng(7000 + static_cast<std::uint64_t>(g));
  for (int s = 0; s < 100; ++s) {
    RationalVector c = rand_vector(g, rng);
    row.feed(std::abs(theta_null_fast(c, X, k, b1) - theta_null(c, P, bg)));
  }
  emit(out, "fast_path[g=" + std::to_string(g) + "]", row, 10.0 * opt.tol);
}

void witness_rows(const PolarizationType& D, const std::vector<PeriodPoint>& points,
                  const InvariantOptions& opt, const std::string& suffix,
                  std::vector<InvariantResult>& out) {
  if (fail1_predicate(D)) {
    Row row;
    bool ok = true;
    double threshold = 0;
    for (const auto& P : points) {
      ThetaEvaluator ev(P, opt.tol);
      Fail1Witness w = fail1_structural_witness(ev, D);
      row.feed(w.residual);
      threshold = w.threshold;
      ok = ok && w.pass;
    }
    emit(out, "fail1_witness" + suffix + "[" + D.str() + "]", row, threshold, ok);
  }
  if (fail2_predicate(D)) {
    Row row;
    bool ok = true;
    double threshold = 0;
    for (const auto& P : points) {
      ThetaEvaluator ev(P, opt.tol);
      Fail2Witness w = fail2_structural_witness(ev, D, opt.tols);
      row.feed(std::max(w.zero_residual, w.opposite_residual));
      threshold = w.opposite_threshold;
      ok = ok && w.pass();
    }
    emit(out, "fail2_witness" + suffix + "[" + D.str() + "]", row, threshold, ok);
  }
}

void structural_suite(int g, const InvariantOptions& opt,
                      std::vector<InvariantResult>& out) {
  std::vector<PeriodPoint> seeded;
  for (std::uint64_t seed : opt.seeds) seeded.push_back(PeriodPoint::random(g, seed));

  // the g = 1 default range [3, 2] is empty, so witnesses start at g = 2
  const long long lo = two_pow(g + 1) - 1, hi = two_pow(g) * factorial(g);
  if (lo <= hi) {
    for (const auto& D : enumerate_types(g, lo, hi)) {
      witness_rows(D, seeded, opt, "", out);
      if (g == 3 || g == 4) {
        std::vector<PeriodPoint> pre = {
            PeriodPoint::preset(g == 3 ? "paper-g3" : "paper-g4")};
        witness_rows(D, pre, opt, "_preset", out);
      }
    }
  }

  // reduced-rank equality stays at g <= 3 where the full matrices are small
  if (g <= 3) {
    auto small = enumerate_types(g, 1, two_pow(g) * factorial(g));
    for (const auto& D : small) {
      if (!D.has_two()) continue;
      Row row;
      bool ok = true;
      for (const auto& P : seeded) {
        ThetaEvaluator ev(P, opt.tol);
        TriState t = reduced_rank_equality(ev, D, opt.tols);
        row.feed(0.0);
        ok = ok && t == TriState::yes;
      }
      emit(out, "reduced_rank[" + D.str() + "]", row, 0.0, ok);
    }
  }
}

void dimension_count_suite(const InvariantOptions& opt,
                           std::vector<InvariantResult>& out) {
  const std::vector<std::uint64_t> seeds = {1, 2, 3};
  for (const auto& D : enumerate_types(3, 7, 14)) {
    Row row;
    bool ok = true;
    for (std::uint64_t seed : seeds) {
      PeriodPoint P = PeriodPoint::random(3, seed);
      ThetaEvaluator ev(P, opt.tol);
      TwoNormalResult res = is_two_normal(ev, D, opt.tols);
      ok = ok && res.value.has_value() && !*res.value;
      double worst = 0;  // largest gap among the deficient w
      for (const auto& rep : res.reports)
        if (rep.status == RankStatus::deficient) worst = std::max(worst, rep.gap);
      row.feed(worst);
    }
    emit(out, "dimension_count[" + D.str() + "]", row, opt.tols.reject, ok);
  }
}

}  // namespace

std::vector<InvariantResult> run_invariant_suites(const InvariantOptions& opt) {
  opt.tols.validate();
  std::vector<InvariantResult> out;

  {
    PeriodPoint P = PeriodPoint::from_dense(
        Eigen::MatrixXcd::Constant(1, 1, std::complex<double>(0.0, 1.0)));
    SeriesBudget b = truncation_radius(P.imZ(), opt.tol);
    Row row;
    row.feed(std::abs(siegel_theta(P, Eigen::VectorXcd::Zero(1), b) - kAnchor));
    emit(out, "anchor[g=1]", row, 1e-12);
  }

  for (int g : opt.gs) {
    theta_identity_suite(g, opt, out);
    fast_path_suite(g, opt, out);
  }
  if (opt.structural) {
    for (int g : opt.gs) structural_suite(g, opt, out);
    if (std::find(opt.gs.begin(), opt.gs.end(), 3) != opt.gs.end())
      dimension_count_suite(opt, out);
  }
  return out;
}

bool invariants_pass(const std::vector<InvariantResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

}  // namespace thetanorm
