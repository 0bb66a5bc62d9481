#include "thetanorm/structural.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace thetanorm {

namespace {

// x mod 1 into [0, 1)
Rational reduced_unit(const Rational& x) { return x - Rational(x.floor_ll()); }

bool is_two_torsion(const RationalVector& u) {
  for (const auto& x : u.e)
    if (x.den > 2) return false;
  return true;
}

}  // namespace

SplitIndexSets split_index_sets(const PolarizationType& D) {
  if (!D.has_two())
    throw std::invalid_argument("split_index_sets: requires some d_i = 2");
  const int g = D.g();
  SplitIndexSets s;
  for (int i = 0; i < g; ++i) {
    if (D.d[i] == 2) { s.i0 = i + 1; break; }
  }
  const int p0 = s.i0 - 1;  // 0-based; by the chain, d_j = 1 for j < i0

  // K12: coordinates vanish through position i0, run over n_p/d_p beyond it
  std::vector<int> limits(g, 1);
  for (int p = p0 + 1; p < g; ++p) limits[p] = D.d[p];
  std::vector<int> n(g, 0);
  while (true) {
    RationalVector u(g);
    for (int p = 0; p < g; ++p) u[p] = Rational(n[p], D.d[p]);
    s.K12.push_back(u);
    int p = g - 1;
    while (p >= 0 && ++n[p] == limits[p]) n[p--] = 0;
    if (p < 0) break;
  }
  for (const auto& u : s.K12)
    (is_two_torsion(u) ? s.K12_0 : s.K12_1).push_back(u);

  for (const auto& j : index_sets(D).J)
    if (j[p0].num == 0) s.Z22.push_back(j);

  s.w = RationalVector::unit(g, p0).scaled(Rational(1, 2));
  return s;
}

QPair build_Q(ThetaEvaluator& ev, const PolarizationType& D) {
  SplitIndexSets s = split_index_sets(D);
  const auto rows = static_cast<Eigen::Index>(s.K12.size());
  const auto cols = static_cast<Eigen::Index>(s.Z22.size());
  RationalVector half_w = s.w.scaled(Rational(1, 2));
  QPair q;
  q.Q1.resize(rows, cols);
  q.Q2.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      RationalVector base = s.K12[r] + s.Z22[c] - half_w;
      q.Q1(r, c) = ev.theta_null(base);
      q.Q2(r, c) = ev.theta_null(base + s.w);
    }
  }
  return q;
}

Fail1Witness fail1_structural_witness(ThetaEvaluator& ev, const PolarizationType& D,
                                      double slack) {
  if (!fail1_predicate(D))
    throw std::invalid_argument("fail1 witness: predicate does not apply to " + D.str());
  QPair q = build_Q(ev, D);
  Fail1Witness w;
  w.residual = (q.Q1.rowwise().sum() - q.Q2.rowwise().sum()).cwiseAbs().maxCoeff();
  w.threshold = slack * 2.0 * static_cast<double>(q.Q1.cols()) * ev.entry_error();
  w.pass = w.residual <= w.threshold;
  return w;
}

Fail2Witness fail2_structural_witness(ThetaEvaluator& ev, const PolarizationType& D,
                                      const RankTolerances& tols, double slack) {
  SplitIndexSets s = split_index_sets(D);
  QPair q = build_Q(ev, D);
  Eigen::MatrixXcd Dm = q.Q1 - q.Q2;
  const double tol = ev.entry_error();

  Fail2Witness w;
  w.zero_threshold = slack * 2.0 * tol;
  w.opposite_threshold = slack * 4.0 * tol;

  std::map<RationalVector, int> row_of;
  for (std::size_t r = 0; r < s.K12.size(); ++r)
    row_of[s.K12[r]] = static_cast<int>(r);

  for (std::size_t r = 0; r < s.K12.size(); ++r) {
    if (is_two_torsion(s.K12[r])) {
      w.zero_residual = std::max(w.zero_residual, Dm.row(r).cwiseAbs().maxCoeff());
    } else {
      RationalVector neg(s.K12[r].size());
      for (std::size_t p = 0; p < neg.size(); ++p) neg[p] = reduced_unit(-s.K12[r][p]);
      Eigen::Index rn = row_of.at(neg);
      w.opposite_residual =
          std::max(w.opposite_residual,
                   (Dm.row(r) + Dm.row(rn)).cwiseAbs().maxCoeff());
    }
  }
  w.zero_rows = w.zero_residual <= w.zero_threshold;
  w.opposite_rows = w.opposite_residual <= w.opposite_threshold;

  // the zero and opposite rows force rank(Q1 - Q2) <= |K12_1| / 2
  double floor = slack * 2.0 * tol * std::sqrt(static_cast<double>(Dm.size()));
  w.rank = noise_floored_rank(Dm, tols.rank_tol, floor);
  w.bound = static_cast<int>((s.K12.size() - s.K12_0.size()) / 2);
  w.rank_bound = w.rank <= w.bound;
  return w;
}

TriState reduced_rank_equality(ThetaEvaluator& ev, const PolarizationType& D,
                               const RankTolerances& tols) {
  SplitIndexSets s = split_index_sets(D);
  QPair q = build_Q(ev, D);
  Eigen::MatrixXcd Q(q.Q1.rows(), q.Q1.cols() + q.Q2.cols());
  Q << q.Q1, q.Q2;

  const int target = static_cast<int>(two_pow(D.g()));
  RankReport full = numeric_rank(assemble_matrix(ev, D, s.w), target, tols);
  RankReport reduced = numeric_rank(Q, target, tols);
  if (full.status == RankStatus::ambiguous || reduced.status == RankStatus::ambiguous)
    return TriState::inconclusive;
  return full.rank == reduced.rank ? TriState::yes : TriState::no;
}

}  // namespace thetanorm
