#include "thetanorm/rank.hpp"

#include <stdexcept>

namespace thetanorm {

void RankTolerances::validate() const {
  if (!(reject > 0) || !(reject < accept) || !(accept < 1))
    throw std::domain_error("rank tolerances must satisfy 0 < reject < accept < 1");
  if (!(rank_tol > 0) || !(rank_tol < 1))
    throw std::domain_error("rank_tol must lie in (0,1)");
}

std::string to_string(RankStatus s) {
  switch (s) {
    case RankStatus::full: return "full";
    case RankStatus::deficient: return "deficient";
    case RankStatus::ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

RankReport numeric_rank(const Eigen::MatrixXcd& M, int target, const RankTolerances& tols) {
  tols.validate();
  if (target < 1) throw std::domain_error("numeric_rank: target must be positive");
  RankReport rep;
  rep.sigma.assign(target, 0.0);
  if (M.size() == 0) {
    rep.rank = 0;
    rep.gap = 0;
    rep.status = RankStatus::deficient;
    return rep;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  for (int i = 0; i < sv.size() && i < target; ++i) rep.sigma[i] = sv(i);
  const double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0) {
    rep.rank = 0;
    rep.gap = 0;
    rep.status = RankStatus::deficient;
    return rep;
  }
  rep.rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tols.rank_tol * smax) ++rep.rank;
  rep.gap = rep.sigma[target - 1] / smax;
  if (rep.gap > tols.accept)
    rep.status = RankStatus::full;
  else if (rep.gap < tols.reject)
    rep.status = RankStatus::deficient;
  else
    rep.status = RankStatus::ambiguous;
  return rep;
}

int noise_floored_rank(const Eigen::MatrixXcd& M, double rank_tol, double abs_floor) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  if (!sv.size()) return 0;
  const double cutoff = std::max(rank_tol * sv(0), abs_floor);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

}  // namespace thetanorm
