#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "thetanorm/rational.hpp"

namespace thetanorm {

struct RankTolerances {
  double rank_tol = 1e-13;
  double accept = 5e-13;
  double reject = 1e-14;
  void validate() const;
};

enum class RankStatus { full, deficient, ambiguous };
std::string to_string(RankStatus s);

// Certificate for one assembled matrix at one w.
// sigma holds the top `target` singular values, descending, zero-padded to
// exactly `target` entries; gap = sigma[target-1]/sigma[0] (0 if sigma[0]=0).
struct RankReport {
  RationalVector w;
  std::vector<double> sigma;
  int rank = 0;
  double gap = 0;
  RankStatus status = RankStatus::ambiguous;
};

// Two-threshold certificate: full if gap > accept, deficient if gap < reject,
// ambiguous between. rank counts singular values above rank_tol * sigma_max
// over the whole spectrum. Zero matrix: deficient, rank 0, gap 0.
RankReport numeric_rank(const Eigen::MatrixXcd& M, int target, const RankTolerances& tols);

// rank with an additional absolute floor: counts sigma_i > max(rank_tol * sigma_max, abs_floor).
// For matrices that are structurally zero, a purely relative cutoff would count
// noise as rank; the floor is set from the entry error budget by callers.
int noise_floored_rank(const Eigen::MatrixXcd& M, double rank_tol, double abs_floor);

}  // namespace thetanorm
