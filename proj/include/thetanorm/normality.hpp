#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "thetanorm/polarization.hpp"
#include "thetanorm/rank.hpp"
#include "thetanorm/theta.hpp"

namespace thetanorm {

// Matrix with entry (i,j) = theta_null(i + j - w/2), rows over I in
// lexicographic order, columns over J in lexicographic order.
Eigen::MatrixXcd assemble_matrix(ThetaEvaluator& ev, const PolarizationType& D,
                                 const RationalVector& w);

struct TwoNormalResult {
  std::optional<bool> value;           // nullopt when any w is ambiguous
  std::vector<RankReport> reports;     // one per w, in I' order
  std::vector<int> ambiguous_w;        // indices into I'
  bool all_full() const;
};

// 2-normality criterion: every w in I' must give a full-rank (2^g) matrix.
TwoNormalResult is_two_normal(ThetaEvaluator& ev, const PolarizationType& D,
                              const RankTolerances& tols);

enum class Conclusion {
  never_normally_generated,
  normally_generated_generic_evidence,
  two_normal_at_point,
  not_two_normal_at_point,
  indeterminate,
};
std::string to_string(Conclusion c);

struct Verdict {
  PolarizationType type;
  Conclusion conclusion = Conclusion::indeterminate;
  std::vector<std::string> reasons;    // every triggered justification, in decision order
  std::vector<RankReport> reports;     // populated when numerics ran
  std::vector<std::string> notes;
};

// Decision order: failed necessary condition, then fail1/fail2, then the
// h0 > 2^g g! bound (generic evidence, hypothesis recorded), then the numeric
// rank certificate at the given period point. All triggered reasons are
// recorded. ev may be null when a predicate decides and numerics are not
// forced; a numeric case without ev is a usage error.
Verdict verdict(const PolarizationType& D, ThetaEvaluator* ev, const RankTolerances& tols,
                bool force_numeric = false);

}  // namespace thetanorm
