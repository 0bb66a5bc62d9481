#pragma once

#include <Eigen/Dense>
#include <vector>

#include "thetanorm/normality.hpp"
#include "thetanorm/polarization.hpp"
#include "thetanorm/rank.hpp"
#include "thetanorm/theta.hpp"

namespace thetanorm {

// Coset decomposition at the first d_{i0} = 2 position (i0 is 1-based).
// K12 models the complement of the order-2 factor: coordinates vanish at
// positions <= i0 and run over n_j/d_j beyond it, so |K12| = h0/2.
// K12_0 is its 2-torsion part (|K12_0| = 2^{g-i0}), K12_1 the rest.
// Z22 is the half-integer set with coordinate i0 equal to zero, and
// w = lambda_{i0}/2 is the distinguished representative (coordinate 1/2 at i0).
struct SplitIndexSets {
  int i0 = 0;
  std::vector<RationalVector> K12;
  std::vector<RationalVector> K12_0;
  std::vector<RationalVector> K12_1;
  std::vector<RationalVector> Z22;
  RationalVector w;
};

SplitIndexSets split_index_sets(const PolarizationType& D);

// Q1[u,z] = theta_null(u + z - w/2), Q2[u,z] = theta_null(u + z + lambda_{i0}/2 - w/2),
// u over K12, z over Z22, both in lexicographic order.
struct QPair {
  Eigen::MatrixXcd Q1, Q2;
};
QPair build_Q(ThetaEvaluator& ev, const PolarizationType& D);

// Column-sum identity exhibiting the fail1 deficiency: the sum of the column
// vectors of Q1 equals that of Q2 when every u in K12 is 4-torsion.
struct Fail1Witness {
  double residual = 0;    // max component of |colsum(Q1) - colsum(Q2)|
  double threshold = 0;
  bool pass = false;
};
Fail1Witness fail1_structural_witness(ThetaEvaluator& ev, const PolarizationType& D,
                                      double slack = 10.0);

// Structure of Q1 - Q2: rows at 2-torsion u vanish, rows at u and -u are
// opposite, and consequently rank(Q1 - Q2) <= (|K12| - |K12_0|)/2.
struct Fail2Witness {
  double zero_residual = 0;
  double opposite_residual = 0;
  double zero_threshold = 0;
  double opposite_threshold = 0;
  int rank = 0;
  int bound = 0;
  bool zero_rows = false;
  bool opposite_rows = false;
  bool rank_bound = false;
  bool pass() const { return zero_rows && opposite_rows && rank_bound; }
};
Fail2Witness fail2_structural_witness(ThetaEvaluator& ev, const PolarizationType& D,
                                      const RankTolerances& tols, double slack = 10.0);

enum class TriState { yes, no, inconclusive };

// rank of the full K_1-indexed matrix at w = lambda_{i0}/2 vs rank of (Q1 Q2);
// inconclusive when either certificate is ambiguous.
TriState reduced_rank_equality(ThetaEvaluator& ev, const PolarizationType& D,
                               const RankTolerances& tols);

}  // namespace thetanorm
