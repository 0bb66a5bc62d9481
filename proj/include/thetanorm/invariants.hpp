#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetanorm/rank.hpp"

namespace thetanorm {

// One aggregated invariant check: max residual over all samples vs its budget.
struct InvariantResult {
  std::string name;
  int samples = 0;
  double max_residual = 0;
  double threshold = 0;
  bool pass = false;
};

struct InvariantOptions {
  std::vector<int> gs = {1, 2, 3, 4};
  std::vector<std::uint64_t> seeds = {11, 12, 15};
  int min_samples_per_g = 100;  // theta identity suite sample floor per g
  double tol = 1e-12;
  RankTolerances tols;
  bool structural = true;  // witness, reduced-rank, and dimension-count suites
};

// Theta identity suite (parity, periodicity, characteristic reduction,
// transformation invariance, null symmetry, convergence, evaluator
// consistency, fast-path equivalence, 1-d anchor value), plus the structural
// suites: fail1/fail2 witnesses over the applicable types at seeded points and
// presets, reduced-rank equality for g <= 3, and the dimension-count check
// that every g = 3 type with h0 in [7,14] shows a deficient w.
std::vector<InvariantResult> run_invariant_suites(const InvariantOptions& opt);

bool invariants_pass(const std::vector<InvariantResult>& rs);

}  // namespace thetanorm
