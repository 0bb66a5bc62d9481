#pragma once

#include <string>
#include <vector>

#include "thetanorm/rational.hpp"

namespace thetanorm {

// Polarization type (d_1,...,d_g) with the divisibility chain d_i | d_{i+1}.
struct PolarizationType {
  std::vector<int> d;

  static PolarizationType of(std::vector<int> d);
  static PolarizationType parse(const std::string& s);  // "1,2,8"

  int g() const { return static_cast<int>(d.size()); }
  long long h0() const {
    long long p = 1;
    for (int x : d) p *= x;
    return p;
  }
  bool has_two() const {
    for (int x : d) if (x == 2) return true;
    return false;
  }
  std::string str() const;  // "(1,2,8)"
  bool operator==(const PolarizationType& o) const { return d == o.d; }
  bool operator<(const PolarizationType& o) const {
    if (h0() != o.h0()) return h0() < o.h0();
    return d < o.d;
  }
};

// I: coordinates n_i/d_i with 0 <= n_i < d_i (the finite model of K_1).
// I': same with n_i < gcd(d_i,2) (representatives of K_1/2K_1).
// J: half-integer vectors (the 2^g half-period shifts).
// All emitted in lexicographic order of the integer tuples (n_1,...,n_g).
struct IndexSets {
  std::vector<RationalVector> I;
  std::vector<RationalVector> Iprime;
  std::vector<RationalVector> J;
};

IndexSets index_sets(const PolarizationType& D);

// some d_i = 2 and every d_j <= 4
bool fail1_predicate(const PolarizationType& D);
// some d_i = 2 and h0 = 2^{g+1}
bool fail2_predicate(const PolarizationType& D);
// h0 >= 2^{g+1} - 1 (below this bound normal generation is impossible)
bool necessary_condition(const PolarizationType& D);
// h0 > 2^g * g!  (normal generation known for simple A; hypothesis must be recorded)
bool iyer_bound(const PolarizationType& D);

// All divisibility-chain tuples with min_h0 <= prod(d_i) <= max_h0,
// duplicate-free, sorted by (h0, lexicographic).
std::vector<PolarizationType> enumerate_types(int g, long long min_h0, long long max_h0);

long long two_pow(int g);     // 2^g
long long factorial(int g);

}  // namespace thetanorm
