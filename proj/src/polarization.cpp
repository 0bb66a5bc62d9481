#include "thetanorm/polarization.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace thetanorm {

long long two_pow(int g) {
  if (g < 0 || g > 62) throw std::domain_error("2^g out of range");
  return 1LL << g;
}

long long factorial(int g) {
  if (g < 0 || g > 20) throw std::domain_error("factorial out of range");
  long long f = 1;
  for (int i = 2; i <= g; ++i) f *= i;
  return f;
}

PolarizationType PolarizationType::of(std::vector<int> d) {
  if (d.empty()) throw std::domain_error("type must have at least one entry");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 1) throw std::domain_error("type entries must be positive");
    if (i + 1 < d.size() && d[i + 1] % d[i] != 0)
      throw std::domain_error("type must satisfy the divisibility chain d_i | d_{i+1}");
  }
  return PolarizationType{std::move(d)};
}

PolarizationType PolarizationType::parse(const std::string& s) {
  std::vector<int> d;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      d.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad type literal: " + s);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return of(std::move(d));
}

std::string PolarizationType::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

namespace {

std::vector<RationalVector> tuple_set(const std::vector<int>& limits,
                                      const std::vector<int>& dens) {
  const int g = static_cast<int>(limits.size());
  std::vector<RationalVector> out;
  long long count = 1;
  for (int x : limits) count *= x;
  out.reserve(count);
  std::vector<int> n(g, 0);
  for (;;) {
    RationalVector v(g);
    for (int i = 0; i < g; ++i) v[i] = Rational(n[i], dens[i]);
    out.push_back(std::move(v));
    int a = g - 1;
    while (a >= 0 && n[a] == limits[a] - 1) n[a--] = 0;
    if (a < 0) break;
    ++n[a];
  }
  return out;
}

}  // namespace

IndexSets index_sets(const PolarizationType& D) {
  const int g = D.g();
  std::vector<int> dens = D.d;
  std::vector<int> gcd2(g), twos(g, 2);
  for (int i = 0; i < g; ++i) gcd2[i] = std::gcd(D.d[i], 2);
  IndexSets s;
  s.I = tuple_set(D.d, dens);
  s.Iprime = tuple_set(gcd2, dens);
  s.J = tuple_set(twos, twos);
  return s;
}

bool fail1_predicate(const PolarizationType& D) {
  bool has2 = false;
  for (int x : D.d) {
    if (x == 2) has2 = true;
    if (x > 4) return false;
  }
  return has2;
}

bool fail2_predicate(const PolarizationType& D) {
  return D.has_two() && D.h0() == two_pow(D.g() + 1);
}

bool necessary_condition(const PolarizationType& D) {
  return D.h0() >= two_pow(D.g() + 1) - 1;
}

bool iyer_bound(const PolarizationType& D) {
  return D.h0() > two_pow(D.g()) * factorial(D.g());
}

std::vector<PolarizationType> enumerate_types(int g, long long min_h0, long long max_h0) {
  if (g < 1) throw std::domain_error("enumerate_types: g must be positive");
  if (min_h0 < 1 || min_h0 > max_h0) throw std::domain_error("enumerate_types: invalid bounds");
  std::vector<PolarizationType> out;
  std::vector<int> cur;
  // extend the chain: each d_{i+1} is a multiple of d_i, and the smallest
  // completion multiplies the remaining slots by the current last entry
  auto rec = [&](auto&& self, long long prod) -> void {
    const int depth = static_cast<int>(cur.size());
    if (depth == g) {
      if (prod >= min_h0) out.push_back(PolarizationType{cur});
      return;
    }
    const int base = depth == 0 ? 1 : cur.back();
    for (int m = 1;; ++m) {
      const long long next = static_cast<long long>(base) * m;
      // minimal achievable product if every later entry equals `next`;
      // increasing in m, so the first overflow ends the loop
      long long lowest = prod;
      bool overflow = false;
      for (int r = depth; r < g; ++r) {
        lowest *= next;
        if (lowest > max_h0) { overflow = true; break; }
      }
      if (overflow) break;
      cur.push_back(static_cast<int>(next));
      self(self, prod * next);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace thetanorm
