#include <doctest.h>

#include <algorithm>
#include <vector>

#include "thetanorm/polarization.hpp"

using namespace thetanorm;

namespace {

// independent chain generator: no minimal-completion pruning, plain recursion
void oracle_rec(int g, long long max_h0, std::vector<int>& cur, long long prod,
                std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == g) {
    out.push_back(cur);
    return;
  }
  int base = cur.empty() ? 1 : cur.back();
  for (int d = base; prod * d <= max_h0; d += base) {
    cur.push_back(d);
    oracle_rec(g, max_h0, cur, prod * d, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> oracle_types(int g, long long min_h0, long long max_h0) {
  std::vector<std::vector<int>> all;
  std::vector<int> cur;
  oracle_rec(g, max_h0, cur, 1, all);
  std::vector<std::vector<int>> kept;
  for (const auto& d : all) {
    long long p = 1;
    for (int x : d) p *= x;
    if (p >= min_h0) kept.push_back(d);
  }
  auto h0_of = [](const std::vector<int>& d) {
    long long p = 1;
    for (int x : d) p *= x;
    return p;
  };
  std::sort(kept.begin(), kept.end(), [&](const auto& a, const auto& b) {
    long long ha = h0_of(a), hb = h0_of(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return kept;
}

RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

}  // namespace

TEST_CASE("type construction and parsing") {
  PolarizationType D = PolarizationType::of({1, 2, 8});
  CHECK(D.g() == 3);
  CHECK(D.h0() == 16);
  CHECK(D.has_two());
  CHECK(D.str() == "(1,2,8)");
  CHECK(PolarizationType::parse("1,2,8") == D);
  CHECK_FALSE(PolarizationType::of({1, 3, 6}).has_two());

  CHECK_THROWS_AS(PolarizationType::of({}), std::domain_error);
  CHECK_THROWS_AS(PolarizationType::of({0, 2}), std::domain_error);
  CHECK_THROWS_AS(PolarizationType::of({2, 3}), std::domain_error);
  CHECK_THROWS_AS(PolarizationType::parse("1,x"), std::invalid_argument);
  CHECK_THROWS_AS(PolarizationType::parse(""), std::invalid_argument);
}

TEST_CASE("index sets") {
  SUBCASE("(1,1)") {
    IndexSets s = index_sets(PolarizationType::of({1, 1}));
    CHECK(s.I.size() == 1);
    CHECK(s.Iprime.size() == 1);
    REQUIRE(s.J.size() == 4);
    CHECK(s.J[0] == rv({Rational(0), Rational(0)}));
    CHECK(s.J[1] == rv({Rational(0), Rational(1, 2)}));
    CHECK(s.J[2] == rv({Rational(1, 2), Rational(0)}));
    CHECK(s.J[3] == rv({Rational(1, 2), Rational(1, 2)}));
  }
  SUBCASE("(1,2,8)") {
    IndexSets s = index_sets(PolarizationType::of({1, 2, 8}));
    CHECK(s.I.size() == 16);
    REQUIRE(s.Iprime.size() == 4);
    CHECK(s.Iprime[0] == rv({Rational(0), Rational(0), Rational(0)}));
    CHECK(s.Iprime[1] == rv({Rational(0), Rational(0), Rational(1, 8)}));
    CHECK(s.Iprime[2] == rv({Rational(0), Rational(1, 2), Rational(0)}));
    CHECK(s.Iprime[3] == rv({Rational(0), Rational(1, 2), Rational(1, 8)}));
    CHECK(s.J.size() == 8);
    // I runs over n_i/d_i in lex order of the integer tuples
    CHECK(s.I[0] == rv({Rational(0), Rational(0), Rational(0)}));
    CHECK(s.I[1] == rv({Rational(0), Rational(0), Rational(1, 8)}));
    CHECK(s.I[8] == rv({Rational(0), Rational(1, 2), Rational(0)}));
    CHECK(s.I[15] == rv({Rational(0), Rational(1, 2), Rational(7, 8)}));
  }
  SUBCASE("(1,3,6)") {
    IndexSets s = index_sets(PolarizationType::of({1, 3, 6}));
    CHECK(s.I.size() == 18);
    REQUIRE(s.Iprime.size() == 2);
    CHECK(s.Iprime[1] == rv({Rational(0), Rational(0), Rational(1, 6)}));
  }
}

TEST_CASE("predicates") {
  auto T = [](std::vector<int> d) { return PolarizationType::of(std::move(d)); };

  CHECK(fail1_predicate(T({2, 2, 4})));
  CHECK(fail1_predicate(T({2, 4})));
  CHECK(fail1_predicate(T({1, 2, 4, 4})));
  CHECK_FALSE(fail1_predicate(T({1, 2, 8})));
  CHECK_FALSE(fail1_predicate(T({1, 3, 6})));
  CHECK_FALSE(fail1_predicate(T({1, 4, 4})));

  CHECK(fail2_predicate(T({2, 4})));
  CHECK(fail2_predicate(T({2, 2, 4})));
  CHECK(fail2_predicate(T({1, 2, 8})));
  CHECK(fail2_predicate(T({1, 1, 2, 16})));
  CHECK_FALSE(fail2_predicate(T({1, 4, 4})));   // h0 = 16 but no d_i = 2
  CHECK_FALSE(fail2_predicate(T({2, 8})));      // h0 = 16 != 2^3

  CHECK(necessary_condition(T({1, 1, 15})));
  CHECK(necessary_condition(T({1, 2, 8})));
  CHECK_FALSE(necessary_condition(T({1, 1, 8})));
  CHECK_FALSE(necessary_condition(T({1, 1, 2, 2})));
  CHECK(necessary_condition(T({1, 2, 4, 4})));

  CHECK(iyer_bound(T({1, 9})));
  CHECK_FALSE(iyer_bound(T({1, 8})));           // boundary: h0 = 2^g g! exactly
  CHECK(iyer_bound(T({1, 1, 49})));
  CHECK_FALSE(iyer_bound(T({1, 1, 48})));
  CHECK(iyer_bound(T({1, 1, 1, 385})));
  CHECK_FALSE(iyer_bound(T({1, 1, 1, 384})));

  CHECK(two_pow(5) == 32);
  CHECK(factorial(5) == 120);
  CHECK_THROWS_AS(two_pow(63), std::domain_error);
  CHECK_THROWS_AS(factorial(21), std::domain_error);
}

TEST_CASE("enumeration") {
  SUBCASE("small ranges") {
    auto g1 = enumerate_types(1, 1, 4);
    REQUIRE(g1.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(g1[i].d == std::vector<int>{i + 1});

    auto g2 = enumerate_types(2, 4, 4);
    REQUIRE(g2.size() == 2);
    CHECK(g2[0].d == std::vector<int>{1, 4});
    CHECK(g2[1].d == std::vector<int>{2, 2});
  }
  SUBCASE("paper range boundaries") {
    auto g3 = enumerate_types(3, 15, 48);
    REQUIRE(!g3.empty());
    CHECK(g3.front().d == std::vector<int>{1, 1, 15});
    CHECK(g3.back().d == std::vector<int>{2, 2, 12});
    CHECK(std::is_sorted(g3.begin(), g3.end()));
    auto has = [&](std::vector<int> d) {
      return std::find(g3.begin(), g3.end(), PolarizationType{std::move(d)}) != g3.end();
    };
    CHECK(has({1, 2, 8}));
    CHECK(has({1, 3, 6}));
    CHECK(has({2, 2, 4}));
    CHECK(has({2, 4, 4}));
    CHECK(has({1, 1, 48}));
    CHECK_FALSE(has({1, 1, 14}));
  }
  SUBCASE("bounds validation") {
    CHECK_THROWS_AS(enumerate_types(0, 1, 10), std::domain_error);
    CHECK_THROWS_AS(enumerate_types(2, 0, 5), std::domain_error);
    CHECK_THROWS_AS(enumerate_types(2, 6, 5), std::domain_error);
  }
  SUBCASE("brute-force oracle agreement up to h0 = 400") {
    for (int g = 1; g <= 4; ++g) {
      auto lib = enumerate_types(g, 1, 400);
      auto ora = oracle_types(g, 1, 400);
      REQUIRE(lib.size() == ora.size());
      for (std::size_t i = 0; i < lib.size(); ++i) CHECK(lib[i].d == ora[i]);
      // no duplicates
      CHECK(std::adjacent_find(lib.begin(), lib.end()) == lib.end());

      auto lib_mid = enumerate_types(g, 37, 211);
      auto ora_mid = oracle_types(g, 37, 211);
      REQUIRE(lib_mid.size() == ora_mid.size());
      for (std::size_t i = 0; i < lib_mid.size(); ++i) CHECK(lib_mid[i].d == ora_mid[i]);
    }
  }
}
