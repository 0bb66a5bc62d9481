#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetanorm {

// Exact rational with reduced representation and positive denominator.
// All lattice/coset arithmetic in this project stays on values with tiny
// denominators (bounded by 4*max(d_i)), so int64 never overflows here.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator-(const Rational& o) const { return {num * o.den - o.num * den, den * o.den}; }
  Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }

  // floor(num/den) with sign handled exactly
  long long floor_ll() const {
    long long q = num / den, r = num % den;
    return (r != 0 && num < 0) ? q - 1 : q;
  }

  // representative of this value mod 1 inside [-1/2, 1/2)
  Rational reduced_half() const {
    Rational half_up = *this + Rational(1, 2);
    return *this - Rational(half_up.floor_ll());
  }

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

// Exact rational g-vector; element of the coset lattice model.
struct RationalVector {
  std::vector<Rational> e;

  RationalVector() = default;
  explicit RationalVector(std::size_t g) : e(g) {}
  RationalVector(std::initializer_list<Rational> xs) : e(xs) {}

  std::size_t size() const { return e.size(); }
  Rational& operator[](std::size_t i) { return e[i]; }
  const Rational& operator[](std::size_t i) const { return e[i]; }

  RationalVector operator+(const RationalVector& o) const {
    check_dim(o);
    RationalVector r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  RationalVector operator-(const RationalVector& o) const {
    check_dim(o);
    RationalVector r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  RationalVector operator-() const {
    RationalVector r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = -e[i];
    return r;
  }
  RationalVector scaled(const Rational& s) const {
    RationalVector r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] * s;
    return r;
  }
  bool operator==(const RationalVector& o) const { return e == o.e; }
  bool operator<(const RationalVector& o) const {  // lexicographic, exact
    std::size_t n = std::min(e.size(), o.e.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] < o.e[i]) return true;
      if (o.e[i] < e[i]) return false;
    }
    return e.size() < o.e.size();
  }

  RationalVector reduced_half() const {
    RationalVector r(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i].reduced_half();
    return r;
  }
  bool is_zero() const {
    for (const auto& x : e) if (x.num != 0) return false;
    return true;
  }
  std::vector<double> to_doubles() const {
    std::vector<double> v(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) v[i] = e[i].to_double();
    return v;
  }
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) s += ",";
      s += e[i].str();
    }
    return s;
  }

  static RationalVector unit(std::size_t g, std::size_t i) {
    RationalVector r(g);
    r.e[i] = Rational(1);
    return r;
  }

 private:
  void check_dim(const RationalVector& o) const {
    if (e.size() != o.e.size()) throw std::domain_error("rational vector: dimension mismatch");
  }
};

Rational parse_rational(const std::string& s);
RationalVector parse_rational_vector(const std::string& s);  // "a/b,c,d/e"

}  // namespace thetanorm
