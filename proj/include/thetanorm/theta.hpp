#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "thetanorm/period.hpp"
#include "thetanorm/rational.hpp"

namespace thetanorm {

// Truncation control for one lattice sum. radius is the least R whose
// documented tail bound is below tol; the bound is monotone in R.
struct SeriesBudget {
  double tol = 0;
  int radius = 0;
  double lambda_min = 0;
};

// Cube radius for the g-dimensional sum over ||t||_inf <= R.
// Tail bound, valid for any characteristic reduced into [-1/2,1/2)^g:
//   tail(R) = sum_{m>R} ((2m+1)^g - (2m-1)^g) * exp(-pi*lambda_min*(m-1/2)^2)
// since a lattice point with ||t||_inf = m has ||t+a||^2 >= (m-1/2)^2.
SeriesBudget truncation_radius(const Eigen::MatrixXd& imZ, double tol);

// 1-d radius for the product decomposition at Z = X + k*Id. Each factor
// theta(k,v_a) with |Im v_a| <= Im(k)/2 has tail sum_{|n|>R} exp(-pi*Im(k)*(n^2-|n|));
// the per-factor budget tol/(g*S^{g-1}) with S = sum_n exp(-pi*Im(k)*(n^2-|n|))
// makes the assembled product error at most tol.
SeriesBudget fast_truncation_radius(std::complex<double> k, double tol, int g);

// theta(Z,v) = sum_{t in Z^g, ||t||_inf <= radius} exp(pi i t^T Z t + 2 pi i t^T v)
std::complex<double> siegel_theta(const PeriodPoint& Z, const Eigen::VectorXcd& v,
                                  const SeriesBudget& budget);

// theta[a;b](v,Z) = sum_n exp(pi i (n+a)^T Z (n+a) + 2 pi i (n+a)^T (v+b)).
// a is summed as given: the budget's validity assumes a reduced into
// [-1/2,1/2)^g, and for b != 0 an integer shift of a changes the value by a
// phase, so no silent reduction happens here.
std::complex<double> theta_char(const RationalVector& a, const RationalVector& b,
                                const Eigen::VectorXcd& v, const PeriodPoint& Z,
                                const SeriesBudget& budget);

// exp(pi i c1^T Z c1) * theta(Z, Z c1) at the representative of c1 reduced
// into [-1/2,1/2)^g; equals theta[c1;0](0,Z), so the reduction is exact.
std::complex<double> theta_null(const RationalVector& c1, const PeriodPoint& Z,
                                const SeriesBudget& budget);

// Product path: for integer symmetric X with even diagonal, t^T X t is even,
// so exp(pi i t^T X t) = 1 term by term and theta(X + k*Id, v) = theta(k*Id, v)
// factors into g one-dimensional series.
std::complex<double> theta_null_fast(const RationalVector& c1, const Eigen::MatrixXi& X,
                                     std::complex<double> k, const SeriesBudget& budget1d);

// One-dimensional factor sum_{|n|<=R} exp(pi i k n^2 + 2 pi i n v).
std::complex<double> theta_1d(std::complex<double> k, std::complex<double> v, int radius);

// Memoizing evaluator bound to one period point and one error budget.
// Not thread-safe: use one instance per thread. Distinct reduced arguments
// for a type (d_1,...,d_g) number at most prod(2 d_i), so the cache stays small.
class ThetaEvaluator {
 public:
  ThetaEvaluator(const PeriodPoint& P, double tol);

  std::complex<double> theta_null(const RationalVector& c1);

  const PeriodPoint& point() const { return P_; }
  double entry_error() const { return tol_; }
  const SeriesBudget& budget() const { return budget_; }
  bool fast() const { return fast_; }

  // pin the radius (truncation self-consistency tests); keeps tol reporting
  void force_radius(int radius);

 private:
  void rebuild_general();
  std::complex<double> eval(const RationalVector& reduced) const;

  PeriodPoint P_;
  double tol_;
  bool fast_;
  SeriesBudget budget_;
  std::vector<int> pts_;                           // general path: cube, flattened g per point
  std::vector<std::complex<double>> qphase_;       // general path: exp(pi i t^T Z t) per point
  std::map<std::vector<std::pair<long long, long long>>, std::complex<double>> cache_;
};

}  // namespace thetanorm
