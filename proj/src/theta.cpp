#include "thetanorm/theta.hpp"

#include <cmath>
#include <stdexcept>

namespace thetanorm {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double general_tail(double lambda, int R, int g) {
  double tail = 0;
  for (int m = R + 1;; ++m) {
    double shell = std::pow(2.0 * m + 1.0, g) - std::pow(2.0 * m - 1.0, g);
    double term = shell * std::exp(-kPi * lambda * (m - 0.5) * (m - 0.5));
    tail += term;
    if (term < 1e-300 || term < tail * 1e-16) break;
  }
  return tail;
}

double fast_tail_1d(double lambda, int R) {
  double tail = 0;
  for (int n = R + 1;; ++n) {
    double term = 2.0 * std::exp(-kPi * lambda * (double(n) * n - n));
    tail += term;
    if (term < 1e-300 || term < tail * 1e-16) break;
  }
  return tail;
}

double fast_factor_bound(double lambda) {  // S = sum_n exp(-pi*lambda*(n^2-|n|))
  double s = 1;
  for (int n = 1;; ++n) {
    double term = 2.0 * std::exp(-kPi * lambda * (double(n) * n - n));
    s += term;
    if (term < s * 1e-16) break;
  }
  return s;
}

void check_tol(double tol) {
  if (!(tol > 0) || !(tol < 1)) throw std::domain_error("series tolerance must lie in (0,1)");
}

void check_lambda(double lambda) {
  if (!(lambda > 0)) throw std::domain_error("Im Z must be positive definite");
  if (lambda < 0.05)
    throw std::domain_error("Im Z too close to singular: smallest eigenvalue below 0.05");
}

std::vector<int> cube_points(int g, int R) {
  const long long side = 2LL * R + 1;
  long long count = 1;
  for (int a = 0; a < g; ++a) {
    count *= side;
    if (count > 50'000'000LL) throw std::domain_error("truncation cube too large");
  }
  std::vector<int> pts;
  pts.reserve(static_cast<std::size_t>(count) * g);
  std::vector<int> t(g, -R);
  for (;;) {
    pts.insert(pts.end(), t.begin(), t.end());
    int a = g - 1;
    while (a >= 0 && t[a] == R) t[a--] = -R;
    if (a < 0) break;
    ++t[a];
  }
  return pts;
}

std::complex<double> exp_pi_i(std::complex<double> w) {
  // exp(pi*i*w) for complex w
  return std::exp(std::complex<double>(-kPi * w.imag(), kPi * w.real()));
}

}  // namespace

SeriesBudget truncation_radius(const Eigen::MatrixXd& imZ, double tol) {
  check_tol(tol);
  if (imZ.rows() != imZ.cols() || imZ.rows() < 1)
    throw std::domain_error("imZ must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(imZ);
  double lambda = es.eigenvalues().minCoeff();
  check_lambda(lambda);
  const int g = static_cast<int>(imZ.rows());
  for (int R = 1; R <= 1000; ++R)
    if (general_tail(lambda, R, g) <= tol) return {tol, R, lambda};
  throw std::domain_error("no admissible truncation radius below 1000");
}

SeriesBudget fast_truncation_radius(std::complex<double> k, double tol, int g) {
  check_tol(tol);
  double lambda = k.imag();
  check_lambda(lambda);
  double S = fast_factor_bound(lambda);
  double tol1d = tol / (g * std::pow(S, g - 1));
  for (int R = 1; R <= 1000; ++R)
    if (fast_tail_1d(lambda, R) <= tol1d) return {tol, R, lambda};
  throw std::domain_error("no admissible truncation radius below 1000");
}

std::complex<double> siegel_theta(const PeriodPoint& Z, const Eigen::VectorXcd& v,
                                  const SeriesBudget& budget) {
  const int g = Z.g();
  if (v.size() != g) throw std::domain_error("siegel_theta: v has wrong dimension");
  const auto& M = Z.Z();
  std::vector<int> pts = cube_points(g, budget.radius);
  const std::size_t n = pts.size() / g;
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int* t = &pts[i * g];
    std::complex<double> quad = 0, lin = 0;
    for (int a = 0; a < g; ++a) {
      std::complex<double> row = 0;
      for (int b = 0; b < g; ++b) row += M(a, b) * double(t[b]);
      quad += double(t[a]) * row;
      lin += double(t[a]) * v(a);
    }
    acc += exp_pi_i(quad + 2.0 * lin);
  }
  return acc;
}

std::complex<double> theta_char(const RationalVector& a, const RationalVector& b,
                                const Eigen::VectorXcd& v, const PeriodPoint& Z,
                                const SeriesBudget& budget) {
  const int g = Z.g();
  if (static_cast<int>(a.size()) != g || static_cast<int>(b.size()) != g || v.size() != g)
    throw std::domain_error("theta_char: dimension mismatch");
  const auto& M = Z.Z();
  std::vector<double> ad = a.to_doubles(), bd = b.to_doubles();
  std::vector<int> pts = cube_points(g, budget.radius);
  const std::size_t n = pts.size() / g;
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int* t = &pts[i * g];
    std::complex<double> quad = 0, lin = 0;
    for (int aa = 0; aa < g; ++aa) {
      double na = t[aa] + ad[aa];
      std::complex<double> row = 0;
      for (int bb = 0; bb < g; ++bb) row += M(aa, bb) * (t[bb] + ad[bb]);
      quad += na * row;
      lin += na * (v(aa) + bd[aa]);
    }
    acc += exp_pi_i(quad + 2.0 * lin);
  }
  return acc;
}

std::complex<double> theta_null(const RationalVector& c1, const PeriodPoint& Z,
                                const SeriesBudget& budget) {
  const int g = Z.g();
  if (static_cast<int>(c1.size()) != g) throw std::domain_error("theta_null: dimension mismatch");
  RationalVector c = c1.reduced_half();
  std::vector<double> cd = c.to_doubles();
  Eigen::VectorXd cv = Eigen::Map<Eigen::VectorXd>(cd.data(), g);
  Eigen::VectorXcd v = Z.Z() * cv;
  std::complex<double> quad = cv.transpose().cast<std::complex<double>>() * v;
  return exp_pi_i(quad) * siegel_theta(Z, v, budget);
}

std::complex<double> theta_1d(std::complex<double> k, std::complex<double> v, int radius) {
  std::complex<double> acc = 0;
  for (int n = -radius; n <= radius; ++n)
    acc += exp_pi_i(k * double(n) * double(n) + 2.0 * double(n) * v);
  return acc;
}

std::complex<double> theta_null_fast(const RationalVector& c1, const Eigen::MatrixXi& X,
                                     std::complex<double> k, const SeriesBudget& budget1d) {
  const int g = static_cast<int>(X.rows());
  if (static_cast<int>(c1.size()) != g)
    throw std::domain_error("theta_null_fast: dimension mismatch");
  for (int i = 0; i < g; ++i)
    if (X(i, i) % 2 != 0)
      throw std::domain_error("theta_null_fast: X must have even diagonal");
  RationalVector c = c1.reduced_half();
  std::vector<double> cd = c.to_doubles();
  // v = (X + k*Id) c ; quad = c^T (X + k*Id) c
  std::complex<double> quad = 0;
  std::complex<double> value = 1;
  std::vector<std::complex<double>> v(g);
  for (int a = 0; a < g; ++a) {
    double xrow = 0;
    for (int b = 0; b < g; ++b) xrow += X(a, b) * cd[b];
    v[a] = xrow + k * cd[a];
    quad += cd[a] * v[a];
  }
  for (int a = 0; a < g; ++a) value *= theta_1d(k, v[a], budget1d.radius);
  return exp_pi_i(quad) * value;
}

ThetaEvaluator::ThetaEvaluator(const PeriodPoint& P, double tol) : P_(P), tol_(tol) {
  fast_ = P_.fast_path();
  if (fast_)
    budget_ = fast_truncation_radius(P_.split()->k, tol, P_.g());
  else {
    budget_ = truncation_radius(P_.imZ(), tol);
    rebuild_general();
  }
}

void ThetaEvaluator::force_radius(int radius) {
  if (radius < 1) throw std::domain_error("radius must be positive");
  budget_.radius = radius;
  cache_.clear();
  if (!fast_) rebuild_general();
}

void ThetaEvaluator::rebuild_general() {
  const int g = P_.g();
  pts_ = cube_points(g, budget_.radius);
  const std::size_t n = pts_.size() / g;
  qphase_.resize(n);
  const auto& M = P_.Z();
  for (std::size_t i = 0; i < n; ++i) {
    const int* t = &pts_[i * g];
    std::complex<double> quad = 0;
    for (int a = 0; a < g; ++a) {
      std::complex<double> row = 0;
      for (int b = 0; b < g; ++b) row += M(a, b) * double(t[b]);
      quad += double(t[a]) * row;
    }
    qphase_[i] = exp_pi_i(quad);
  }
}

std::complex<double> ThetaEvaluator::eval(const RationalVector& c) const {
  const int g = P_.g();
  if (fast_) {
    const auto& sp = *P_.split();
    std::vector<double> cd = c.to_doubles();
    std::complex<double> quad = 0, value = 1;
    for (int a = 0; a < g; ++a) {
      double xrow = 0;
      for (int b = 0; b < g; ++b) xrow += sp.X(a, b) * cd[b];
      std::complex<double> va = xrow + sp.k * cd[a];
      quad += cd[a] * va;
      value *= theta_1d(sp.k, va, budget_.radius);
    }
    return exp_pi_i(quad) * value;
  }
  std::vector<double> cd = c.to_doubles();
  Eigen::VectorXd cv = Eigen::Map<Eigen::VectorXd>(cd.data(), g);
  Eigen::VectorXcd v = P_.Z() * cv;
  std::complex<double> quad = cv.transpose().cast<std::complex<double>>() * v;
  // per-coordinate tables exp(2 pi i n v_a), n in [-R, R]
  const int R = budget_.radius;
  const int side = 2 * R + 1;
  std::vector<std::complex<double>> table(static_cast<std::size_t>(g) * side);
  for (int a = 0; a < g; ++a)
    for (int n = -R; n <= R; ++n)
      table[a * side + (n + R)] = exp_pi_i(2.0 * double(n) * v(a));
  const std::size_t npts = pts_.size() / g;
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < npts; ++i) {
    const int* t = &pts_[i * g];
    std::complex<double> term = qphase_[i];
    for (int a = 0; a < g; ++a) term *= table[a * side + (t[a] + R)];
    acc += term;
  }
  return exp_pi_i(quad) * acc;
}

std::complex<double> ThetaEvaluator::theta_null(const RationalVector& c1) {
  if (static_cast<int>(c1.size()) != P_.g())
    throw std::domain_error("theta_null: dimension mismatch");
  RationalVector c = c1.reduced_half();
  std::vector<std::pair<long long, long long>> key(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) key[i] = {c[i].num, c[i].den};
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  // cap keeps long multi-type scans bounded; values only depend on the key,
  // so dropping entries never changes results
  if (cache_.size() >= 2'000'000) cache_.clear();
  std::complex<double> val = eval(c);
  cache_.emplace(std::move(key), val);
  return val;
}

}  // namespace thetanorm
