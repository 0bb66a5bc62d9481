#include "thetanorm/period.hpp"

#include <random>
#include <stdexcept>

namespace thetanorm {

PeriodPoint::PeriodPoint(Eigen::MatrixXcd Z, std::optional<SplitForm> split)
    : Z_(std::move(Z)), split_(std::move(split)) {
  const auto n = Z_.rows();
  if (n == 0 || Z_.cols() != n) throw std::domain_error("period point: square matrix required");
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      if (Z_(a, b) != Z_(b, a))
        throw std::domain_error("period point: matrix must be exactly symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Z_.imag());
  lambda_min_ = es.eigenvalues().minCoeff();
  if (!(lambda_min_ > 0))
    throw std::domain_error("period point: Im Z must be positive definite");
}

PeriodPoint PeriodPoint::from_dense(const Eigen::MatrixXcd& Z) {
  return PeriodPoint(Z, std::nullopt);
}

PeriodPoint PeriodPoint::from_split(const Eigen::MatrixXi& X, std::complex<double> k) {
  if (X.rows() != X.cols()) throw std::domain_error("split form: X must be square");
  if (X != X.transpose().eval()) throw std::domain_error("split form: X must be symmetric");
  if (!(k.imag() > 0)) throw std::domain_error("split form: Im k must be positive");
  Eigen::MatrixXcd Z = X.cast<std::complex<double>>();
  for (Eigen::Index i = 0; i < X.rows(); ++i) Z(i, i) += k;
  return PeriodPoint(std::move(Z), SplitForm{X, k});
}

PeriodPoint PeriodPoint::preset(const std::string& name) {
  if (name == "paper-g3") {
    Eigen::MatrixXi X(3, 3);
    X << 0, 0, 1,
         0, 0, 2,
         1, 2, 0;
    return from_split(X, paper_k());
  }
  if (name == "paper-g4") {
    Eigen::MatrixXi X(4, 4);
    X << 0, 0, 0, 1,
         0, 0, 0, 2,
         0, 0, 0, 3,
         1, 2, 3, 0;
    return from_split(X, paper_k());
  }
  throw std::invalid_argument("unknown preset: " + name);
}

PeriodPoint PeriodPoint::random(int g, std::uint64_t seed) {
  if (g < 1) throw std::domain_error("random period point: g must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd S(g, g), A(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) S(i, j) = u(rng);
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) S(i, j) = S(j, i) = 0.5 * (S(i, j) + S(j, i));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) A(i, j) = u(rng);
  // fill Y symmetrically from one triangle so Z is exactly symmetric in floating point
  Eigen::MatrixXd Y(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      double s = A.col(i).dot(A.col(j));
      Y(i, j) = Y(j, i) = s;
    }
  for (int i = 0; i < g; ++i) Y(i, i) += 1.0;
  Eigen::MatrixXcd Z(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) Z(i, j) = {S(i, j), Y(i, j)};
  return PeriodPoint(std::move(Z), std::nullopt);
}

}  // namespace thetanorm
