#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace thetanorm {

// Split form Z = X + k*Id with X integer symmetric.
struct SplitForm {
  Eigen::MatrixXi X;
  std::complex<double> k;
  bool even_diagonal() const {
    for (int i = 0; i < X.rows(); ++i)
      if (X(i, i) % 2 != 0) return false;
    return true;
  }
};

// Point in the Siegel upper half-space: symmetric Z with Im Z positive definite.
// Symmetry is exact by construction; constructors reject non-symmetric input.
class PeriodPoint {
 public:
  static PeriodPoint from_dense(const Eigen::MatrixXcd& Z);
  static PeriodPoint from_split(const Eigen::MatrixXi& X, std::complex<double> k);
  static PeriodPoint preset(const std::string& name);  // "paper-g3", "paper-g4"
  // Z = S + i(A^T A + Id), S symmetric with entries in [-1,1], A entries in [-1,1],
  // both filled row-major from mt19937_64(seed).
  static PeriodPoint random(int g, std::uint64_t seed);

  int g() const { return static_cast<int>(Z_.rows()); }
  const Eigen::MatrixXcd& Z() const { return Z_; }
  Eigen::MatrixXd imZ() const { return Z_.imag(); }
  double lambda_min() const { return lambda_min_; }
  const std::optional<SplitForm>& split() const { return split_; }
  // product decomposition applies: Z = X + k*Id with even-diagonal integer X
  bool fast_path() const { return split_.has_value() && split_->even_diagonal(); }

 private:
  PeriodPoint(Eigen::MatrixXcd Z, std::optional<SplitForm> split);
  Eigen::MatrixXcd Z_;
  std::optional<SplitForm> split_;
  double lambda_min_ = 0;
};

inline std::complex<double> paper_k() { return {1.0, std::sqrt(1.0 / 3.0)}; }

}  // namespace thetanorm
