#include <doctest.h>

#include <Eigen/Dense>
#include <complex>

#include "thetanorm/rank.hpp"

using namespace thetanorm;
using cd = std::complex<double>;

namespace {

Eigen::MatrixXcd diag(std::initializer_list<double> xs) {
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(xs.size(), xs.size());
  int i = 0;
  for (double x : xs) M(i, i) = x, ++i;
  return M;
}

}  // namespace

TEST_CASE("tolerance validation") {
  RankTolerances good;
  CHECK_NOTHROW(good.validate());
  RankTolerances bad = good;
  bad.reject = bad.accept;  // band must be open
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = good;
  bad.reject = 0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = good;
  bad.rank_tol = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  CHECK_THROWS_AS(numeric_rank(Eigen::MatrixXcd::Identity(2, 2), 0, good),
                  std::domain_error);
}

TEST_CASE("clear full and deficient spectra") {
  RankTolerances tols;

  RankReport full = numeric_rank(diag({2.0, 1.5, 1.0}), 3, tols);
  CHECK(full.rank == 3);
  CHECK(full.gap == doctest::Approx(0.5));
  CHECK(full.status == RankStatus::full);
  REQUIRE(full.sigma.size() == 3);
  CHECK(full.sigma[0] == doctest::Approx(2.0));
  CHECK(full.sigma[2] == doctest::Approx(1.0));

  RankReport def = numeric_rank(diag({1.0, 1.0, 0.0}), 3, tols);
  CHECK(def.rank == 2);
  CHECK(def.gap == 0.0);
  CHECK(def.status == RankStatus::deficient);

  RankReport zero = numeric_rank(Eigen::MatrixXcd::Zero(3, 4), 3, tols);
  CHECK(zero.rank == 0);
  CHECK(zero.gap == 0.0);
  CHECK(zero.status == RankStatus::deficient);
  CHECK(zero.sigma == std::vector<double>(3, 0.0));
}

TEST_CASE("fewer rows than target pads sigma with zeros") {
  RankTolerances tols;
  Eigen::MatrixXcd M(2, 4);
  M.setZero();
  M(0, 0) = 3.0;
  M(1, 1) = 2.0;
  RankReport rep = numeric_rank(M, 4, tols);
  REQUIRE(rep.sigma.size() == 4);
  CHECK(rep.sigma[2] == 0.0);
  CHECK(rep.sigma[3] == 0.0);
  CHECK(rep.rank == 2);
  CHECK(rep.gap == 0.0);
  CHECK(rep.status == RankStatus::deficient);
}

TEST_CASE("band boundaries") {
  RankTolerances tols;  // accept 5e-13, reject 1e-14

  CHECK(numeric_rank(diag({1.0, 1e-12}), 2, tols).status == RankStatus::full);
  CHECK(numeric_rank(diag({1.0, 1e-13}), 2, tols).status == RankStatus::ambiguous);
  CHECK(numeric_rank(diag({1.0, 1e-15}), 2, tols).status == RankStatus::deficient);

  // rank counting is relative over the whole spectrum
  RankReport rep = numeric_rank(diag({1.0, 1e-2, 1e-13, 1e-15}), 2, tols);
  CHECK(rep.rank == 2);
  CHECK(rep.status == RankStatus::full);  // top `target` block is genuinely full
  CHECK(rep.gap == doctest::Approx(1e-2));

  // scale invariance of the certificate
  RankReport scaled = numeric_rank(diag({1e8, 1e-4}), 2, tols);
  CHECK(scaled.status == RankStatus::full);
  CHECK(scaled.gap == doctest::Approx(1e-12).epsilon(1e-6));
}

TEST_CASE("noise floored rank") {
  Eigen::MatrixXcd noise = diag({3e-16, 2e-16, 1e-16});
  // purely relative cutoff would report rank >= 1 on pure noise
  CHECK(noise_floored_rank(noise, 1e-13, 0.0) >= 1);
  CHECK(noise_floored_rank(noise, 1e-13, 1e-12) == 0);

  Eigen::MatrixXcd mixed = diag({1.0, 0.5, 4e-13});
  CHECK(noise_floored_rank(mixed, 1e-13, 1e-12) == 2);
  CHECK(noise_floored_rank(mixed, 1e-15, 0.0) == 3);
  CHECK(noise_floored_rank(Eigen::MatrixXcd(0, 0), 1e-13, 1e-12) == 0);
}
