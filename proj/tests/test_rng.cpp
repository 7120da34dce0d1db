#include <doctest.h>

#include "bqec/rng.hpp"

using namespace bqec;

TEST_CASE("fixed seed gives a bit-identical sequence") {
  Rng a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(42, 7), d(42, 8);
  bool same = true;
  for (int i = 0; i < 16; ++i) same = same && (c.next_u64() == d.next_u64());
  CHECK_FALSE(same);
}

TEST_CASE("normal moments") {
  Rng rng(1);
  const long n = 400000;
  double s = 0, s2 = 0;
  for (long i = 0; i < n; ++i) {
    double x = rng.normal();
    s += x;
    s2 += x * x;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("sample_gaussian: zero covariance gives the zero vector") {
  Rng rng(3);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(3, 3);
  CHECK(sample_gaussian(rng, cov).norm() == 0.0);
}

TEST_CASE("sample_gaussian: sample covariance of the gate-noise matrix") {
  // cov = sigma_c^2 [[1, 1/2], [1/2, 4/3]]
  const double sc2 = 0.3;
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 0.5, 0.5, 4.0 / 3.0;
  cov *= sc2;
  Rng rng(11);
  const long n = 1000000;
  double m00 = 0, m01 = 0, m11 = 0;
  for (long i = 0; i < n; ++i) {
    Eigen::VectorXd v = sample_gaussian(rng, cov);
    m00 += v[0] * v[0];
    m01 += v[0] * v[1];
    m11 += v[1] * v[1];
  }
  CHECK(m00 / n == doctest::Approx(cov(0, 0)).epsilon(0.01));
  CHECK(m01 / n == doctest::Approx(cov(0, 1)).epsilon(0.01));
  CHECK(m11 / n == doctest::Approx(cov(1, 1)).epsilon(0.01));
}

TEST_CASE("sample_gaussian rejects indefinite matrices") {
  Rng rng(5);
  Eigen::MatrixXd cov(2, 2);
  cov << 1.0, 2.0, 2.0, 1.0;
  CHECK_THROWS_AS(sample_gaussian(rng, cov), std::invalid_argument);
}

TEST_CASE("cholesky2 reproduces the covariance") {
  double f[3];
  cholesky2(4.0 / 3.0, -0.5, 1.0, f);
  CHECK(f[0] * f[0] == doctest::Approx(4.0 / 3.0));
  CHECK(f[0] * f[1] == doctest::Approx(-0.5));
  CHECK(f[1] * f[1] + f[2] * f[2] == doctest::Approx(1.0));
}
