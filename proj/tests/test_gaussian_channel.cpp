#include <doctest.h>

#include "bqec/gaussian_channel.hpp"
#include "bqec/shift.hpp"

using namespace bqec;

namespace {
double max_abs_diff(const GaussianChannelSpec& a, const GaussianChannelSpec& b) {
  double m = (a.T - b.T).cwiseAbs().maxCoeff();
  m = std::max(m, (a.N - b.N).cwiseAbs().maxCoeff());
  m = std::max(m, (a.d - b.d).cwiseAbs().maxCoeff());
  return m;
}
}  // namespace

TEST_CASE("named channel blocks") {
  auto pl = pure_loss_channel(1.0);
  CHECK(max_abs_diff(pl, GaussianChannelSpec::identity(1)) == 0.0);

  auto tl = thermal_loss_channel(0.7, 2.0);
  CHECK(tl.T(0, 0) == doctest::Approx(std::sqrt(0.7)));
  CHECK(tl.N(0, 0) == doctest::Approx(0.3 * 2.5));
  CHECK(tl.N(1, 1) == doctest::Approx(0.3 * 2.5));
  CHECK(tl.N(0, 1) == 0.0);

  auto an = additive_noise_channel(0.25);
  CHECK(an.T(0, 0) == 1.0);
  CHECK(an.N(0, 0) == doctest::Approx(0.0625));

  auto amp = quantum_limited_amp_channel(2.0);
  CHECK(amp.T(0, 0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(amp.N(0, 0) == doctest::Approx(0.5));
  tl.validate();
  an.validate();
  amp.validate();
  CHECK_THROWS_AS(thermal_loss_channel(1.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(noisy_amp_channel(0.5, 0.0), std::domain_error);
}

TEST_CASE("loss then amplification equals an additive shift of variance (1-eta)/eta") {
  for (double eta : {0.3, 0.5, 0.9, 0.99}) {
    auto post = compose(pure_loss_channel(eta), quantum_limited_amp_channel(1.0 / eta));
    auto expect = additive_noise_channel(std::sqrt(loss_to_shift_post_amp(eta)));
    CHECK(max_abs_diff(post, expect) < 1e-12);

    // Pre-amplified order: variance (1-eta) at n_th = 0.
    auto pre = compose(quantum_limited_amp_channel(1.0 / eta), pure_loss_channel(eta));
    auto expect_pre = additive_noise_channel(std::sqrt(1.0 - eta));
    CHECK(max_abs_diff(pre, expect_pre) < 1e-12);

    // And (1-eta)(n_th+1) with a thermal environment.
    double n_th = 1.7;
    auto pre_th = compose(quantum_limited_amp_channel(1.0 / eta), thermal_loss_channel(eta, n_th));
    auto expect_th =
        additive_noise_channel(std::sqrt(thermal_loss_to_shift_pre_amp(eta, n_th)));
    CHECK(max_abs_diff(pre_th, expect_th) < 1e-12);
  }
}

TEST_CASE("compose with identity and associativity") {
  auto x = thermal_loss_channel(0.8, 0.4);
  auto id = GaussianChannelSpec::identity(1);
  CHECK(max_abs_diff(compose(x, id), x) < 1e-15);
  CHECK(max_abs_diff(compose(id, x), x) < 1e-15);

  auto a = pure_loss_channel(0.9);
  auto b = noisy_amp_channel(1.3, 0.2);
  auto c = additive_noise_channel(0.15);
  auto left = compose(compose(a, b), c);
  auto right = compose(a, compose(b, c));
  CHECK(max_abs_diff(left, right) < 1e-12);
}

TEST_CASE("compose rejects mode mismatch") {
  CHECK_THROWS_AS(compose(pure_loss_channel(0.9, 1), pure_loss_channel(0.9, 2)),
                  std::invalid_argument);
}
