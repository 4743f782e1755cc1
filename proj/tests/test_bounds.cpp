#include "doctest.h"

#include <cmath>

#include "hff/bounds.hpp"
#include "hff/errors.hpp"

using namespace hff;

namespace {

// Independent scalar evaluation of the noiseless bound.
double scalar_bound(int K, double W, double f, double N, double delta, double eps) {
  const double d = 2.0 * K + 1.0;
  const double b = std::sqrt(d) * W + f;
  return eps * eps + 4.0 * b * W * std::sqrt(d / N) + 3.0 * b * b * std::sqrt(std::log(2.0 / delta) / (2.0 * N));
}

BoundInputs example() {
  BoundInputs b;
  b.K = 1;
  b.W = 1.0;
  b.f_inf = 1.0;
  b.N_d = 100;
  b.delta = 0.1;
  return b;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("noiseless bound") {
  const auto b = example();
  const auto terms = expected_loss_bound(b);
  CHECK(terms.complexity == doctest::Approx(1.89282).epsilon(1e-5));
  CHECK(terms.confidence == doctest::Approx(2.74049).epsilon(1e-4));
  CHECK(expected_loss_rhs(b) == doctest::Approx(4.6333).epsilon(2e-4));
  CHECK(expected_loss_rhs(b) == doctest::Approx(scalar_bound(1, 1, 1, 100, 0.1, 0)).epsilon(1e-14));

  auto scaled = b;
  scaled.N_d = 100'000'000;
  CHECK(expected_loss_rhs(scaled) == doctest::Approx(expected_loss_rhs(b) * 1e-3).epsilon(1e-12));

  auto truncated = b;
  truncated.eps_K = 0.2;
  truncated.N_d = std::int64_t{1} << 60;
  CHECK(expected_loss_rhs(truncated) == doctest::Approx(0.04).epsilon(1e-6));
}

TEST_CASE("noisy bound") {
  auto b = example();
  CHECK(noisy_expected_loss_rhs(b) == expected_loss_rhs(b));
  b.eta = 0.1;
  CHECK(noisy_expected_loss_rhs(b) == doctest::Approx(6.5861).epsilon(2e-4));
  const double s3 = std::sqrt(3.0);
  CHECK(noisy_expected_loss_rhs(b) - expected_loss_rhs(b) ==
        doctest::Approx(4 * 0.1 * s3 * (1 + s3) + 2 * 0.01 * 3).epsilon(1e-12));
  double previous = noisy_expected_loss_rhs(b);
  for (double eta : {0.2, 0.4, 0.8}) {
    b.eta = eta;
    CHECK(noisy_expected_loss_rhs(b) > previous);
    previous = noisy_expected_loss_rhs(b);
  }
}

TEST_CASE("input validation") {
  auto b = example();
  b.N_d = 0;
  CHECK_THROWS(expected_loss_rhs(b));
  b = example();
  b.delta = 1.5;
  CHECK_THROWS(expected_loss_rhs(b));
  b = example();
  b.W = -1;
  CHECK_THROWS(expected_loss_rhs(b));
  CHECK_THROWS(hoeffding_shots(0.0, 0.1, 1));
  CHECK_THROWS(lipschitz_sample_complexity(1.5, 1, 1));
}

TEST_CASE("Hoeffding shots") {
  CHECK(hoeffding_shots(0.05, 0.05, 11) == 5460);
  CHECK(hoeffding_shots(0.1, 0.1, 5) == 1079);
  CHECK(hoeffding_shots(0.1, 0.05, 5) == 1218);
  const double ratio = double(hoeffding_shots(0.025, 0.05, 11)) / double(hoeffding_shots(0.05, 0.05, 11));
  CHECK(ratio == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("Lipschitz sample complexity") {
  const auto s = lipschitz_sample_complexity(0.1, 1.0, 1.0);
  CHECK(s.K == 24);
  const double base = std::log(10.0) / 0.1;
  CHECK(s.N_d == static_cast<std::int64_t>(std::ceil(std::pow(base, 4))));
  CHECK(s.N_d == 281102);
  CHECK(lipschitz_sample_complexity(0.05, 1.0, 1.0).K > 2 * s.K);
  const auto doubled = lipschitz_sample_complexity(0.1, 2.0, 1.0);
  CHECK(double(doubled.N_d) == doctest::Approx(16.0 * std::pow(base, 4)).epsilon(1e-6));
}

}
