#include "doctest.h"

#include <numbers>

#include "hff/errors.hpp"
#include "hff/features.hpp"
#include "hff/labels.hpp"
#include "oracle.hpp"

using namespace hff;

TEST_SUITE("labels") {

TEST_CASE("function kinds") {
  const auto f = FunctionSpec::exp_neg_beta(1.0, 3.0);
  CHECK(f.evaluate(0.0) == 1.0);
  CHECK(eval_f(f, -3.0) == doctest::Approx(20.0855369));
  CHECK(f.sup_norm() == doctest::Approx(std::exp(3.0)));
  CHECK_THROWS_AS(eval_f(f, 3.1), DomainError);
  CHECK_NOTHROW(eval_f(f, 3.0 + 1e-12));

  const auto g = FunctionSpec::fourier_series({0.0, 0.0, 1.0}, 3.0);
  for (double x : {-2.5, 0.3, 1.9}) CHECK(g.evaluate(x) == doctest::Approx(std::cos(std::numbers::pi * x / 3.0)));
  CHECK(g.truncation_error(1) == 0.0);
  CHECK_FALSE(g.truncation_error(0).has_value());
  CHECK_THROWS_AS(FunctionSpec::fourier_series({1.0, 2.0}, 3.0), InvalidDimension);
  CHECK(FunctionSpec::fourier_series({3.0, 0.0, -4.0}, 3.0).coefficient_norm() == doctest::Approx(5.0));

  CHECK(FunctionSpec::step(0.5, 3.0).evaluate(0.5) == 1.0);
  CHECK(FunctionSpec::step(0.5, 3.0).evaluate(0.4) == 0.0);
  CHECK(FunctionSpec::sine(0.2, 3.0).sup_norm() == doctest::Approx(std::sin(0.6)));
  CHECK(FunctionSpec::sine(2.0, 3.0).sup_norm() == 1.0);

  CHECK(parse_function_kind("fourier") == FunctionKind::fourier_series);
  CHECK(to_string(FunctionKind::exp_neg_beta) == "exp");
  CHECK_THROWS_AS(parse_function_kind("gauss"), ConfigError);
}

TEST_CASE("two-qubit thermal-like label") {
  const SpectralCache cache(CouplingSpec(2, {1.0}));
  const auto psi = basis_state(2, "01");
  const double y = label(cache, psi, FunctionSpec::exp_neg_beta(1.0, 3.0));
  CHECK(y == doctest::Approx((std::exp(-1.0) + std::exp(3.0)) / 2.0));
  CHECK(y == doctest::Approx(10.22669).epsilon(1e-5));

  // Dense oracle: <psi| expm(-H) |psi>
  const oracle::Mat h = oracle::heisenberg({1.0});
  const oracle::Mat e = (-h).exp();
  CHECK(y == doctest::Approx(e(1, 1).real()).epsilon(1e-12));
}

TEST_CASE("labels agree with the feature map") {
  Rng rng(61);
  const auto spec = sample_couplings(6, rng);
  const SpectralCache cache(spec);
  const auto psi = basis_state(6, "001110");
  FeatureMapConfig cfg;
  cfg.K = 4;
  const auto x = exact_features(cache, psi, cfg);

  CHECK(label(cache, psi, FunctionSpec::fourier_series({1.0}, 3.0)) == doctest::Approx(1.0));
  for (int l = 1; l <= cfg.K; ++l) {
    const double t = cfg.time(l);
    CHECK(label(cache, psi, FunctionSpec::cosine(t, 3.0)) == doctest::Approx(x.cos_part(l)).epsilon(1e-12));
    CHECK(label(cache, psi, FunctionSpec::sine(t, 3.0)) == doctest::Approx(-x.sin_part(l)).epsilon(1e-12));
  }

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(x.size());
  for (auto& v : c) v = u(rng);
  double dot = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) dot += c[k] * x[k];
  CHECK(label(cache, psi, FunctionSpec::fourier_series(c, 3.0)) == doctest::Approx(dot).epsilon(1e-12));
}

}
