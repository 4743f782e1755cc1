#include "doctest.h"

#include <algorithm>

#include "hff/errors.hpp"
#include "hff/regression.hpp"

using namespace hff;

namespace {

DesignMatrix line() {
  Eigen::MatrixXd x(2, 1);
  x << 1, 2;
  Eigen::VectorXd y(2);
  y << 2, 4;
  return DesignMatrix(x, y);
}

DesignMatrix random_problem(int rows, int cols, Rng& rng, double noise = 0.3) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd x(rows, cols);
  for (auto& v : x.reshaped()) v = g(rng);
  Eigen::VectorXd w(cols);
  for (auto& v : w) v = 2.0 * g(rng);
  Eigen::VectorXd y = x * w;
  for (auto& v : y) v += noise * g(rng);
  return DesignMatrix(x, y);
}

}  // namespace

TEST_SUITE("regression") {

TEST_CASE("exact line") {
  const auto d = line();
  CHECK(fit_ols(d).weights[0] == doctest::Approx(2.0));
  CHECK(fit_ridge(d, 0.0).weights[0] == doctest::Approx(2.0));
  const auto c = fit_constrained(d, 1.0);
  CHECK(c.weights[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(c.weights.norm() <= 1.0);
  CHECK(fit_constrained(d, 3.0).weights[0] == doctest::Approx(2.0));
  CHECK(empirical_loss(fit_ols(d).weights, d) <= 1e-20);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(DesignMatrix(Eigen::MatrixXd(2, 1), Eigen::VectorXd(3)), InvalidDimension);
  CHECK_THROWS_AS(fit_ridge(line(), -1.0), DomainError);
  CHECK_THROWS_AS(fit_constrained(line(), 0.0), DomainError);
  CHECK_THROWS_AS(parse_fit_method("lasso"), ConfigError);
  CHECK(parse_fit_method("constrained") == FitMethod::constrained);
}

TEST_CASE("least-squares residual is orthogonal to the columns") {
  Rng rng(71);
  for (int rep = 0; rep < 10; ++rep) {
    const auto d = random_problem(40, 7, rng);
    const Eigen::VectorXd r = d.targets() - d.rows() * fit_ols(d).weights;
    CHECK((d.rows().transpose() * r).cwiseAbs().maxCoeff() <= 1e-8);
    // Normal-equations oracle
    const Eigen::VectorXd ne = (d.rows().transpose() * d.rows()).ldlt().solve(d.rows().transpose() * d.targets());
    CHECK((ne - fit_ols(d).weights).norm() <= 1e-10);
  }
}

TEST_CASE("rank-deficient least squares returns the minimum-norm solution") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 1, 2, 2, 3, 3;
  Eigen::VectorXd y(3);
  y << 2, 4, 6;
  const auto w = fit_ols(DesignMatrix(x, y)).weights;
  CHECK(w[0] == doctest::Approx(1.0));
  CHECK(w[1] == doctest::Approx(1.0));
}

TEST_CASE("ridge path") {
  Rng rng(72);
  for (int rep = 0; rep < 5; ++rep) {
    const auto d = random_problem(30, 6, rng);
    const Eigen::MatrixXd& x = d.rows();
    double previous = std::numeric_limits<double>::infinity();
    for (double alpha : {0.0, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1e4}) {
      const auto w = fit_ridge(d, alpha).weights;
      CHECK(w.norm() <= previous);
      previous = w.norm();
      const Eigen::MatrixXd a = x.transpose() * x + alpha * Eigen::MatrixXd::Identity(x.cols(), x.cols());
      CHECK((w - a.ldlt().solve(x.transpose() * d.targets())).norm() <= 1e-9 * (1.0 + w.norm()));
    }
    CHECK(fit_ridge(d, 1e14).weights.norm() < 1e-10);
    CHECK((fit_ridge(d, 0.0).weights - fit_ols(d).weights).norm() <= 1e-10);
  }
}

TEST_CASE("constrained fit beats random feasible points") {
  Rng rng(73);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 10; ++rep) {
    const auto d = random_problem(25, 5, rng);
    const double budget = 0.3 * fit_ols(d).weights.norm();
    const auto model = fit_constrained(d, budget);
    CHECK(model.weights.norm() <= budget);
    CHECK(model.weights.norm() >= budget * (1 - 1e-8));
    const double best = empirical_loss(model.weights, d);
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::VectorXd w(5);
      for (auto& v : w) v = g(rng);
      w *= budget * std::pow(u(rng), 1.0 / 5.0) / w.norm();
      CHECK(best <= empirical_loss(w, d) + 1e-12);
    }
  }
}

TEST_CASE("metrics") {
  const auto d = line();
  RegressionModel perfect{Eigen::VectorXd::Constant(1, 2.0), std::nullopt, FitMethod::ols, 0.0};
  const auto m = evaluate(perfect, d, 5);
  CHECK(m.mse == 0.0);
  CHECK(m.r2.value() == 1.0);
  CHECK(m.n_train == 5);
  CHECK(m.n_test == 2);

  // Predicting the test mean everywhere gives R^2 = 0.
  Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(2, 1);
  RegressionModel mean_model{Eigen::VectorXd::Constant(1, 3.0), std::nullopt, FitMethod::ols, 0.0};
  CHECK(evaluate(mean_model, DesignMatrix(ones, d.targets())).r2.value() == doctest::Approx(0.0));

  const DesignMatrix flat(ones, Eigen::VectorXd::Constant(2, 1.0));
  CHECK_FALSE(evaluate(perfect, flat).r2.has_value());
}

TEST_CASE("split") {
  const auto s = train_test_split(55, 0.8, 0);
  CHECK(s.train.size() == 44);
  CHECK(s.test.size() == 11);
  std::vector<std::size_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
  CHECK(train_test_split(55, 0.8, 0).train == s.train);
  CHECK(train_test_split(55, 0.8, 1).train != s.train);
  CHECK(train_test_split(10, 0.8, 3).train.size() == 8);
  CHECK_THROWS_AS(train_test_split(10, 1.0, 0), ConfigError);
}

TEST_CASE("design matrix from feature rows") {
  const std::vector<FeatureVector> rows = {FeatureVector({1.0, 0.5, -0.5}), FeatureVector({1.0, 0.0, 1.0})};
  const std::vector<double> y = {1.0, 2.0};
  const DesignMatrix d(rows, y);
  CHECK(d.num_samples() == 2);
  CHECK(d.num_features() == 3);
  CHECK(d.gram_trace() == doctest::Approx(1.5 + 2.0));
  const std::vector<std::size_t> pick = {1};
  CHECK(d.subset(pick).rows()(0, 2) == 1.0);
  const std::vector<FeatureVector> ragged = {FeatureVector({1.0}), FeatureVector({1.0, 2.0, 3.0})};
  CHECK_THROWS_AS(DesignMatrix(ragged, y), InvalidDimension);
}

}
