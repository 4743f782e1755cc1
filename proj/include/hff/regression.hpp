#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hff/features.hpp"

namespace hff {

/// N_d feature rows with their targets.
class DesignMatrix {
 public:
  DesignMatrix(Eigen::MatrixXd rows, Eigen::VectorXd targets);
  DesignMatrix(std::span<const FeatureVector> features, std::span<const double> targets);

  std::size_t num_samples() const noexcept { return static_cast<std::size_t>(rows_.rows()); }
  std::size_t num_features() const noexcept { return static_cast<std::size_t>(rows_.cols()); }
  const Eigen::MatrixXd& rows() const noexcept { return rows_; }
  const Eigen::VectorXd& targets() const noexcept { return targets_; }

  // Trace of the linear kernel matrix, sum_i ||x_i||^2.
  double gram_trace() const noexcept { return rows_.squaredNorm(); }

  DesignMatrix subset(std::span<const std::size_t> indices) const;
  DesignMatrix with_targets(Eigen::VectorXd targets) const;

 private:
  Eigen::MatrixXd rows_;
  Eigen::VectorXd targets_;
};

enum class FitMethod { ols, ridge, constrained };

std::string_view to_string(FitMethod method) noexcept;
FitMethod parse_fit_method(std::string_view name);

struct RegressionModel {
  Eigen::VectorXd weights;
  std::optional<double> norm_budget;
  FitMethod method = FitMethod::ols;
  // Ridge parameter that produced the weights (the KKT multiplier for constrained fits).
  double alpha = 0.0;

  Eigen::VectorXd predict(const Eigen::MatrixXd& rows) const;
};

struct Metrics {
  double mse = 0.0;
  // Empty when the test targets have zero variance.
  std::optional<double> r2;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

// Minimum-norm least squares through a rank-revealing SVD.
RegressionModel fit_ols(const DesignMatrix& data);

// argmin ||y - Xw||^2 + alpha ||w||^2, alpha >= 0.
RegressionModel fit_ridge(const DesignMatrix& data, double alpha);

/**
 * @brief argmin ||y - Xw||^2 subject to ||w||_2 <= W.
 *
 * Returns the minimum-norm OLS solution when it is feasible. Otherwise the
 * constraint is active and the ridge parameter is bisected until
 * ||w(alpha)|| matches W to 1e-8 relative; the returned point is always on
 * the feasible side.
 */
RegressionModel fit_constrained(const DesignMatrix& data, double norm_budget);

// Mean squared residual (1/N) ||y - Xw||^2.
double empirical_loss(const Eigen::VectorXd& weights, const DesignMatrix& data);

Metrics evaluate(const RegressionModel& model, const DesignMatrix& test, std::size_t n_train = 0);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded shuffle; the first ceil(train_fraction * n) indices are the training set.
Split train_test_split(std::size_t n, double train_fraction, std::uint64_t seed);

}  // namespace hff
