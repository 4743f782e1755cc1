#include "hff/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hff/errors.hpp"
#include "hff/random.hpp"

namespace hff {

DesignMatrix::DesignMatrix(Eigen::MatrixXd rows, Eigen::VectorXd targets)
    : rows_(std::move(rows)), targets_(std::move(targets)) {
  if (rows_.rows() != targets_.size()) {
    throw InvalidDimension("design matrix has " + std::to_string(rows_.rows()) + " rows but " +
                           std::to_string(targets_.size()) + " targets");
  }
  if (!rows_.allFinite() || !targets_.allFinite()) {
    throw DomainError("design matrix contains non-finite entries");
  }
}

namespace {

Eigen::MatrixXd stack_rows(std::span<const FeatureVector> features) {
  const std::size_t width = features.empty() ? 0 : features.front().size();
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(features.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != width) throw InvalidDimension("feature rows differ in length");
    for (std::size_t k = 0; k < width; ++k) {
      rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = features[i][k];
    }
  }
  return rows;
}

}  // namespace

DesignMatrix::DesignMatrix(std::span<const FeatureVector> features, std::span<const double> targets)
    : DesignMatrix(stack_rows(features),
                   Eigen::Map<const Eigen::VectorXd>(targets.data(), static_cast<Eigen::Index>(targets.size()))) {}

DesignMatrix DesignMatrix::subset(std::span<const std::size_t> indices) const {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(indices.size()), rows_.cols());
  Eigen::VectorXd targets(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto src = static_cast<Eigen::Index>(indices[i]);
    if (src >= rows_.rows()) throw InvalidDimension("subset index out of range");
    rows.row(static_cast<Eigen::Index>(i)) = rows_.row(src);
    targets[static_cast<Eigen::Index>(i)] = targets_[src];
  }
  return DesignMatrix(std::move(rows), std::move(targets));
}

DesignMatrix DesignMatrix::with_targets(Eigen::VectorXd targets) const {
  return DesignMatrix(rows_, std::move(targets));
}

std::string_view to_string(FitMethod method) noexcept {
  switch (method) {
    case FitMethod::ols: return "ols";
    case FitMethod::ridge: return "ridge";
    case FitMethod::constrained: return "constrained";
  }
  return "ols";
}

FitMethod parse_fit_method(std::string_view name) {
  if (name == "ols") return FitMethod::ols;
  if (name == "ridge") return FitMethod::ridge;
  if (name == "constrained") return FitMethod::constrained;
  throw ConfigError("unknown regression method \"" + std::string(name) + "\"");
}

Eigen::VectorXd RegressionModel::predict(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != weights.size()) {
    throw InvalidDimension("model has " + std::to_string(weights.size()) + " weights, rows have " +
                           std::to_string(rows.cols()) + " columns");
  }
  return rows * weights;
}

namespace {

/// Thin SVD of X with the projected targets U^T y, reused along the ridge path.
class RidgePath {
 public:
  explicit RidgePath(const DesignMatrix& data) {
    if (data.num_samples() == 0) throw InvalidDimension("cannot fit a model to an empty data set");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(data.rows(), Eigen::ComputeThinU | Eigen::ComputeThinV);
    singular_ = svd.singularValues();
    v_ = svd.matrixV();
    projected_ = svd.matrixU().transpose() * data.targets();
    const double largest = singular_.size() ? singular_[0] : 0.0;
    cutoff_ = largest * std::numeric_limits<double>::epsilon() *
              static_cast<double>(std::max(data.rows().rows(), data.rows().cols()));
  }

  Eigen::VectorXd minimum_norm() const {
    Eigen::VectorXd scaled = Eigen::VectorXd::Zero(singular_.size());
    for (Eigen::Index i = 0; i < singular_.size(); ++i) {
      if (singular_[i] > cutoff_) scaled[i] = projected_[i] / singular_[i];
    }
    return v_ * scaled;
  }

  Eigen::VectorXd ridge(double alpha) const {
    if (alpha == 0.0) return minimum_norm();
    Eigen::VectorXd scaled(singular_.size());
    for (Eigen::Index i = 0; i < singular_.size(); ++i) {
      const double s = singular_[i];
      scaled[i] = s * projected_[i] / (s * s + alpha);
    }
    return v_ * scaled;
  }

  double largest_singular() const { return singular_.size() ? singular_[0] : 0.0; }

 private:
  Eigen::VectorXd singular_;
  Eigen::MatrixXd v_;
  Eigen::VectorXd projected_;
  double cutoff_ = 0.0;
};

}  // namespace

RegressionModel fit_ols(const DesignMatrix& data) {
  RidgePath path(data);
  return RegressionModel{path.minimum_norm(), std::nullopt, FitMethod::ols, 0.0};
}

RegressionModel fit_ridge(const DesignMatrix& data, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("ridge parameter must be >= 0");
  RidgePath path(data);
  return RegressionModel{path.ridge(alpha), std::nullopt, FitMethod::ridge, alpha};
}

RegressionModel fit_constrained(const DesignMatrix& data, double norm_budget) {
  if (!(norm_budget > 0.0) || !std::isfinite(norm_budget)) throw DomainError("norm budget W must be > 0");
  RidgePath path(data);
  Eigen::VectorXd w = path.minimum_norm();
  if (w.norm() <= norm_budget) {
    return RegressionModel{std::move(w), norm_budget, FitMethod::constrained, 0.0};
  }

  constexpr double kRelativeTolerance = 1e-8;
  constexpr int kMaxIterations = 400;
  // Bracket the boundary, then bisect geometrically.
  double lo = 0.0;
  double hi = std::max(path.largest_singular() * path.largest_singular(), 1e-300);
  Eigen::VectorXd w_hi = path.ridge(hi);
  for (int i = 0; w_hi.norm() > norm_budget; ++i) {
    if (i == kMaxIterations) throw NumericalError("failed to bracket the constrained ridge parameter");
    lo = hi;
    hi *= 2.0;
    w_hi = path.ridge(hi);
  }
  for (int i = 0; i < kMaxIterations; ++i) {
    if (norm_budget - w_hi.norm() <= kRelativeTolerance * norm_budget) {
      return RegressionModel{std::move(w_hi), norm_budget, FitMethod::constrained, hi};
    }
    const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
    if (mid <= lo || mid >= hi) break;
    Eigen::VectorXd w_mid = path.ridge(mid);
    if (w_mid.norm() > norm_budget) {
      lo = mid;
    } else {
      hi = mid;
      w_hi = std::move(w_mid);
    }
  }
  throw NumericalError("constrained fit did not converge");
}

double empirical_loss(const Eigen::VectorXd& weights, const DesignMatrix& data) {
  if (data.num_samples() == 0) throw InvalidDimension("empirical loss of an empty data set");
  return (data.targets() - data.rows() * weights).squaredNorm() / static_cast<double>(data.num_samples());
}

Metrics evaluate(const RegressionModel& model, const DesignMatrix& test, std::size_t n_train) {
  if (test.num_samples() == 0) throw InvalidDimension("cannot evaluate on an empty test set");
  const Eigen::VectorXd residual = test.targets() - model.predict(test.rows());
  const double ss_res = residual.squaredNorm();
  const double mean = test.targets().mean();
  const double ss_tot = (test.targets().array() - mean).square().sum();
  Metrics m;
  m.mse = ss_res / static_cast<double>(test.num_samples());
  if (ss_tot > 0.0) m.r2 = 1.0 - ss_res / ss_tot;
  m.n_train = n_train;
  m.n_test = test.num_samples();
  return m;
}

Split train_test_split(std::size_t n, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ConfigError("split must lie in (0, 1)");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_substream(seed, StreamRole::split);
  std::shuffle(order.begin(), order.end(), rng);
  auto n_train = static_cast<std::size_t>(std::ceil(train_fraction * static_cast<double>(n) - 1e-9));
  n_train = std::min(n_train, n);
  Split split;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  return split;
}

}  // namespace hff
