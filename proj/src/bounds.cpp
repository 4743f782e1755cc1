#include "hff/bounds.hpp"

#include <cmath>
#include <limits>

#include "hff/errors.hpp"

namespace hff {

void BoundInputs::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (K < 0) throw DomainError("K must be >= 0");
  if (N_d < 1) throw DomainError("N_d must be >= 1");
  if (!(W >= 0.0) || !(f_inf >= 0.0) || !(eps_K >= 0.0) || !(eta >= 0.0)) {
    throw DomainError("bound magnitudes must be nonnegative");
  }
}

LossBound expected_loss_bound(const BoundInputs& b) {
  b.validate();
  const double dim = 2.0 * b.K + 1.0;
  const double n = static_cast<double>(b.N_d);
  const double range = std::sqrt(dim) * b.W + b.f_inf;
  LossBound out;
  out.truncation = b.eps_K * b.eps_K;
  out.complexity = 4.0 * range * b.W * std::sqrt(dim / n);
  out.confidence = 3.0 * range * range * std::sqrt(std::log(2.0 / b.delta) / (2.0 * n));
  return out;
}

LossBound noisy_expected_loss_bound(const BoundInputs& b) {
  LossBound out = expected_loss_bound(b);
  const double dim = 2.0 * b.K + 1.0;
  out.noise_linear = 4.0 * b.eta * b.W * std::sqrt(dim) * (b.f_inf + b.W * std::sqrt(dim));
  out.noise_quadratic = 2.0 * b.eta * b.eta * b.W * b.W * dim;
  return out;
}

double expected_loss_rhs(const BoundInputs& b) { return expected_loss_bound(b).total(); }

double noisy_expected_loss_rhs(const BoundInputs& b) { return noisy_expected_loss_bound(b).total(); }

SampleComplexity lipschitz_sample_complexity(double epsilon, double W, double f_inf) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("epsilon must lie in (0, 1)");
  if (!(W >= 0.0) || !(f_inf >= 0.0)) throw DomainError("W and f_inf must be nonnegative");
  const double order = std::log(1.0 / epsilon) / epsilon;
  const double samples = std::pow(W * f_inf * order, 4);
  if (!(samples < static_cast<double>(std::numeric_limits<std::int64_t>::max()))) {
    throw DomainError("sample count overflows a 64-bit integer");
  }
  return {static_cast<std::int64_t>(std::ceil(order)), static_cast<std::int64_t>(std::ceil(samples))};
}

std::int64_t hoeffding_shots(double eta, double delta, int K) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("eta must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
  if (K < 0) throw DomainError("K must be >= 0");
  const double shots = 2.0 / (eta * eta) * std::log(2.0 * (2.0 * K + 1.0) / delta);
  return static_cast<std::int64_t>(std::ceil(shots));
}

}  // namespace hff
