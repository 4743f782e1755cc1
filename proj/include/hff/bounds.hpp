#pragma once

#include <cstdint>

namespace hff {

/// Inputs to the generalization bounds. log is natural throughout.
struct BoundInputs {
  int K = 0;
  double W = 0.0;       // weight-norm budget
  double f_inf = 0.0;   // sup-norm of the target function
  std::int64_t N_d = 1;
  double delta = 0.1;   // failure probability
  double eps_K = 0.0;   // Fourier truncation error
  double eta = 0.0;     // per-feature noise level

  void validate() const;
};

/// Itemized expected-loss bound for the norm-constrained least-squares fit.
struct LossBound {
  double truncation = 0.0;    // eps_K^2
  double complexity = 0.0;    // 4 (sqrt(2K+1) W + f_inf) W sqrt((2K+1) / N_d)
  double confidence = 0.0;    // 3 (sqrt(2K+1) W + f_inf)^2 sqrt(log(2/delta) / (2 N_d))
  double noise_linear = 0.0;  // 4 eta W sqrt(2K+1) (f_inf + W sqrt(2K+1))
  double noise_quadratic = 0.0;  // 2 eta^2 W^2 (2K+1)

  double total() const noexcept {
    return truncation + complexity + confidence + noise_linear + noise_quadratic;
  }
};

// Noiseless features: noise terms are zero.
LossBound expected_loss_bound(const BoundInputs& b);
// Features with additive noise of magnitude at most eta per entry.
LossBound noisy_expected_loss_bound(const BoundInputs& b);

double expected_loss_rhs(const BoundInputs& b);
double noisy_expected_loss_rhs(const BoundInputs& b);

struct SampleComplexity {
  std::int64_t K = 0;
  std::int64_t N_d = 0;
};

/**
 * Order and sample count for a Lipschitz target with loss target epsilon:
 * K = ceil(log(1/eps) / eps), N_d = ceil((W f_inf log(1/eps) / eps)^4).
 * The asymptotic constants are taken to be 1.
 */
SampleComplexity lipschitz_sample_complexity(double epsilon, double W, double f_inf);

/**
 * Shots per +-1 estimator so that all 2K + 1 features are within eta with
 * probability 1 - delta: ceil((2 / eta^2) log(2 (2K + 1) / delta)), from the
 * tail 2 exp(-N eta^2 / 2) and a union bound.
 */
std::int64_t hoeffding_shots(double eta, double delta, int K);

}  // namespace hff
