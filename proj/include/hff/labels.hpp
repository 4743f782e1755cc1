#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hff/hamiltonians.hpp"
#include "hff/states.hpp"

namespace hff {

enum class FunctionKind { exp_neg_beta, cosine, sine, fourier_series, step };

std::string_view to_string(FunctionKind kind) noexcept;
FunctionKind parse_function_kind(std::string_view name);

/**
 * Basis function matched to the feature ordering: cos(l pi x / C) for k = 2l and
 * -sin(l pi x / C) for k = 2l - 1, so that Tr[phi_k(H) rho] = x_k.
 */
double fourier_basis(int k, double x, double C) noexcept;

/**
 * @brief Target function f : [-C, C] -> R.
 *
 * `sup_norm()` is exact for the closed-form kinds. For a Fourier series it is
 * the certified bound sum_k |c_k|.
 */
class FunctionSpec {
 public:
  static FunctionSpec exp_neg_beta(double beta, double C);
  static FunctionSpec cosine(double t, double C);
  static FunctionSpec sine(double t, double C);
  // g(x) = sum_k c_k fourier_basis(k, x, C); needs an odd number of coefficients.
  static FunctionSpec fourier_series(std::vector<double> coefficients, double C);
  // 1 for x >= threshold, else 0.
  static FunctionSpec step(double threshold, double C);

  FunctionKind kind() const noexcept { return kind_; }
  // beta, t or threshold; unused for Fourier series.
  double parameter() const noexcept { return parameter_; }
  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  double domain_bound() const noexcept { return C_; }
  double sup_norm() const noexcept { return sup_norm_; }
  // Known sup-norm truncation error at order K (zero for a Fourier series of order <= K).
  std::optional<double> truncation_error(int K) const noexcept;
  // l2 norm of the coefficients, when the function is a Fourier series.
  std::optional<double> coefficient_norm() const noexcept;

  double evaluate(double x) const;

 private:
  FunctionSpec(FunctionKind kind, double parameter, std::vector<double> coefficients, double C);

  FunctionKind kind_;
  double parameter_;
  std::vector<double> coefficients_;
  double C_;
  double sup_norm_;
};

// Throws DomainError for x outside [-C, C] (with 1e-9 relative slack for rounding).
double eval_f(const FunctionSpec& f, double x);

// y = Tr[f(H) rho] = sum_l p_l f(lambda_l)
double label(const StateSpectrum& spectrum, const FunctionSpec& f);
double label(const SpectralCache& cache, const StateVector& psi, const FunctionSpec& f);

}  // namespace hff
