#include "hff/labels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hff/errors.hpp"

namespace hff {

std::string_view to_string(FunctionKind kind) noexcept {
  switch (kind) {
    case FunctionKind::exp_neg_beta: return "exp";
    case FunctionKind::cosine: return "cos";
    case FunctionKind::sine: return "sin";
    case FunctionKind::fourier_series: return "fourier";
    case FunctionKind::step: return "step";
  }
  return "exp";
}

FunctionKind parse_function_kind(std::string_view name) {
  if (name == "exp") return FunctionKind::exp_neg_beta;
  if (name == "cos") return FunctionKind::cosine;
  if (name == "sin") return FunctionKind::sine;
  if (name == "fourier") return FunctionKind::fourier_series;
  if (name == "step") return FunctionKind::step;
  throw ConfigError("unknown target function \"" + std::string(name) + "\"");
}

double fourier_basis(int k, double x, double C) noexcept {
  if (k % 2 == 0) return std::cos((k / 2) * std::numbers::pi * x / C);
  return -std::sin(((k + 1) / 2) * std::numbers::pi * x / C);
}

namespace {

double sup_norm_of(FunctionKind kind, double parameter, const std::vector<double>& coefficients, double C) {
  switch (kind) {
    case FunctionKind::exp_neg_beta: return std::exp(std::abs(parameter) * C);
    case FunctionKind::cosine: return 1.0;
    case FunctionKind::sine:
      return std::abs(parameter) * C >= std::numbers::pi / 2 ? 1.0 : std::sin(std::abs(parameter) * C);
    case FunctionKind::step: return parameter <= C ? 1.0 : 0.0;
    case FunctionKind::fourier_series: {
      double s = 0.0;
      for (double c : coefficients) s += std::abs(c);
      return s;
    }
  }
  return 0.0;
}

}  // namespace

FunctionSpec::FunctionSpec(FunctionKind kind, double parameter, std::vector<double> coefficients, double C)
    : kind_(kind), parameter_(parameter), coefficients_(std::move(coefficients)), C_(C) {
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("domain bound C must be positive");
  if (!std::isfinite(parameter)) throw ConfigError("function parameter must be finite");
  sup_norm_ = sup_norm_of(kind_, parameter_, coefficients_, C_);
}

FunctionSpec FunctionSpec::exp_neg_beta(double beta, double C) {
  return FunctionSpec(FunctionKind::exp_neg_beta, beta, {}, C);
}

FunctionSpec FunctionSpec::cosine(double t, double C) { return FunctionSpec(FunctionKind::cosine, t, {}, C); }

FunctionSpec FunctionSpec::sine(double t, double C) { return FunctionSpec(FunctionKind::sine, t, {}, C); }

FunctionSpec FunctionSpec::fourier_series(std::vector<double> coefficients, double C) {
  if (coefficients.size() % 2 != 1) {
    throw InvalidDimension("Fourier series needs 2K + 1 coefficients");
  }
  return FunctionSpec(FunctionKind::fourier_series, 0.0, std::move(coefficients), C);
}

FunctionSpec FunctionSpec::step(double threshold, double C) {
  return FunctionSpec(FunctionKind::step, threshold, {}, C);
}

std::optional<double> FunctionSpec::truncation_error(int K) const noexcept {
  if (kind_ == FunctionKind::fourier_series && coefficients_.size() <= static_cast<std::size_t>(2 * K + 1)) {
    return 0.0;
  }
  return std::nullopt;
}

std::optional<double> FunctionSpec::coefficient_norm() const noexcept {
  if (kind_ != FunctionKind::fourier_series) return std::nullopt;
  double s = 0.0;
  for (double c : coefficients_) s += c * c;
  return std::sqrt(s);
}

double FunctionSpec::evaluate(double x) const {
  if (!(std::abs(x) <= C_ * (1.0 + 1e-9))) {
    throw DomainError("f evaluated at " + std::to_string(x) + ", outside [-C, C] with C = " +
                      std::to_string(C_));
  }
  switch (kind_) {
    case FunctionKind::exp_neg_beta: return std::exp(-parameter_ * x);
    case FunctionKind::cosine: return std::cos(parameter_ * x);
    case FunctionKind::sine: return std::sin(parameter_ * x);
    case FunctionKind::step: return x >= parameter_ ? 1.0 : 0.0;
    case FunctionKind::fourier_series: {
      double s = 0.0;
      for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        s += coefficients_[k] * fourier_basis(static_cast<int>(k), x, C_);
      }
      return s;
    }
  }
  return 0.0;
}

double eval_f(const FunctionSpec& f, double x) { return f.evaluate(x); }

double label(const StateSpectrum& spectrum, const FunctionSpec& f) {
  double y = 0.0;
  for (std::size_t l = 0; l < spectrum.eigenvalues.size(); ++l) {
    y += spectrum.weights[l] * f.evaluate(spectrum.eigenvalues[l]);
  }
  return y;
}

double label(const SpectralCache& cache, const StateVector& psi, const FunctionSpec& f) {
  return label(cache.spectrum(psi.amplitudes()), f);
}

}  // namespace hff
