#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hff/evolution.hpp"
#include "hff/hamiltonians.hpp"
#include "hff/random.hpp"
#include "hff/states.hpp"

namespace hff {

enum class FeatureBackend { exact, hadamard_shots, overlap_shots };

std::string_view to_string(FeatureBackend backend) noexcept;
FeatureBackend parse_backend(std::string_view name);

/**
 * @brief Largest possible |x_k| - 1 produced by a backend's estimator.
 *
 * Hadamard-test means stay in [-1, 1]. The overlap route rotates a point of the
 * square [-1, 1]^2 by e^{-i lambda_ref t}, so a component can reach sqrt(2).
 */
double shot_slack(FeatureBackend backend) noexcept;

struct FeatureMapConfig {
  int K = 11;
  double C = 3.0;
  FeatureBackend backend = FeatureBackend::exact;
  // Shots per estimated circuit; empty means the infinite-shot limit.
  std::optional<std::int64_t> shots;
  // Absent means exact e^{-iHt}.
  std::optional<TrotterSchedule> schedule;
  std::uint64_t seed = 0;

  std::size_t length() const noexcept { return static_cast<std::size_t>(2 * K + 1); }
  // t_l = l pi / C
  double time(int l) const noexcept;
  void validate() const;
};

/**
 * @brief Hamiltonian Fourier features x_0..x_{2K}.
 *
 * Even k holds Re A(t_{k/2}), odd k holds Im A(t_{(k+1)/2}), where
 * A(t) = Tr[e^{-iHt} rho]. There is no l = 0 sine entry.
 */
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::vector<double> values);

  // Builds the interleaved vector from A(t_0)..A(t_K).
  static FeatureVector from_amplitudes(std::span<const Complex> amplitudes);

  int order() const noexcept { return static_cast<int>(values_.size() / 2); }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_.at(k); }
  double cos_part(int l) const { return values_.at(static_cast<std::size_t>(2 * l)); }
  double sin_part(int l) const { return values_.at(static_cast<std::size_t>(2 * l - 1)); }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

void check_spectral_bound(const CouplingSpec& spec, double C);

FeatureVector exact_features(const SpectralCache& cache, const StateVector& psi,
                             const FeatureMapConfig& cfg);
FeatureVector exact_features(const StateSpectrum& spectrum, const FeatureMapConfig& cfg);

/// w_+, w_-, w_{+i}, w_{-i} for one evolution time.
struct OverlapProbabilities {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double w_plus_i = 0.0;
  double w_minus_i = 0.0;
  double t = 0.0;
  double lambda_ref = 0.0;

  double get(Phase phase) const noexcept;
  void set(Phase phase, double value) noexcept;
};

// |r +- A|^2 / 4 and |r -+ iA|^2 / 4 with r = e^{-i lambda_ref t}.
OverlapProbabilities overlaps_from_amplitude(Complex a, double lambda_ref, double t);

// Requires psi orthogonal to the reference basis state.
OverlapProbabilities exact_overlaps(const SpectralCache& cache, const StateVector& psi,
                                    const ReferenceEigenstate& ref, double t);

/**
 * @brief Overlaps measured on an explicitly evolved |psi_+>.
 *
 * `evolved_plus` is U |psi_+> for whichever propagator U is in use; the
 * result is |<psi_phase| evolved_plus>|^2 for the four phases.
 */
OverlapProbabilities project_overlaps(const StateVector& evolved_plus, const StateVector& psi,
                                      const ReferenceEigenstate& ref, double t);

// [w_+ - w_- + i (w_{+i} - w_{-i})] e^{-i lambda_ref t}
Complex reconstruct_amplitude(const OverlapProbabilities& w) noexcept;

// Four independent binomial frequencies with n_shot trials each.
OverlapProbabilities sample_overlaps(const OverlapProbabilities& w, std::int64_t n_shot, Rng& rng);
// As above, with one substream per circuit drawn from (seed, sample, l).
OverlapProbabilities sample_overlaps(const OverlapProbabilities& w, std::int64_t n_shot,
                                     std::uint64_t seed, std::uint64_t sample, int l);

enum class Quadrature { real, imag };

// Mean of n_shot +-1 outcomes with P(+1) = (1 + v) / 2, v the chosen part of a.
double hadamard_estimate(Complex a, Quadrature part, std::int64_t n_shot, Rng& rng);

/**
 * @brief Features from a shot-based estimator.
 *
 * For each l the amplitude at t_l comes from exact or Trotterized evolution,
 * then the configured estimator is sampled. Circuits draw from independent
 * substreams keyed on (cfg.seed, sample_index, l, circuit), so the output is
 * reproducible regardless of evaluation order.
 */
FeatureVector noisy_features(const SpectralCache& cache, const StateVector& psi,
                             const ReferenceEigenstate& ref, const FeatureMapConfig& cfg,
                             std::uint64_t sample_index = 0);

// Noiseless or sampled overlaps for every l, as used by the scatter export.
std::vector<OverlapProbabilities> feature_overlaps(const SpectralCache& cache,
                                                   const StateVector& psi,
                                                   const ReferenceEigenstate& ref,
                                                   const FeatureMapConfig& cfg);

}  // namespace hff
