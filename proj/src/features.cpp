#include "hff/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hff/errors.hpp"

namespace hff {

std::string_view to_string(FeatureBackend backend) noexcept {
  switch (backend) {
    case FeatureBackend::exact: return "exact";
    case FeatureBackend::hadamard_shots: return "hadamard-shots";
    case FeatureBackend::overlap_shots: return "overlap-shots";
  }
  return "exact";
}

FeatureBackend parse_backend(std::string_view name) {
  if (name == "exact") return FeatureBackend::exact;
  if (name == "hadamard-shots") return FeatureBackend::hadamard_shots;
  if (name == "overlap-shots") return FeatureBackend::overlap_shots;
  throw ConfigError("unknown feature backend \"" + std::string(name) + "\"");
}

double shot_slack(FeatureBackend backend) noexcept {
  return backend == FeatureBackend::overlap_shots ? std::numbers::sqrt2 - 1.0 : 0.0;
}

double FeatureMapConfig::time(int l) const noexcept { return l * std::numbers::pi / C; }

void FeatureMapConfig::validate() const {
  if (K < 0) throw ConfigError("K must be >= 0");
  if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("C must be positive and finite");
  if (shots && *shots < 1) throw ConfigError("shots must be >= 1");
  if (schedule) schedule->check_order(K);
  if (backend == FeatureBackend::exact && schedule) {
    throw ConfigError("the exact backend does not use a Trotter schedule");
  }
}

FeatureVector::FeatureVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() % 2 != 1) throw InvalidDimension("feature vectors have odd length 2K + 1");
}

FeatureVector FeatureVector::from_amplitudes(std::span<const Complex> amplitudes) {
  if (amplitudes.empty()) throw InvalidDimension("need at least the l = 0 amplitude");
  std::vector<double> x(2 * amplitudes.size() - 1);
  x[0] = amplitudes[0].real();
  for (std::size_t l = 1; l < amplitudes.size(); ++l) {
    x[2 * l - 1] = amplitudes[l].imag();
    x[2 * l] = amplitudes[l].real();
  }
  return FeatureVector(std::move(x));
}

void check_spectral_bound(const CouplingSpec& spec, double C) {
  const double bound = spectral_bound(spec);
  if (bound > C * (1.0 + 1e-12)) {
    throw ConfigError("spectral bound " + std::to_string(bound) + " exceeds C = " + std::to_string(C));
  }
}

FeatureVector exact_features(const StateSpectrum& spectrum, const FeatureMapConfig& cfg) {
  std::vector<Complex> amps(static_cast<std::size_t>(cfg.K + 1));
  for (int l = 0; l <= cfg.K; ++l) amps[static_cast<std::size_t>(l)] = spectrum.amplitude(cfg.time(l));
  return FeatureVector::from_amplitudes(amps);
}

FeatureVector exact_features(const SpectralCache& cache, const StateVector& psi,
                             const FeatureMapConfig& cfg) {
  cfg.validate();
  check_spectral_bound(cache.spec(), cfg.C);
  return exact_features(cache.spectrum(psi.amplitudes()), cfg);
}

double OverlapProbabilities::get(Phase phase) const noexcept {
  switch (phase) {
    case Phase::plus: return w_plus;
    case Phase::minus: return w_minus;
    case Phase::plus_i: return w_plus_i;
    case Phase::minus_i: return w_minus_i;
  }
  return 0.0;
}

void OverlapProbabilities::set(Phase phase, double value) noexcept {
  switch (phase) {
    case Phase::plus: w_plus = value; break;
    case Phase::minus: w_minus = value; break;
    case Phase::plus_i: w_plus_i = value; break;
    case Phase::minus_i: w_minus_i = value; break;
  }
}

OverlapProbabilities overlaps_from_amplitude(Complex a, double lambda_ref, double t) {
  const Complex r = std::polar(1.0, -lambda_ref * t);
  const Complex i{0.0, 1.0};
  OverlapProbabilities w;
  w.w_plus = std::norm(r + a) / 4.0;
  w.w_minus = std::norm(r - a) / 4.0;
  w.w_plus_i = std::norm(r - i * a) / 4.0;
  w.w_minus_i = std::norm(r + i * a) / 4.0;
  w.t = t;
  w.lambda_ref = lambda_ref;
  return w;
}

namespace {

void check_orthogonal(const StateVector& psi, const ReferenceEigenstate& ref) {
  if (std::abs(psi[ref.bitstring]) > kNormTolerance) {
    throw PreconditionError("state is not orthogonal to the reference eigenstate");
  }
}

constexpr Phase kPhases[] = {Phase::plus, Phase::minus, Phase::plus_i, Phase::minus_i};

}  // namespace

OverlapProbabilities exact_overlaps(const SpectralCache& cache, const StateVector& psi,
                                    const ReferenceEigenstate& ref, double t) {
  check_orthogonal(psi, ref);
  return overlaps_from_amplitude(amplitude(cache, psi, t), ref.eigenvalue, t);
}

OverlapProbabilities project_overlaps(const StateVector& evolved_plus, const StateVector& psi,
                                      const ReferenceEigenstate& ref, double t) {
  check_orthogonal(psi, ref);
  const StateVector ref_state = basis_state(psi.num_qubits(), ref.bitstring);
  OverlapProbabilities w;
  for (Phase phase : kPhases) {
    w.set(phase, std::norm(inner(superpose(ref_state, psi, phase), evolved_plus)));
  }
  w.t = t;
  w.lambda_ref = ref.eigenvalue;
  return w;
}

Complex reconstruct_amplitude(const OverlapProbabilities& w) noexcept {
  return Complex(w.w_plus - w.w_minus, w.w_plus_i - w.w_minus_i) * std::polar(1.0, -w.lambda_ref * w.t);
}

namespace {

double sample_frequency(double p, std::int64_t n_shot, Rng& rng) {
  std::binomial_distribution<std::int64_t> draw(n_shot, std::clamp(p, 0.0, 1.0));
  return static_cast<double>(draw(rng)) / static_cast<double>(n_shot);
}

}  // namespace

OverlapProbabilities sample_overlaps(const OverlapProbabilities& w, std::int64_t n_shot, Rng& rng) {
  if (n_shot < 1) throw ConfigError("shots must be >= 1");
  OverlapProbabilities out = w;
  for (Phase phase : kPhases) out.set(phase, sample_frequency(w.get(phase), n_shot, rng));
  return out;
}

OverlapProbabilities sample_overlaps(const OverlapProbabilities& w, std::int64_t n_shot,
                                     std::uint64_t seed, std::uint64_t sample, int l) {
  if (n_shot < 1) throw ConfigError("shots must be >= 1");
  OverlapProbabilities out = w;
  std::uint64_t circuit = 0;
  for (Phase phase : kPhases) {
    Rng rng = make_substream(seed, StreamRole::shots, sample, static_cast<std::uint64_t>(l), circuit++);
    out.set(phase, sample_frequency(w.get(phase), n_shot, rng));
  }
  return out;
}

double hadamard_estimate(Complex a, Quadrature part, std::int64_t n_shot, Rng& rng) {
  if (n_shot < 1) throw ConfigError("shots must be >= 1");
  if (!(std::abs(a) <= 1.0 + 1e-9)) throw DomainError("amplitude modulus exceeds 1");
  const double v = part == Quadrature::real ? a.real() : a.imag();
  std::binomial_distribution<std::int64_t> draw(n_shot, std::clamp((1.0 + v) / 2.0, 0.0, 1.0));
  const std::int64_t plus = draw(rng);
  return static_cast<double>(2 * plus - n_shot) / static_cast<double>(n_shot);
}

namespace {

// Noiseless overlaps at t_l under the configured propagator.
OverlapProbabilities propagated_overlaps(const StateSpectrum& spectrum, const CouplingSpec& spec,
                                         const StateVector& psi, const ReferenceEigenstate& ref,
                                         const FeatureMapConfig& cfg, int l) {
  const double t = cfg.time(l);
  if (!cfg.schedule) return overlaps_from_amplitude(spectrum.amplitude(t), ref.eigenvalue, t);
  const StateVector plus = superpose(basis_state(psi.num_qubits(), ref.bitstring), psi, Phase::plus);
  const StateVector evolved = trotter_evolve(spec, plus, t, cfg.schedule->steps(static_cast<std::size_t>(l)));
  return project_overlaps(evolved, psi, ref, t);
}

Complex propagated_amplitude(const StateSpectrum& spectrum, const CouplingSpec& spec,
                             const StateVector& psi, const FeatureMapConfig& cfg, int l) {
  const double t = cfg.time(l);
  if (!cfg.schedule) return spectrum.amplitude(t);
  return inner(psi, trotter_evolve(spec, psi, t, cfg.schedule->steps(static_cast<std::size_t>(l))));
}

}  // namespace

FeatureVector noisy_features(const SpectralCache& cache, const StateVector& psi,
                             const ReferenceEigenstate& ref, const FeatureMapConfig& cfg,
                             std::uint64_t sample_index) {
  cfg.validate();
  if (cfg.backend == FeatureBackend::exact) {
    throw ConfigError("noisy_features needs a shot-based backend");
  }
  const CouplingSpec& spec = cache.spec();
  check_spectral_bound(spec, cfg.C);
  if (cfg.backend == FeatureBackend::overlap_shots) check_orthogonal(psi, ref);
  const StateSpectrum spectrum = cfg.schedule ? StateSpectrum{} : cache.spectrum(psi.amplitudes());

  std::vector<Complex> amps(static_cast<std::size_t>(cfg.K + 1));
  for (int l = 0; l <= cfg.K; ++l) {
    Complex a;
    if (cfg.backend == FeatureBackend::overlap_shots) {
      OverlapProbabilities w = propagated_overlaps(spectrum, spec, psi, ref, cfg, l);
      if (cfg.shots) w = sample_overlaps(w, *cfg.shots, cfg.seed, sample_index, l);
      a = reconstruct_amplitude(w);
    } else {
      a = propagated_amplitude(spectrum, spec, psi, cfg, l);
      if (cfg.shots) {
        Rng re_rng = make_substream(cfg.seed, StreamRole::shots, sample_index, static_cast<std::uint64_t>(l), 0);
        const double re = hadamard_estimate(a, Quadrature::real, *cfg.shots, re_rng);
        double im = 0.0;
        if (l > 0) {
          Rng im_rng = make_substream(cfg.seed, StreamRole::shots, sample_index, static_cast<std::uint64_t>(l), 1);
          im = hadamard_estimate(a, Quadrature::imag, *cfg.shots, im_rng);
        }
        a = Complex(re, im);
      }
    }
    amps[static_cast<std::size_t>(l)] = a;
  }
  return FeatureVector::from_amplitudes(amps);
}

std::vector<OverlapProbabilities> feature_overlaps(const SpectralCache& cache,
                                                   const StateVector& psi,
                                                   const ReferenceEigenstate& ref,
                                                   const FeatureMapConfig& cfg) {
  cfg.validate();
  check_orthogonal(psi, ref);
  const StateSpectrum spectrum = cfg.schedule ? StateSpectrum{} : cache.spectrum(psi.amplitudes());
  std::vector<OverlapProbabilities> out;
  out.reserve(static_cast<std::size_t>(cfg.K + 1));
  for (int l = 0; l <= cfg.K; ++l) {
    out.push_back(propagated_overlaps(spectrum, cache.spec(), psi, ref, cfg, l));
  }
  return out;
}

}  // namespace hff
