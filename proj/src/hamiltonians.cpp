#include "hff/hamiltonians.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "hff/errors.hpp"

namespace hff {

CouplingSpec::CouplingSpec(int n, std::vector<double> couplings)
    : n_(n), couplings_(std::move(couplings)) {
  if (n < 2 || n > 62) {
    throw InvalidDimension("coupling spec needs 2 <= n <= 62 qubits, got " + std::to_string(n));
  }
  if (couplings_.size() != static_cast<std::size_t>(n - 1)) {
    throw InvalidDimension("expected " + std::to_string(n - 1) + " couplings for n = " +
                           std::to_string(n) + ", got " + std::to_string(couplings_.size()));
  }
  for (double j : couplings_) {
    if (!std::isfinite(j)) throw DomainError("couplings must be finite");
  }
}

double CouplingSpec::l1_norm() const noexcept {
  double s = 0.0;
  for (double j : couplings_) s += std::abs(j);
  return s;
}

double CouplingSpec::coupling_sum() const noexcept {
  double s = 0.0;
  for (double j : couplings_) s += j;
  return s;
}

CouplingSpec normalize(const CouplingSpec& spec) {
  const double norm = spec.l1_norm();
  if (norm == 0.0) throw DomainError("cannot normalize an all-zero coupling chain");
  std::vector<double> scaled(spec.couplings().begin(), spec.couplings().end());
  for (double& j : scaled) j /= norm;
  return CouplingSpec(spec.num_qubits(), std::move(scaled));
}

CouplingSpec sample_couplings(int n, Rng& rng) {
  if (n < 2) throw InvalidDimension("sample_couplings needs n >= 2, got " + std::to_string(n));
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> raw(static_cast<std::size_t>(n - 1));
  for (;;) {
    double norm = 0.0;
    for (double& j : raw) {
      j = uniform(rng);
      norm += std::abs(j);
    }
    if (norm > 0.0) break;
  }
  return normalize(CouplingSpec(n, std::move(raw)));
}

double spectral_bound(const CouplingSpec& spec) noexcept { return 3.0 * spec.l1_norm(); }

ComplexVector apply_hamiltonian(const CouplingSpec& spec, const ComplexVector& v) {
  const int n = spec.num_qubits();
  if (n > kMaxDenseQubits) throw ResourceLimit("dense vectors are limited to 20 qubits");
  if (static_cast<std::size_t>(v.size()) != spec.dimension()) {
    throw InvalidDimension("state has dimension " + std::to_string(v.size()) + ", expected 2^" +
                           std::to_string(n));
  }
  ComplexVector out = ComplexVector::Zero(v.size());
  for (Bitstring s = 0; s < spec.dimension(); ++s) {
    const Complex amp = v[static_cast<Eigen::Index>(s)];
    if (amp == Complex{}) continue;
    for (int m = 0; m < spec.num_bonds(); ++m) {
      const double j = spec.coupling(m);
      if (qubit_bit(s, m, n) == qubit_bit(s, m + 1, n)) {
        out[static_cast<Eigen::Index>(s)] += j * amp;
      } else {
        // ZZ = -1 on antiparallel pairs; XX + YY swaps them with weight 2.
        out[static_cast<Eigen::Index>(s)] -= j * amp;
        const Bitstring flipped = s ^ qubit_mask(m, n) ^ qubit_mask(m + 1, n);
        out[static_cast<Eigen::Index>(flipped)] += 2.0 * j * amp;
      }
    }
  }
  return out;
}

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

SectorBasis::SectorBasis(int n, int magnetization) : n_(n), magnetization_(magnetization) {
  if (n < 1 || n > 62) throw InvalidDimension("sector basis needs 1 <= n <= 62");
  if (magnetization < 0 || magnetization > n) {
    throw InvalidDimension("magnetization " + std::to_string(magnetization) +
                           " outside [0, " + std::to_string(n) + "]");
  }
  const std::uint64_t count = binomial(n, magnetization);
  states_.reserve(static_cast<std::size_t>(count));
  if (magnetization == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack enumerates fixed-popcount words in increasing order.
  Bitstring s = (Bitstring{1} << magnetization) - 1;
  for (std::uint64_t i = 0; i < count; ++i) {
    states_.push_back(s);
    const Bitstring c = s & (~s + 1);
    const Bitstring r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

std::size_t SectorBasis::position(Bitstring state) const noexcept {
  auto it = std::lower_bound(states_.begin(), states_.end(), state);
  if (it == states_.end() || *it != state) return states_.size();
  return static_cast<std::size_t>(it - states_.begin());
}

Eigen::MatrixXd sector_matrix(const CouplingSpec& spec, const SectorBasis& basis) {
  const int n = spec.num_qubits();
  if (basis.num_qubits() != n) throw InvalidDimension("sector basis and spec disagree on n");
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Bitstring s = basis.state(static_cast<std::size_t>(col));
    for (int m = 0; m < spec.num_bonds(); ++m) {
      const double j = spec.coupling(m);
      if (qubit_bit(s, m, n) == qubit_bit(s, m + 1, n)) {
        h(col, col) += j;
      } else {
        h(col, col) -= j;
        const Bitstring flipped = s ^ qubit_mask(m, n) ^ qubit_mask(m + 1, n);
        h(static_cast<Eigen::Index>(basis.position(flipped)), col) += 2.0 * j;
      }
    }
  }
  return h;
}

SectorEigensystem sector_eigensystem(const CouplingSpec& spec, int magnetization,
                                     std::size_t sector_cap) {
  const int n = spec.num_qubits();
  if (magnetization < 0 || magnetization > n) {
    throw InvalidDimension("magnetization " + std::to_string(magnetization) +
                           " outside [0, " + std::to_string(n) + "]");
  }
  const std::uint64_t dim = binomial(n, magnetization);
  if (dim > sector_cap) {
    throw ResourceLimit("sector (n = " + std::to_string(n) + ", magnetization = " +
                        std::to_string(magnetization) + ") has dimension " + std::to_string(dim) +
                        ", above the cap of " + std::to_string(sector_cap));
  }
  SectorBasis basis(n, magnetization);
  const Eigen::MatrixXd h = sector_matrix(spec, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("sector eigendecomposition did not converge");
  }
  return SectorEigensystem{std::move(basis), solver.eigenvalues(), solver.eigenvectors()};
}

double StateSpectrum::total_weight() const noexcept {
  double s = 0.0;
  for (double p : weights) s += p;
  return s;
}

Complex StateSpectrum::amplitude(double t) const noexcept {
  Complex a{};
  for (std::size_t l = 0; l < eigenvalues.size(); ++l) {
    a += weights[l] * std::polar(1.0, -eigenvalues[l] * t);
  }
  return a;
}

SpectralCache::SpectralCache(CouplingSpec spec, std::size_t sector_cap)
    : spec_(std::move(spec)), sector_cap_(sector_cap) {}

const SectorEigensystem& SpectralCache::sector(int magnetization) const {
  std::lock_guard lock(mutex_);
  auto it = sectors_.find(magnetization);
  if (it == sectors_.end()) {
    auto eig = std::make_shared<const SectorEigensystem>(
        sector_eigensystem(spec_, magnetization, sector_cap_));
    it = sectors_.emplace(magnetization, std::move(eig)).first;
  }
  return *it->second;
}

std::size_t SpectralCache::cached_sectors() const {
  std::lock_guard lock(mutex_);
  return sectors_.size();
}

namespace {

void check_vector(const CouplingSpec& spec, const ComplexVector& v) {
  if (spec.num_qubits() > kMaxDenseQubits) throw ResourceLimit("dense vectors are limited to 20 qubits");
  if (static_cast<std::size_t>(v.size()) != spec.dimension()) {
    throw InvalidDimension("state has dimension " + std::to_string(v.size()) + ", expected 2^" +
                           std::to_string(spec.num_qubits()));
  }
}

Eigen::VectorXcd gather(const SectorBasis& basis, const ComplexVector& v) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = v[static_cast<Eigen::Index>(basis.state(i))];
  }
  return out;
}

// Real matrix times complex vector without promoting the matrix.
template <typename Matrix>
Eigen::VectorXcd real_times(const Matrix& a, const Eigen::VectorXcd& x) {
  const Eigen::VectorXd re = a * x.real();
  const Eigen::VectorXd im = a * x.imag();
  Eigen::VectorXcd out(re.size());
  out.real() = re;
  out.imag() = im;
  return out;
}

std::vector<bool> occupied_sectors(const ComplexVector& v, int n) {
  std::vector<bool> occupied(static_cast<std::size_t>(n + 1), false);
  for (Eigen::Index s = 0; s < v.size(); ++s) {
    if (v[s] != Complex{}) occupied[static_cast<std::size_t>(std::popcount(static_cast<Bitstring>(s)))] = true;
  }
  return occupied;
}

}  // namespace

StateSpectrum SpectralCache::spectrum(const ComplexVector& state, double tolerance) const {
  check_vector(spec_, state);
  const int n = spec_.num_qubits();
  const auto occupied = occupied_sectors(state, n);
  StateSpectrum out;
  for (int m = 0; m <= n; ++m) {
    if (!occupied[static_cast<std::size_t>(m)]) continue;
    const SectorEigensystem& eig = sector(m);
    const Eigen::VectorXcd local = gather(eig.basis, state);
    const Eigen::VectorXcd coeffs = real_times(eig.eigenvectors.transpose(), local);
    out.sectors.push_back(m);
    for (Eigen::Index l = 0; l < coeffs.size(); ++l) {
      const double p = std::norm(coeffs[l]);
      if (p <= tolerance && tolerance > 0.0) continue;
      out.eigenvalues.push_back(eig.eigenvalues[l]);
      out.weights.push_back(p);
    }
  }
  return out;
}

ComplexVector SpectralCache::evolve(const ComplexVector& v, double t) const {
  check_vector(spec_, v);
  const int n = spec_.num_qubits();
  const auto occupied = occupied_sectors(v, n);
  ComplexVector out = ComplexVector::Zero(v.size());
  for (int m = 0; m <= n; ++m) {
    if (!occupied[static_cast<std::size_t>(m)]) continue;
    const SectorEigensystem& eig = sector(m);
    Eigen::VectorXcd coeffs = real_times(eig.eigenvectors.transpose(), gather(eig.basis, v));
    for (Eigen::Index l = 0; l < coeffs.size(); ++l) {
      coeffs[l] *= std::polar(1.0, -eig.eigenvalues[l] * t);
    }
    const Eigen::VectorXcd local = real_times(eig.eigenvectors, coeffs);
    for (std::size_t i = 0; i < eig.basis.size(); ++i) {
      out[static_cast<Eigen::Index>(eig.basis.state(i))] = local[static_cast<Eigen::Index>(i)];
    }
  }
  return out;
}

std::vector<double> sector_weights(const ComplexVector& v, int n) {
  std::vector<double> w(static_cast<std::size_t>(n + 1), 0.0);
  for (Eigen::Index s = 0; s < v.size(); ++s) {
    w[static_cast<std::size_t>(std::popcount(static_cast<Bitstring>(s)))] += std::norm(v[s]);
  }
  return w;
}

}  // namespace hff
