#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "hff/random.hpp"

namespace hff {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using Bitstring = std::uint64_t;

// Qubit 0 is the most significant bit of a basis index. Every module uses this.
constexpr int qubit_bit(Bitstring index, int qubit, int n) noexcept {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1U);
}

constexpr Bitstring qubit_mask(int qubit, int n) noexcept {
  return Bitstring{1} << (n - 1 - qubit);
}

inline constexpr std::size_t kDefaultSectorCap = 20000;
inline constexpr int kMaxDenseQubits = 20;

/**
 * @brief Open-boundary 1-D Heisenberg chain
 * H = sum_m J_m (X_m X_{m+1} + Y_m Y_{m+1} + Z_m Z_{m+1}), m = 0..n-2.
 *
 * Couplings are stored as given; use normalize() or sample_couplings() to get
 * the unit-l1 family used for learning.
 */
class CouplingSpec {
 public:
  CouplingSpec(int n, std::vector<double> couplings);

  int num_qubits() const noexcept { return n_; }
  std::span<const double> couplings() const noexcept { return couplings_; }
  double coupling(int bond) const { return couplings_.at(static_cast<std::size_t>(bond)); }
  int num_bonds() const noexcept { return n_ - 1; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_; }

  double l1_norm() const noexcept;
  // Sum of the couplings; the energy of |0...0> (and |1...1>).
  double coupling_sum() const noexcept;

  friend bool operator==(const CouplingSpec&, const CouplingSpec&) = default;

 private:
  int n_;
  std::vector<double> couplings_;
};

// Rescales so that sum_m |J_m| = 1. Throws DomainError on the all-zero chain.
CouplingSpec normalize(const CouplingSpec& spec);

// Draws J_m ~ U[-1, 1] independently, redraws an all-zero draw, then normalizes.
CouplingSpec sample_couplings(int n, Rng& rng);

// Triangle-inequality bound 3 * sum |J_m| on the operator norm.
double spectral_bound(const CouplingSpec& spec) noexcept;

// Matrix-free H*v over the full 2^n space.
ComplexVector apply_hamiltonian(const CouplingSpec& spec, const ComplexVector& v);

/// Basis states of fixed popcount in ascending integer order.
class SectorBasis {
 public:
  SectorBasis(int n, int magnetization);

  int num_qubits() const noexcept { return n_; }
  int magnetization() const noexcept { return magnetization_; }
  std::size_t size() const noexcept { return states_.size(); }
  std::span<const Bitstring> states() const noexcept { return states_; }
  Bitstring state(std::size_t position) const { return states_.at(position); }
  // Position of a bitstring in the sector, or size() when it is not a member.
  std::size_t position(Bitstring state) const noexcept;

 private:
  int n_;
  int magnetization_;
  std::vector<Bitstring> states_;
};

std::uint64_t binomial(int n, int k) noexcept;

// Dense real-symmetric block of H restricted to one magnetization sector.
Eigen::MatrixXd sector_matrix(const CouplingSpec& spec, const SectorBasis& basis);

struct SectorEigensystem {
  SectorBasis basis;
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // columns, in sector-basis coordinates
};

SectorEigensystem sector_eigensystem(const CouplingSpec& spec, int magnetization,
                                     std::size_t sector_cap = kDefaultSectorCap);

/**
 * @brief Spectral weights of one state: eigenvalues lambda_l with p_l = |<lambda_l|psi>|^2.
 *
 * Eigenpairs of every occupied sector are concatenated; `sectors` lists them.
 */
struct StateSpectrum {
  std::vector<double> eigenvalues;
  std::vector<double> weights;
  std::vector<int> sectors;

  double total_weight() const noexcept;
  // sum_l p_l exp(-i lambda_l t)
  Complex amplitude(double t) const noexcept;
};

/**
 * @brief Write-once store of sector eigensystems for one Hamiltonian.
 *
 * Sectors are diagonalized on first use and then shared. Concurrent readers
 * are safe; populating a sector twice yields the same result.
 */
class SpectralCache {
 public:
  explicit SpectralCache(CouplingSpec spec, std::size_t sector_cap = kDefaultSectorCap);

  const CouplingSpec& spec() const noexcept { return spec_; }
  std::size_t sector_cap() const noexcept { return sector_cap_; }

  const SectorEigensystem& sector(int magnetization) const;
  std::size_t cached_sectors() const;

  StateSpectrum spectrum(const ComplexVector& state, double tolerance = 0.0) const;

  // exp(-iHt) v applied sector by sector.
  ComplexVector evolve(const ComplexVector& v, double t) const;

 private:
  CouplingSpec spec_;
  std::size_t sector_cap_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::shared_ptr<const SectorEigensystem>> sectors_;
};

// Per-popcount squared norms of v (length n+1).
std::vector<double> sector_weights(const ComplexVector& v, int n);

}  // namespace hff
