#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hff/hamiltonians.hpp"

namespace hff {

inline constexpr double kNormTolerance = 1e-10;

/// Normalized pure state over the 2^n computational basis (qubit 0 = MSB).
class StateVector {
 public:
  // Throws InvalidDimension on a size mismatch and PreconditionError when the
  // l2 norm differs from 1 by more than kNormTolerance.
  StateVector(int n, ComplexVector amplitudes);

  int num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](Bitstring index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }
  double norm() const { return amplitudes_.norm(); }

 private:
  int n_;
  ComplexVector amplitudes_;
};

// "0110" -> 0b0110; the first character is qubit 0.
Bitstring parse_bitstring(std::string_view bits);
std::string format_bitstring(Bitstring index, int n);

StateVector basis_state(int n, std::string_view bits);
StateVector basis_state(int n, Bitstring index);

// |0>^{n/4} |1>^{n/2} |0>^{n/4}; requires n divisible by 4.
Bitstring domain_wall_bitstring(int n);
StateVector domain_wall(int n);

enum class Phase { plus, minus, plus_i, minus_i };

Complex phase_factor(Phase phase) noexcept;

// (ref + phase * psi) / sqrt(2). Requires <ref|psi> = 0 within kNormTolerance.
StateVector superpose(const StateVector& ref, const StateVector& psi, Phase phase);

// <a|b>, conjugate-linear in a.
Complex inner(const StateVector& a, const StateVector& b);

/// Computational-basis eigenstate of a Heisenberg chain with its eigenvalue.
struct ReferenceEigenstate {
  Bitstring bitstring = 0;
  double eigenvalue = 0.0;
};

// Eigenvalue computed as <e|H|e>; throws PreconditionError when the residual
// ||H e - lambda e|| exceeds 1e-12.
ReferenceEigenstate reference_eigenstate(const CouplingSpec& spec, Bitstring bitstring = 0);

/// Symbolic state recorded in dataset files.
struct StateDescriptor {
  enum class Kind { domain_wall, basis };
  Kind kind = Kind::domain_wall;
  std::string bits;  // only for Kind::basis

  static StateDescriptor make_domain_wall() { return {}; }
  static StateDescriptor make_basis(std::string bits) { return {Kind::basis, std::move(bits)}; }

  friend bool operator==(const StateDescriptor&, const StateDescriptor&) = default;
};

StateVector materialize(const StateDescriptor& descriptor, int n);

}  // namespace hff
