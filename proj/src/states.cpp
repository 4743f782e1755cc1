#include "hff/states.hpp"

#include <cmath>
#include <numbers>

#include "hff/errors.hpp"

namespace hff {

StateVector::StateVector(int n, ComplexVector amplitudes) : n_(n), amplitudes_(std::move(amplitudes)) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw InvalidDimension("state vectors need 1 <= n <= " + std::to_string(kMaxDenseQubits));
  }
  if (static_cast<std::size_t>(amplitudes_.size()) != (std::size_t{1} << n)) {
    throw InvalidDimension("state of " + std::to_string(n) + " qubits needs 2^n amplitudes, got " +
                           std::to_string(amplitudes_.size()));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw PreconditionError("state vector is not normalized (norm " +
                            std::to_string(amplitudes_.norm()) + ")");
  }
}

Bitstring parse_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 62) throw InvalidDimension("bitstring must have 1..62 characters");
  Bitstring out = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw InvalidDimension("bitstring may only contain '0' and '1'");
    out = (out << 1) | static_cast<Bitstring>(c == '1');
  }
  return out;
}

std::string format_bitstring(Bitstring index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q) {
    if (qubit_bit(index, q, n)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

StateVector basis_state(int n, Bitstring index) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw InvalidDimension("state vectors need 1 <= n <= " + std::to_string(kMaxDenseQubits));
  }
  if (index >= (Bitstring{1} << n)) throw InvalidDimension("basis index out of range");
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << n);
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n, std::move(amps));
}

StateVector basis_state(int n, std::string_view bits) {
  if (bits.size() != static_cast<std::size_t>(n)) {
    throw InvalidDimension("bitstring \"" + std::string(bits) + "\" does not have " +
                           std::to_string(n) + " bits");
  }
  return basis_state(n, parse_bitstring(bits));
}

Bitstring domain_wall_bitstring(int n) {
  if (n < 4 || n % 4 != 0) {
    throw InvalidDimension("domain-wall state needs n divisible by 4, got " + std::to_string(n));
  }
  Bitstring s = 0;
  for (int q = n / 4; q < n / 4 + n / 2; ++q) s |= qubit_mask(q, n);
  return s;
}

StateVector domain_wall(int n) { return basis_state(n, domain_wall_bitstring(n)); }

Complex phase_factor(Phase phase) noexcept {
  switch (phase) {
    case Phase::plus: return {1.0, 0.0};
    case Phase::minus: return {-1.0, 0.0};
    case Phase::plus_i: return {0.0, 1.0};
    case Phase::minus_i: return {0.0, -1.0};
  }
  return {1.0, 0.0};
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw InvalidDimension("inner product of states with different qubit counts");
  }
  return a.amplitudes().dot(b.amplitudes());
}

StateVector superpose(const StateVector& ref, const StateVector& psi, Phase phase) {
  if (std::abs(inner(ref, psi)) > kNormTolerance) {
    throw PreconditionError("reference and target states must be orthogonal");
  }
  ComplexVector amps = (ref.amplitudes() + phase_factor(phase) * psi.amplitudes()) / std::numbers::sqrt2;
  return StateVector(ref.num_qubits(), std::move(amps));
}

ReferenceEigenstate reference_eigenstate(const CouplingSpec& spec, Bitstring bitstring) {
  const StateVector e = basis_state(spec.num_qubits(), bitstring);
  const ComplexVector he = apply_hamiltonian(spec, e.amplitudes());
  const double lambda = he[static_cast<Eigen::Index>(bitstring)].real();
  const double residual = (he - lambda * e.amplitudes()).norm();
  if (residual > 1e-12) {
    throw PreconditionError("basis state " + format_bitstring(bitstring, spec.num_qubits()) +
                            " is not an eigenstate (residual " + std::to_string(residual) + ")");
  }
  return {bitstring, lambda};
}

StateVector materialize(const StateDescriptor& descriptor, int n) {
  switch (descriptor.kind) {
    case StateDescriptor::Kind::domain_wall: return domain_wall(n);
    case StateDescriptor::Kind::basis: return basis_state(n, descriptor.bits);
  }
  throw ConfigError("unknown state descriptor");
}

}  // namespace hff
