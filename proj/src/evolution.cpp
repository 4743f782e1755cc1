#include "hff/evolution.hpp"

#include <charconv>
#include <cmath>

#include "hff/errors.hpp"

namespace hff {

TrotterSchedule::TrotterSchedule(std::vector<int> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw ConfigError("Trotter schedule is empty");
  for (int s : steps_) {
    if (s < 1) throw ConfigError("Trotter step counts must be >= 1");
  }
}

TrotterSchedule TrotterSchedule::parse(std::string_view text) {
  std::vector<int> steps;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view token = text.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw ConfigError("malformed Trotter schedule entry \"" + std::string(token) + "\"");
    }
    steps.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return TrotterSchedule(std::move(steps));
}

std::string TrotterSchedule::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(steps_[i]);
  }
  return out;
}

void TrotterSchedule::check_order(int K) const {
  if (steps_.size() != static_cast<std::size_t>(K + 1)) {
    throw ConfigError("Trotter schedule has " + std::to_string(steps_.size()) +
                      " entries, expected K + 1 = " + std::to_string(K + 1));
  }
}

TwoQubitGate heisenberg_gate(double coupling, double dt, int first_qubit) {
  const double theta = coupling * dt;
  // XX + YY + ZZ is +1 on the triplet |00>, |11> and -I + 2 SWAP on {|01>, |10>}.
  const Complex triplet = std::polar(1.0, -theta);
  const Complex outer = std::polar(1.0, theta);
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(0, 0) = triplet;
  u(3, 3) = triplet;
  u(1, 1) = outer * std::cos(2.0 * theta);
  u(2, 2) = u(1, 1);
  u(1, 2) = outer * Complex(0.0, -std::sin(2.0 * theta));
  u(2, 1) = u(1, 2);
  return {u, first_qubit};
}

void apply_gate(ComplexVector& v, int n, const TwoQubitGate& gate) {
  const int q = gate.first_qubit;
  if (q < 0 || q + 1 >= n) throw InvalidDimension("gate qubits outside the register");
  if (static_cast<std::size_t>(v.size()) != (std::size_t{1} << n)) {
    throw InvalidDimension("gate applied to a vector of the wrong dimension");
  }
  const Bitstring hi = qubit_mask(q, n);
  const Bitstring lo = qubit_mask(q + 1, n);
  const auto& u = gate.matrix;
  for (Bitstring s = 0; s < static_cast<Bitstring>(v.size()); ++s) {
    if (s & (hi | lo)) continue;
    const Eigen::Index i00 = static_cast<Eigen::Index>(s);
    const Eigen::Index i01 = static_cast<Eigen::Index>(s | lo);
    const Eigen::Index i10 = static_cast<Eigen::Index>(s | hi);
    const Eigen::Index i11 = static_cast<Eigen::Index>(s | hi | lo);
    const Eigen::Vector4cd local(v[i00], v[i01], v[i10], v[i11]);
    const Eigen::Vector4cd out = u * local;
    v[i00] = out[0];
    v[i01] = out[1];
    v[i10] = out[2];
    v[i11] = out[3];
  }
}

namespace {

void apply_bond_layer(ComplexVector& v, const CouplingSpec& spec, int parity, double dt) {
  for (int m = parity; m < spec.num_bonds(); m += 2) {
    apply_gate(v, spec.num_qubits(), heisenberg_gate(spec.coupling(m), dt, m));
  }
}

}  // namespace

StateVector trotter_evolve(const CouplingSpec& spec, const StateVector& v, double t, int n_step) {
  if (n_step < 1) throw ConfigError("n_step must be >= 1");
  if (v.num_qubits() != spec.num_qubits()) throw InvalidDimension("state and Hamiltonian differ in n");
  const double dt = t / n_step;
  ComplexVector amps = v.amplitudes();
  for (int step = 0; step < n_step; ++step) {
    apply_bond_layer(amps, spec, 1, dt / 2.0);
    apply_bond_layer(amps, spec, 0, dt);
    apply_bond_layer(amps, spec, 1, dt / 2.0);
  }
  return StateVector(v.num_qubits(), std::move(amps));
}

StateVector exact_evolve(const SpectralCache& cache, const StateVector& v, double t) {
  return StateVector(v.num_qubits(), cache.evolve(v.amplitudes(), t));
}

StateVector exact_evolve(const CouplingSpec& spec, const StateVector& v, double t) {
  return exact_evolve(SpectralCache(spec), v, t);
}

Complex amplitude(const SpectralCache& cache, const StateVector& psi, double t) {
  return cache.spectrum(psi.amplitudes()).amplitude(t);
}

Complex amplitude(const CouplingSpec& spec, const StateVector& psi, double t) {
  return amplitude(SpectralCache(spec), psi, t);
}

}  // namespace hff
