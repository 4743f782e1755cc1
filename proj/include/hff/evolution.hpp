#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hff/hamiltonians.hpp"
#include "hff/states.hpp"

namespace hff {

/// Number of second-order product-formula steps per feature index l = 0..K.
class TrotterSchedule {
 public:
  explicit TrotterSchedule(std::vector<int> steps);

  // Comma-separated positive integers, e.g. "1,1,1,1,1,2,2,2,2,3,3,3".
  static TrotterSchedule parse(std::string_view text);

  std::size_t size() const noexcept { return steps_.size(); }
  int steps(std::size_t l) const { return steps_.at(l); }
  const std::vector<int>& values() const noexcept { return steps_; }
  std::string to_string() const;

  // Throws ConfigError unless the schedule has exactly K + 1 entries.
  void check_order(int K) const;

  friend bool operator==(const TrotterSchedule&, const TrotterSchedule&) = default;

 private:
  std::vector<int> steps_;
};

/**
 * @brief exp(-i J dt (XX + YY + ZZ)) on qubits (first, first + 1).
 *
 * The 4x4 matrix uses the local basis |q_first q_{first+1}> ordered 00, 01, 10, 11.
 */
struct TwoQubitGate {
  Eigen::Matrix4cd matrix;
  int first_qubit = 0;
};

TwoQubitGate heisenberg_gate(double coupling, double dt, int first_qubit = 0);

void apply_gate(ComplexVector& v, int n, const TwoQubitGate& gate);

/**
 * @brief Symmetric (Strang) product formula.
 *
 * Applies (e^{-i dt/2 H_odd} e^{-i dt H_even} e^{-i dt/2 H_odd})^{n_step}
 * with dt = t / n_step. Odd bonds are those with odd 0-based index m.
 */
StateVector trotter_evolve(const CouplingSpec& spec, const StateVector& v, double t, int n_step);

// e^{-iHt} v through cached sector eigendecompositions.
StateVector exact_evolve(const SpectralCache& cache, const StateVector& v, double t);
StateVector exact_evolve(const CouplingSpec& spec, const StateVector& v, double t);

// <psi| e^{-iHt} |psi> = sum_l p_l e^{-i lambda_l t}.
Complex amplitude(const SpectralCache& cache, const StateVector& psi, double t);
Complex amplitude(const CouplingSpec& spec, const StateVector& psi, double t);

}  // namespace hff
