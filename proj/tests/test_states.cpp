#include "doctest.h"

#include <bit>

#include "hff/errors.hpp"
#include "hff/states.hpp"

using namespace hff;

TEST_SUITE("states") {

TEST_CASE("basis states follow the qubit-0-is-MSB convention") {
  const auto s01 = basis_state(2, "01");
  CHECK(s01[0b01] == Complex(1.0, 0.0));
  CHECK(s01.amplitudes().norm() == doctest::Approx(1.0));
  CHECK(std::abs(s01[0b10]) == 0.0);

  const auto one = basis_state(1, "0");
  CHECK(one[0] == Complex(1.0, 0.0));
  CHECK(one[1] == Complex(0.0, 0.0));

  CHECK(basis_state(3, "111")[7] == Complex(1.0, 0.0));
  CHECK(parse_bitstring("0110") == 0b0110);
  CHECK(format_bitstring(0b0110, 4) == "0110");
  CHECK(qubit_bit(0b100, 0, 3) == 1);
  CHECK(qubit_mask(2, 3) == 1);

  CHECK_THROWS_AS(basis_state(2, "012"), InvalidDimension);
  CHECK_THROWS_AS(basis_state(3, "01"), InvalidDimension);
}

TEST_CASE("domain wall") {
  CHECK(format_bitstring(domain_wall_bitstring(4), 4) == "0110");
  CHECK(format_bitstring(domain_wall_bitstring(12), 12) == "000111111000");
  CHECK(std::popcount(domain_wall_bitstring(12)) == 6);
  CHECK(domain_wall(8)[parse_bitstring("00111100")] == Complex(1.0, 0.0));
  CHECK_THROWS_AS(domain_wall(6), InvalidDimension);
}

TEST_CASE("state vector validation") {
  CHECK_THROWS_AS(StateVector(2, ComplexVector::Zero(3)), InvalidDimension);
  ComplexVector v = ComplexVector::Zero(4);
  v[0] = 2.0;
  CHECK_THROWS_AS(StateVector(2, v), PreconditionError);
  v[0] = 1.0 + 1e-12;
  CHECK_NOTHROW(StateVector(2, v));
}

TEST_CASE("superpositions") {
  const auto a = basis_state(2, "00");
  const auto b = basis_state(2, "11");
  const double r = 1.0 / std::sqrt(2.0);

  const auto plus = superpose(a, b, Phase::plus);
  CHECK(std::abs(plus[0] - r) < 1e-15);
  CHECK(std::abs(plus[3] - r) < 1e-15);

  const auto pi = superpose(a, b, Phase::plus_i);
  CHECK(std::abs(pi[3] - Complex(0.0, r)) < 1e-15);
  CHECK(pi.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(superpose(a, a, Phase::plus), PreconditionError);

  CHECK(std::abs(inner(a, b)) == 0.0);
  CHECK(std::abs(inner(plus, plus) - 1.0) < 1e-15);
  const auto minus = superpose(a, b, Phase::minus);
  CHECK(std::abs(inner(plus, minus)) < 1e-15);
  const auto mi = superpose(a, b, Phase::minus_i);
  CHECK(std::abs(inner(pi, mi)) < 1e-15);
  // <+|+i> = (1 + i) / 2 by direct expansion
  CHECK(std::abs(inner(plus, pi) - Complex(0.5, 0.5)) < 1e-15);
}

TEST_CASE("reference eigenstates") {
  const CouplingSpec spec(4, {0.5, -0.25, 0.25});
  const auto ref = reference_eigenstate(spec);
  CHECK(ref.bitstring == 0);
  CHECK(ref.eigenvalue == doctest::Approx(0.5));
  CHECK(reference_eigenstate(spec, 0b1111).eigenvalue == doctest::Approx(0.5));
  CHECK_THROWS_AS(reference_eigenstate(spec, 0b0110), PreconditionError);
}

TEST_CASE("descriptors") {
  CHECK(materialize(StateDescriptor::make_domain_wall(), 4)[0b0110] == Complex(1.0, 0.0));
  CHECK(materialize(StateDescriptor::make_basis("001110"), 6)[0b001110] == Complex(1.0, 0.0));
  CHECK_THROWS(materialize(StateDescriptor::make_basis("0011"), 6));
}

}
