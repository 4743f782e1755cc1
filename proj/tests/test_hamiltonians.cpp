#include "doctest.h"

#include <algorithm>
#include <thread>

#include "hff/errors.hpp"
#include "hff/hamiltonians.hpp"
#include "hff/states.hpp"
#include "oracle.hpp"

using namespace hff;

namespace {

std::vector<double> raw(const CouplingSpec& s) { return {s.couplings().begin(), s.couplings().end()}; }

ComplexVector random_vector(Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(d);
  for (auto& z : v) z = Complex(g(rng), g(rng));
  return v / v.norm();
}

}  // namespace

TEST_SUITE("hamiltonians") {

TEST_CASE("coupling validation") {
  CHECK_THROWS_AS(CouplingSpec(1, {}), InvalidDimension);
  CHECK_THROWS_AS(CouplingSpec(3, {1.0}), InvalidDimension);
  CHECK_THROWS_AS(CouplingSpec(2, {std::nan("")}), DomainError);
  CHECK_THROWS_AS(normalize(CouplingSpec(3, {0.0, 0.0})), DomainError);
}

TEST_CASE("normalization") {
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto s = sample_couplings(2, rng);
    CHECK(std::abs(s.coupling(0)) == doctest::Approx(1.0).epsilon(1e-15));
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng r = make_substream(seed, StreamRole::couplings);
    CHECK(sample_couplings(12, r).l1_norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto kept = normalize(CouplingSpec(4, {0.5, -0.25, 0.25}));
  CHECK(kept.coupling(0) == doctest::Approx(0.5));
  CHECK(kept.coupling(1) == doctest::Approx(-0.25));
  CHECK(kept.coupling(2) == doctest::Approx(0.25));
}

TEST_CASE("spectral bound") {
  Rng rng(1);
  CHECK(spectral_bound(sample_couplings(6, rng)) == doctest::Approx(3.0));
  CHECK(spectral_bound(CouplingSpec(3, {0.0, 0.0})) == 0.0);
  CHECK(spectral_bound(CouplingSpec(3, {1.0, 1.0})) == doctest::Approx(6.0));
}

TEST_CASE("matrix-free action matches the Kronecker oracle") {
  Rng rng(11);
  for (int n = 2; n <= 6; ++n) {
    const auto spec = sample_couplings(n, rng);
    const oracle::Mat h = oracle::heisenberg(raw(spec));
    for (int rep = 0; rep < 3; ++rep) {
      const ComplexVector v = random_vector(h.rows(), rng);
      CHECK((apply_hamiltonian(spec, v) - h * v).norm() < 1e-12);
    }
    const ComplexVector zero = ComplexVector::Zero(h.rows());
    CHECK(apply_hamiltonian(spec, zero).norm() == 0.0);
    const ComplexVector all_zero = oracle::basis(n, 0);
    CHECK((apply_hamiltonian(spec, all_zero) - spec.coupling_sum() * all_zero).norm() < 1e-14);
  }
}

TEST_CASE("two-qubit action on |01>") {
  const CouplingSpec spec(2, {1.0});
  const ComplexVector out = apply_hamiltonian(spec, oracle::basis(2, 0b01));
  CHECK(out[0b01] == Complex(-1.0, 0.0));
  CHECK(out[0b10] == Complex(2.0, 0.0));
  CHECK(std::abs(out[0b00]) == 0.0);
  CHECK(std::abs(out[0b11]) == 0.0);
}

TEST_CASE("sector basis") {
  const SectorBasis b(12, 6);
  CHECK(b.size() == 924);
  CHECK(binomial(12, 6) == 924);
  CHECK(std::is_sorted(b.states().begin(), b.states().end()));
  for (std::size_t i = 0; i < b.size(); i += 37) CHECK(b.position(b.state(i)) == i);
  CHECK(b.position(0) == b.size());
  CHECK(SectorBasis(5, 0).size() == 1);
  CHECK(SectorBasis(5, 5).size() == 1);
}

TEST_CASE("two-qubit sector spectra") {
  const CouplingSpec spec(2, {1.0});
  const auto mid = sector_eigensystem(spec, 1);
  REQUIRE(mid.eigenvalues.size() == 2);
  CHECK(mid.eigenvalues[0] == doctest::Approx(-3.0));
  CHECK(mid.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(sector_eigensystem(spec, 0).eigenvalues[0] == doctest::Approx(1.0));
  CHECK(sector_eigensystem(spec, 2).eigenvalues[0] == doctest::Approx(1.0));
}

TEST_CASE("union of sector spectra equals the dense spectrum") {
  Rng rng(3);
  for (int n = 2; n <= 6; ++n) {
    const auto spec = sample_couplings(n, rng);
    std::vector<double> mine;
    for (int m = 0; m <= n; ++m) {
      const auto es = sector_eigensystem(spec, m);
      mine.insert(mine.end(), es.eigenvalues.begin(), es.eigenvalues.end());
    }
    std::sort(mine.begin(), mine.end());
    const Eigen::VectorXd ref = oracle::eigenvalues(oracle::heisenberg(raw(spec)));
    REQUIRE(mine.size() == static_cast<std::size_t>(ref.size()));
    for (std::size_t i = 0; i < mine.size(); ++i) CHECK(mine[i] == doctest::Approx(ref[static_cast<Eigen::Index>(i)]).epsilon(1e-10));
    CHECK(sector_eigensystem(spec, 0).eigenvalues[0] == doctest::Approx(spec.coupling_sum()));
  }
}

TEST_CASE("twelve-qubit half-filling sector") {
  Rng rng = make_substream(0, StreamRole::couplings, 0);
  const auto spec = sample_couplings(12, rng);
  const SectorBasis basis(12, 6);
  const Eigen::MatrixXd h = sector_matrix(spec, basis);
  const auto es = sector_eigensystem(spec, 6);
  REQUIRE(es.eigenvalues.size() == 924);
  CHECK(es.eigenvalues.minCoeff() >= -3.0);
  CHECK(es.eigenvalues.maxCoeff() <= 3.0);
  const Eigen::MatrixXd rebuilt = es.eigenvectors * es.eigenvalues.asDiagonal() * es.eigenvectors.transpose();
  CHECK((rebuilt - h).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("sector cap") {
  const CouplingSpec spec = normalize(CouplingSpec(8, {1, 1, 1, 1, 1, 1, 1}));
  CHECK_THROWS_AS(sector_eigensystem(spec, 4, 10), ResourceLimit);
  CHECK_NOTHROW(sector_eigensystem(spec, 0, 10));
}

TEST_CASE("magnetization is conserved") {
  Rng rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + rep % 5;
    const auto spec = sample_couplings(n, rng);
    const int m = rep % (n + 1);
    const SectorBasis b(n, m);
    ComplexVector v = ComplexVector::Zero(Eigen::Index{1} << n);
    for (auto s : b.states()) v[static_cast<Eigen::Index>(s)] = 1.0;
    const auto w = sector_weights(apply_hamiltonian(spec, v), n);
    double outside = 0.0;
    for (int k = 0; k <= n; ++k) if (k != m) outside += w[static_cast<std::size_t>(k)];
    CHECK(outside == 0.0);
  }
}

TEST_CASE("state spectrum and cached evolution") {
  Rng rng(9);
  for (int n = 2; n <= 6; ++n) {
    const auto spec = sample_couplings(n, rng);
    const SpectralCache cache(spec);
    const ComplexVector psi = random_vector(Eigen::Index{1} << n, rng);
    const StateSpectrum sp = cache.spectrum(psi);
    CHECK(sp.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    const oracle::Mat h = oracle::heisenberg(raw(spec));
    double mean = 0.0;
    for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i) mean += sp.weights[i] * sp.eigenvalues[i];
    CHECK(mean == doctest::Approx(psi.dot(h * psi).real()).epsilon(1e-10));
    for (double t : {0.0, 0.3, 1.7, 3.1}) {
      const oracle::Vec ref = oracle::propagator(h, t) * psi;
      CHECK((cache.evolve(psi, t) - ref).norm() < 1e-10);
      CHECK(std::abs(sp.amplitude(t) - psi.dot(ref)) < 1e-10);
    }
  }
}

TEST_CASE("cache is shared and thread safe") {
  Rng rng(2);
  const SpectralCache cache(sample_couplings(8, rng));
  std::vector<const SectorEigensystem*> seen(8);
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < seen.size(); ++i) workers.emplace_back([&, i] { seen[i] = &cache.sector(4); });
  }
  for (auto* p : seen) CHECK(p == seen[0]);
  CHECK(cache.cached_sectors() == 1);
}

}
