#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "entbound/linalg.hpp"
#include "entbound/observables.hpp"
#include "entbound/states.hpp"
#include "test_helpers.hpp"

using namespace entbound;
using namespace entbound::linalg;
using namespace entbound::states;
using testutil::max_abs_diff;

TEST_CASE("psi_plus matches the d=2 vector and reduces to 1/d") {
  const PureState psi = psi_plus(2);
  CHECK(psi.vec[0].real() == doctest::Approx(M_SQRT1_2).epsilon(1e-15));
  CHECK(psi.vec[3].real() == doctest::Approx(M_SQRT1_2).epsilon(1e-15));
  CHECK(std::abs(psi.vec[1]) == 0.0);
  CHECK(std::abs(psi.vec[2]) == 0.0);

  for (int d : {2, 3, 5}) {
    const auto rho = to_density(psi_plus(d));
    const ComplexMatrix red = partial_trace(rho.mat, rho.dims, {1});
    CHECK(max_abs_diff(red, ComplexMatrix::identity(d) * cx(1.0 / d)) <= 1e-14);
  }
  CHECK_THROWS_AS(psi_plus(1), Error);
}

TEST_CASE("swap expectation on psi_plus is one, by the direct sum oracle") {
  for (int d : {2, 3, 4}) {
    const PureState psi = psi_plus(d);
    // <psi|V|psi> = sum_{ij} psi*[(i,j)] psi[(j,i)]
    cx oracle = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        oracle += std::conj(psi.vec[static_cast<size_t>(i) * d + j]) * psi.vec[static_cast<size_t>(j) * d + i];
    CHECK(oracle.real() == doctest::Approx(1.0).epsilon(1e-14));
    const auto rho = to_density(psi);
    CHECK(trace_product(obs::swap_matrix(d), rho.mat).real() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("bell_diagonal examples") {
  const auto pure = bell_diagonal(1, 0, 0, 0);
  CHECK(max_abs_diff(pure.state.mat, psi_plus_projector(2)) <= 1e-15);
  CHECK(pure.concurrence == doctest::Approx(1.0));

  CHECK(bell_diagonal(0.75, 0.25, 0, 0).concurrence == doctest::Approx(0.5).epsilon(1e-12));

  const auto mixed = bell_diagonal(0.25, 0.25, 0.25, 0.25);
  CHECK(max_abs_diff(mixed.state.mat, ComplexMatrix::identity(4) * cx(0.25)) <= 1e-14);
  CHECK(mixed.concurrence == 0.0);

  // probabilities are sorted internally, so the order does not matter
  CHECK(bell_diagonal(0.1, 0.9, 0, 0).concurrence == doctest::Approx(0.8).epsilon(1e-12));

  CHECK_THROWS_AS(bell_diagonal(0.5, 0.6, 0, 0), Error);
  CHECK_THROWS_AS(bell_diagonal(-0.1, 0.6, 0.3, 0.2), Error);
}

TEST_CASE("isotropic family") {
  for (int d : {2, 3, 4}) {
    CHECK(isotropic(d, 1.0 / d).concurrence == 0.0);
    validate_density(isotropic(d, 0.7).state);
  }
  CHECK(isotropic(2, 1.0).concurrence == doctest::Approx(1.0).epsilon(1e-12));
  // f = 1/d^2 is the maximally mixed point
  const auto mixed = isotropic(3, 1.0 / 9.0);
  CHECK(max_abs_diff(mixed.state.mat, ComplexMatrix::identity(9) * cx(1.0 / 9.0)) <= 1e-14);
  CHECK(mixed.concurrence == 0.0);
  CHECK_THROWS_AS(isotropic(3, 1.2), Error);
  CHECK_THROWS_AS(isotropic(3, -0.1), Error);
}

TEST_CASE("isotropic concurrence at f=1 matches the pure-state value") {
  for (int d : {2, 3, 4, 5}) {
    const double pure_value = std::sqrt(2.0 * (d - 1.0) / d);
    CHECK(isotropic(d, 1.0).concurrence == doctest::Approx(pure_value).epsilon(1e-12));
  }
}

namespace {

// Independent construction of the rot4 sector projectors: the polynomial
// P_J = prod_{J' != J} (J^2 - J'(J'+1)) / (J(J+1) - J'(J'+1)).
std::vector<ComplexMatrix> polynomial_projectors() {
  const double s = 1.5;
  const ComplexMatrix i4 = ComplexMatrix::identity(4);
  ComplexMatrix j2(16, 16);
  for (const auto& j : {spin_jx(s), spin_jy(s), spin_jz(s)}) {
    const ComplexMatrix tot = kron(j, i4) + kron(i4, j);
    j2 += tot * tot;
  }
  std::vector<ComplexMatrix> out;
  for (int J = 0; J <= 3; ++J) {
    ComplexMatrix p = ComplexMatrix::identity(16);
    for (int Jp = 0; Jp <= 3; ++Jp) {
      if (Jp == J) continue;
      const double ev_j = J * (J + 1.0), ev_jp = Jp * (Jp + 1.0);
      p = p * (j2 - ComplexMatrix::identity(16) * cx(ev_jp)) * cx(1.0 / (ev_j - ev_jp));
    }
    out.push_back(p * cx(1.0 / (2.0 * J + 1.0)));  // normalized to unit trace
  }
  return out;
}

}  // namespace

TEST_CASE("rot4 projectors: unit trace, orthogonality, polynomial oracle") {
  const auto& projectors = rot4_projectors();
  const auto oracle = polynomial_projectors();
  REQUIRE(projectors.size() == 4);
  for (int J = 0; J <= 3; ++J) {
    CHECK(projectors[static_cast<size_t>(J)].trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs_diff(projectors[static_cast<size_t>(J)], oracle[static_cast<size_t>(J)]) <= 1e-10);
    for (int Jp = 0; Jp <= 3; ++Jp) {
      const ComplexMatrix prod = projectors[static_cast<size_t>(J)] * projectors[static_cast<size_t>(Jp)];
      if (J == Jp) {
        CHECK(max_abs_diff(prod, projectors[static_cast<size_t>(J)] * cx(1.0 / (2.0 * J + 1.0))) <= 1e-12);
      } else {
        CHECK(prod.max_abs() <= 1e-12);
      }
    }
  }
}

TEST_CASE("rot4 states have maximally mixed marginals") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    double p = rng.uniform(), q = rng.uniform(), r = rng.uniform();
    const double total = p + q + r + rng.uniform();
    p /= total;
    q /= total;
    r /= total;
    const DensityMatrix rho = rot4({p, q, r});
    validate_density(rho);
    for (int side : {0, 1}) {
      const ComplexMatrix red = partial_trace(rho.mat, rho.dims, {side});
      CHECK(max_abs_diff(red, ComplexMatrix::identity(4) * cx(0.25)) <= 1e-10);
    }
  }
}

TEST_CASE("rot4(0,0,0) is the highest sector and a valid state") {
  const DensityMatrix rho = rot4({0, 0, 0});
  validate_density(rho);
  CHECK(max_abs_diff(rho.mat, rot4_projectors()[3]) <= 1e-14);
}

TEST_CASE("rot4 commutes with collective rotations u (x) u") {
  Rng rng(9);
  const DensityMatrix rho = rot4({0.3, 0.2, 0.1});
  for (int trial = 0; trial < 20; ++trial) {
    // u = exp(i theta n . J) through the eigendecomposition of n . J
    const double theta = rng.uniform(0.0, 2.0 * M_PI);
    double nx = rng.normal(), ny = rng.normal(), nz = rng.normal();
    const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
    nx /= nn;
    ny /= nn;
    nz /= nn;
    const ComplexMatrix h = spin_jx(1.5) * cx(nx) + spin_jy(1.5) * cx(ny) + spin_jz(1.5) * cx(nz);
    const auto spec = hermitian_eig(h);
    ComplexMatrix u(4, 4);
    for (int k = 0; k < 4; ++k) {
      const cx phase = std::polar(1.0, theta * spec.values[static_cast<size_t>(k)]);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) u(i, j) += phase * spec.vectors(i, k) * std::conj(spec.vectors(j, k));
    }
    const ComplexMatrix uu = kron(u, u);
    CHECK(max_abs_diff(uu * rho.mat, rho.mat * uu) <= 1e-9);
  }
}

TEST_CASE("rot4 rejects bad weights") {
  CHECK_THROWS_AS(rot4({0.6, 0.5, 0.2}), Error);
  CHECK_THROWS_AS(rot4({-0.1, 0.5, 0.2}), Error);
}

TEST_CASE("ghz properties") {
  const PureState g = ghz(3);
  double norm2 = 0.0;
  for (const auto& v : g.vec) norm2 += std::norm(v);
  CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ghz(1), Error);
}

TEST_CASE("haar_pure is normalized and unitarily invariant in distribution") {
  Rng rng(101);
  const DimProfile dims{3, 3};
  // Kolmogorov-Smirnov on x = |<e0|psi>|^2, distributed Beta(1, D-1):
  // F(x) = 1 - (1-x)^{D-1}
  const int n = 400;
  const int dim = dims.total();
  const ComplexMatrix u = haar_unitary(dim, rng);
  std::vector<double> raw, rotated;
  for (int i = 0; i < n; ++i) {
    const PureState psi = haar_pure(dims, rng);
    double norm2 = 0.0;
    for (const auto& v : psi.vec) norm2 += std::norm(v);
    CHECK(std::abs(norm2 - 1.0) <= 1e-12);
    raw.push_back(std::norm(psi.vec[0]));
    cx amp = 0.0;
    for (int k = 0; k < dim; ++k) amp += u(0, k) * psi.vec[static_cast<size_t>(k)];
    rotated.push_back(std::norm(amp));
  }
  auto ks_statistic = [&](std::vector<double>& xs) {
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
      const double cdf = 1.0 - std::pow(1.0 - xs[i], dim - 1);
      ks = std::max(ks, std::abs(cdf - static_cast<double>(i + 1) / n));
      ks = std::max(ks, std::abs(cdf - static_cast<double>(i) / n));
    }
    return ks;
  };
  // 1.63 / sqrt(n) is the 1% critical value; seeds are fixed so this is stable
  CHECK(ks_statistic(raw) <= 1.63 / std::sqrt(static_cast<double>(n)));
  CHECK(ks_statistic(rotated) <= 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("ginibre_mixed: valid states, rank-1 samples are pure, seeds reproduce") {
  const DimProfile dims{3};
  const DensityMatrix pure = ginibre_mixed(dims, 1, 77);
  CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-10));
  validate_density(pure);

  const DensityMatrix a = ginibre_mixed(DimProfile{2, 2}, 4, 123);
  const DensityMatrix b = ginibre_mixed(DimProfile{2, 2}, 4, 123);
  CHECK(max_abs_diff(a.mat, b.mat) == 0.0);
  validate_density(a);
  CHECK_THROWS_AS(ginibre_mixed(dims, 0, 1), Error);
}

TEST_CASE("haar_unitary produces unitaries") {
  Rng rng(55);
  for (int d : {2, 4, 7}) {
    const ComplexMatrix u = haar_unitary(d, rng);
    CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(d)) <= 1e-12);
  }
}

TEST_CASE("wootters examples") {
  CHECK(wootters_concurrence(bell_diagonal(0.75, 0.25, 0, 0).state) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(wootters_concurrence(to_density(psi_plus(2))) == doctest::Approx(1.0).epsilon(1e-10));

  Rng rng(61);
  const auto a = ginibre_mixed(DimProfile{2}, 2, rng);
  const auto b = ginibre_mixed(DimProfile{2}, 2, rng);
  const DensityMatrix product{kron(a.mat, b.mat), DimProfile{2, 2}};
  CHECK(wootters_concurrence(product) <= 1e-10);

  CHECK_THROWS_AS(wootters_concurrence(to_density(psi_plus(3))), Error);
}

TEST_CASE("wootters agrees with the Bell-diagonal closed form on 1000 samples") {
  Rng rng(71);
  for (int trial = 0; trial < 1000; ++trial) {
    double p[4];
    double total = 0.0;
    for (double& x : p) {
      x = rng.uniform();
      total += x;
    }
    for (double& x : p) x /= total;
    const auto bd = bell_diagonal(p[0], p[1], p[2], p[3]);
    CHECK(std::abs(wootters_concurrence(bd.state) - bd.concurrence) <= 1e-10);
  }
}

TEST_CASE("random_separable yields valid PPT states") {
  Rng rng(81);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_separable(DimProfile{2, 2}, 4, rng);
    validate_density(rho);
    const ComplexMatrix gamma = partial_transpose(rho.mat, rho.dims, {1});
    CHECK(min_eigenvalue(gamma) >= -1e-10);
  }
}
