#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entbound/maps.hpp"
#include "entbound/observables.hpp"
#include "entbound/states.hpp"
#include "test_helpers.hpp"

using namespace entbound;
using namespace entbound::obs;
using namespace entbound::linalg;
using states::DensityMatrix;
using states::ginibre_mixed;
using states::to_density;
using testutil::max_abs_diff;

namespace {

double marginal_overlap(const DensityMatrix& rho, const DensityMatrix& sigma, int factor) {
  return trace_product(partial_trace(rho.mat, rho.dims, {factor}),
                       partial_trace(sigma.mat, sigma.dims, {factor}))
      .real();
}

}  // namespace

TEST_CASE("swap operator and projectors") {
  const Observable v2 = swap(2);
  // V|01> = |10>
  CHECK(v2.mat(2, 1) == cx(1.0));
  CHECK(v2.mat(1, 2) == cx(1.0));

  for (int d : {2, 3}) {
    const Observable v = swap(d);
    CHECK(max_abs_diff(v.mat * v.mat, ComplexMatrix::identity(d * d)) == 0.0);
    const Observable p = sym_proj(d);
    const Observable m = antisym_proj(d);
    CHECK(max_abs_diff(p.mat + m.mat, ComplexMatrix::identity(d * d)) == 0.0);
    CHECK(max_abs_diff(p.mat * p.mat, p.mat) <= 1e-15);
    CHECK(max_abs_diff(m.mat * m.mat, m.mat) <= 1e-15);
    CHECK(m.mat.trace().real() == doctest::Approx(d * (d - 1) / 2.0).epsilon(1e-14));
  }

  // swap trick Tr(V A (x) B) = Tr(AB)
  Rng rng(3);
  const ComplexMatrix a = testutil::random_matrix(3, 3, rng);
  const ComplexMatrix b = testutil::random_matrix(3, 3, rng);
  const cx lhs = trace_product(swap(3).mat, kron(a, b));
  const cx rhs = (a * b).trace();
  CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("mb witness expectation identities") {
  Rng rng(5);
  for (int d : {2, 3}) {
    const auto [w1, w2] = mb_witnesses(d);
    CHECK(is_hermitian(w1.mat, 1e-12));
    for (int trial = 0; trial < 100; ++trial) {
      const auto rho = ginibre_mixed(DimProfile{d, d}, d * d, rng);
      const auto sigma = ginibre_mixed(DimProfile{d, d}, d, rng);
      const double ov = states::overlap(rho, sigma);
      const double got1 = two_copy_expectation(w1, rho, sigma);
      const double want1 = 2.0 * (ov - marginal_overlap(rho, sigma, 0));
      CHECK(std::abs(got1 - want1) <= 1e-10);
      const double got2 = two_copy_expectation(w2, rho, sigma);
      const double want2 = 2.0 * (ov - marginal_overlap(rho, sigma, 1));
      CHECK(std::abs(got2 - want2) <= 1e-10);
    }
  }
}

TEST_CASE("dual witness expectation identities") {
  Rng rng(7);
  const int d = 3;
  const auto [w1, w2] = dual_witnesses(d);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = ginibre_mixed(DimProfile{d, d}, 4, rng);
    const double got = two_copy_expectation(w1, rho, rho);
    const double want = 2.0 * (1.0 - marginal_overlap(rho, rho, 0));
    CHECK(std::abs(got - want) <= 1e-10);
    const double got2 = two_copy_expectation(w2, rho, rho);
    const double want2 = 2.0 * (1.0 - marginal_overlap(rho, rho, 1));
    CHECK(std::abs(got2 - want2) <= 1e-10);
  }
}

TEST_CASE("mb witness on two copies of psi_plus(2) gives C^2 = 1") {
  const auto rho = to_density(states::psi_plus(2));
  const auto [w1, w2] = mb_witnesses(2);
  CHECK(two_copy_expectation(w1, rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(two_copy_expectation(w2, rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mb witnesses are nonpositive on product pairs") {
  Rng rng(9);
  const int d = 2;
  const auto [w1, w2] = mb_witnesses(d);
  double max_seen = -1e300;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = ginibre_mixed(DimProfile{d}, d, rng);
    const auto b = ginibre_mixed(DimProfile{d}, d, rng);
    const DensityMatrix prod{kron(a.mat, b.mat), DimProfile{d, d}};
    max_seen = std::max(max_seen, two_copy_expectation(w1, prod, prod));
  }
  CHECK(max_seen <= 1e-10);
}

TEST_CASE("multipartite witnesses match the reduction-sum oracle") {
  Rng rng(11);
  const DimProfile dims{2, 2, 2};
  const auto [w, w_dual] = multipartite_witnesses(dims);
  CHECK(is_hermitian(w.mat, 1e-12));
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = ginibre_mixed(dims, 4, rng);
    const auto sigma = ginibre_mixed(dims, 8, rng);
    double red_sum = 0.0;
    for (int mask = 1; mask < 7; ++mask) {
      std::vector<int> keep;
      for (int k = 0; k < 3; ++k)
        if (mask & (1 << k)) keep.push_back(k);
      red_sum += trace_product(testutil::naive_partial_trace(rho.mat, dims, keep),
                               testutil::naive_partial_trace(sigma.mat, dims, keep))
                     .real();
    }
    const double want = 4.0 / 8.0 * (6.0 * states::overlap(rho, sigma) - red_sum);
    CHECK(std::abs(two_copy_expectation(w, rho, sigma) - want) <= 1e-9);
  }
}

TEST_CASE("multipartite witnesses on GHZ and the dual gap") {
  const auto ghz_rho = to_density(states::ghz(3));
  const auto [w, w_dual] = multipartite_witnesses(DimProfile{2, 2, 2});
  CHECK(two_copy_expectation(w, ghz_rho, ghz_rho) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(two_copy_expectation(w_dual, ghz_rho, ghz_rho) == doctest::Approx(1.5).epsilon(1e-12));

  // W~ - W = 8 (1 - 2^{1-N}) P-, which is positive semidefinite
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = ginibre_mixed(DimProfile{2, 2, 2}, 5, rng);
    const double gap = two_copy_expectation(w_dual, rho, rho) - two_copy_expectation(w, rho, rho);
    CHECK(gap >= -1e-11);
  }
}

TEST_CASE("o_lambda with the identity map is the full swap") {
  const DimProfile dims{2, 3};
  const Observable o = o_lambda(maps::identity_map(3), dims);
  CHECK(max_abs_diff(o.mat, swap_matrix(6)) <= 1e-12);
}

TEST_CASE("o_lambda trace identity for reduction, transposition, Breuer maps") {
  Rng rng(17);
  struct Case {
    maps::LinearMapRep map;
    int d;
  };
  const std::vector<Case> cases = {{maps::reduction_map(3), 3},
                                   {maps::transposition_map(3), 3},
                                   {maps::transposition_map(states::haar_unitary(3, rng)), 3},
                                   {maps::breuer_map(4), 4}};
  for (const auto& c : cases) {
    const DimProfile dims{c.d, c.d};
    const Observable o = o_lambda(c.map, dims);
    CHECK(is_hermitian(o.mat, 1e-10));
    for (int trial = 0; trial < 100; ++trial) {
      const auto rho = ginibre_mixed(dims, c.d, rng);
      const double got = two_copy_expectation(o, rho, rho);
      const double want = trace_product(maps::apply_one_side(c.map, rho, maps::Side::B), rho.mat).real();
      CHECK(std::abs(got - want) <= 1e-10);
    }
  }
}

TEST_CASE("o_lambda is bilinear: identity holds for distinct states") {
  Rng rng(19);
  const DimProfile dims{3, 3};
  const Observable o = o_lambda(maps::reduction_map(3), dims);
  for (int trial = 0; trial < 50; ++trial) {
    const auto rho = ginibre_mixed(dims, 5, rng);
    const auto sigma = ginibre_mixed(dims, 9, rng);
    const double got = two_copy_expectation(o, rho, sigma);
    const double want = trace_product(maps::apply_one_side(maps::reduction_map(3), rho, maps::Side::B),
                                      sigma.mat)
                            .real();
    CHECK(std::abs(got - want) <= 1e-10);
  }
}

TEST_CASE("o_tau with the empty set measures purity") {
  Rng rng(23);
  const DimProfile dims{2, 2};
  const Observable o = o_tau(dims, {});
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = ginibre_mixed(dims, 3, rng);
    CHECK(std::abs(two_copy_expectation(o, rho, rho) - states::purity(rho)) <= 1e-10);
  }
}

TEST_CASE("o_tau trace identity against the explicit sigma_y construction") {
  Rng rng(29);
  const DimProfile dims{2, 2};
  ComplexMatrix sy(2, 2);
  sy(0, 1) = cx(0, -1);
  sy(1, 0) = cx(0, 1);

  for (const std::vector<int>& set : {std::vector<int>{1}, std::vector<int>{0}, std::vector<int>{0, 1}}) {
    const Observable o = o_tau(dims, set);
    // tau^{I'}(rho) = (prod sigma_y) rho^{T_{I'}} (prod sigma_y)^dag
    ComplexMatrix rot = ComplexMatrix::identity(1);
    for (int k = 0; k < 2; ++k) {
      bool inside = false;
      for (int s : set) inside |= (s == k);
      rot = kron(rot, inside ? sy : ComplexMatrix::identity(2));
    }
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = ginibre_mixed(dims, 4, rng);
      const ComplexMatrix tau = rot * partial_transpose(rho.mat, dims, set) * rot.adjoint();
      const double want = trace_product(tau, rho.mat).real();
      CHECK(std::abs(two_copy_expectation(o, rho, rho) - want) <= 1e-12);
    }
    // psi_plus(2) case pinned explicitly
    const auto plus = to_density(states::psi_plus(2));
    const ComplexMatrix tau_plus = rot * partial_transpose(plus.mat, dims, set) * rot.adjoint();
    CHECK(std::abs(two_copy_expectation(o, plus, plus) - trace_product(tau_plus, plus.mat).real()) <= 1e-12);
  }
}

TEST_CASE("o_tau spectrum lies on the three-point lattice") {
  const DimProfile dims{2, 2};
  for (const std::vector<int>& set : {std::vector<int>{1}, std::vector<int>{0, 1}}) {
    const Observable o = o_tau(dims, set);
    const double scale = std::pow(2.0, static_cast<double>(set.size()));
    for (double v : hermitian_eig(o.mat).values) {
      const bool on_lattice =
          std::abs(v) <= 1e-10 || std::abs(v - scale) <= 1e-10 || std::abs(v + scale) <= 1e-10;
      CHECK(on_lattice);
    }
  }
  CHECK_THROWS_AS(o_tau(DimProfile{2, 3}, {0}), Error);
}

TEST_CASE("positive_map_witness: canonical transposition gives d rho^Gamma") {
  const auto rho = states::isotropic(3, 0.9).state;  // maximally mixed marginals
  const Observable w = positive_map_witness(maps::transposition_map(3), rho, AlphaStrategy::Canonical);
  const ComplexMatrix expected = partial_transpose(rho.mat, rho.dims, {1}) * cx(3.0);
  CHECK(max_abs_diff(w.mat, expected) <= 1e-10);
}

TEST_CASE("positive_map_witness stays below the identity for every strategy") {
  Rng rng(31);
  const std::vector<maps::LinearMapRep> maps_list = {maps::reduction_map(4), maps::transposition_map(4),
                                                     maps::breuer_map(4)};
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = ginibre_mixed(DimProfile{4, 4}, 6, rng);
    const auto& map = maps_list[static_cast<size_t>(trial % 3)];
    double alpha_prev = 1e300;
    for (AlphaStrategy strategy : {AlphaStrategy::Tight, AlphaStrategy::Norm, AlphaStrategy::Canonical}) {
      const Observable w = positive_map_witness(map, rho, strategy);
      CHECK(max_eigenvalue(w.mat) <= 1.0 + 1e-9);
      const double alpha = witness_alpha(map, rho, strategy);
      CHECK(alpha <= alpha_prev + 1e-12);  // tight >= norm >= canonical
      alpha_prev = alpha;
    }
  }
}

TEST_CASE("witness_alpha flags degenerate scales") {
  // the zero map has a vanishing tight denominator
  const auto zero_map = maps::LinearMapRep::from_choi(2, 2, ComplexMatrix(4, 4));
  const auto rho = to_density(states::psi_plus(2));
  CHECK_THROWS_AS(witness_alpha(zero_map, rho, AlphaStrategy::Tight), Error);
}
