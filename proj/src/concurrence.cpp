#include "entbound/concurrence.hpp"

#include <algorithm>
#include <cmath>

namespace entbound::conc {

using linalg::cx;
using linalg::DimProfile;
using states::to_density;

namespace {

constexpr double kRankTol = 1e-10;  // Schmidt coefficients below this count as zero

// Coefficient matrix M of a bipartite |psi>: psi[(i,j)] = M(i,j).
ComplexMatrix coefficient_matrix(const PureState& psi) {
  require(psi.dims.factors() == 2, Err::BadPartition, "bipartite pure state expected");
  const int da = psi.dims[0];
  const int db = psi.dims[1];
  ComplexMatrix m(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) m(i, j) = psi.vec[static_cast<size_t>(i) * db + j];
  return m;
}

double reduction_purity(const PureState& psi) {
  const ComplexMatrix m = coefficient_matrix(psi);
  const ComplexMatrix rho_a = m * m.adjoint();
  return linalg::trace_product(rho_a, rho_a).real();
}

}  // namespace

SchmidtData schmidt(const PureState& psi) {
  const ComplexMatrix m = coefficient_matrix(psi);
  const ComplexMatrix rho_a = m * m.adjoint();
  const auto spec = linalg::hermitian_eig(rho_a);
  SchmidtData out;
  for (double v : spec.values) {
    const double mu = std::max(0.0, v);
    out.squared.push_back(mu);
    out.coefficients.push_back(std::sqrt(mu));
  }
  return out;
}

double concurrence_pure(const PureState& psi) {
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - reduction_purity(psi))));
}

double concurrence_multipartite_pure(const PureState& psi) {
  const int n = psi.dims.factors();
  require(n >= 2, Err::BadPartition, "concurrence_multipartite_pure: need at least two parties");
  const DensityMatrix rho = to_density(psi);
  double purity_sum = 0.0;
  int subsets = 0;
  for (int mask = 1; mask + 1 < (1 << n); ++mask) {
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
      if (mask & (1 << k)) keep.push_back(k);
    const ComplexMatrix red = linalg::partial_trace(rho.mat, rho.dims, keep);
    purity_sum += linalg::trace_product(red, red).real();
    ++subsets;
  }
  const double inside = std::max(0.0, subsets - purity_sum);
  return std::pow(2.0, 1.0 - n / 2.0) * std::sqrt(inside);
}

double elementary_symmetric(int k, const std::vector<double>& xs) {
  const int d = static_cast<int>(xs.size());
  require(k >= 1 && k <= d, Err::BadK, "elementary_symmetric: k out of range");
  // coefficients of prod (1 + x_i t), updated in place
  std::vector<double> e(static_cast<size_t>(k) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < d; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j)
      e[static_cast<size_t>(j)] += xs[static_cast<size_t>(i)] * e[static_cast<size_t>(j) - 1];
  return e[static_cast<size_t>(k)];
}

double h_k(const std::vector<double>& eigenvalues, int k) {
  const int d = static_cast<int>(eigenvalues.size());
  require(k >= 2 && k <= d, Err::BadK, "h_k: k must lie in [2, d]");
  // eigenvalues below the rank tolerance count as exact zeros; sigma_k roots
  // are very sensitive near rank boundaries
  std::vector<double> lam = eigenvalues;
  for (double& v : lam) v = v <= kRankTol ? 0.0 : v;
  const double num = std::max(0.0, elementary_symmetric(k, lam));
  // sigma_k at the maximally mixed spectrum: C(d,k) / d^k
  double ref = 1.0;
  for (int i = 0; i < k; ++i) ref *= static_cast<double>(d - i) / (static_cast<double>(i + 1) * d);
  return std::pow(num / ref, 1.0 / k);
}

double h_k(const DensityMatrix& rho, int k) { return h_k(linalg::hermitian_eig(rho.mat).values, k); }

double c_k_pure(const PureState& psi, int k) {
  require(psi.dims.factors() == 2 && psi.dims[0] == psi.dims[1], Err::BadPartition,
          "c_k_pure: square bipartite state expected");
  return h_k(schmidt(psi).squared, k);
}

int schmidt_rank(const PureState& psi) {
  const SchmidtData data = schmidt(psi);
  int rank = 0;
  for (double mu : data.squared)
    if (mu > kRankTol) ++rank;
  return rank;
}

double phi_concurrence_pure(const PureState& psi, const maps::LinearMapRep& phi) {
  require(phi.is_channel(), Err::NotAChannel, "phi_concurrence_pure: map is not a channel");
  require(phi.in_dim() == psi.dim(), Err::DimMismatch, "phi_concurrence_pure: dimension mismatch");
  const ComplexMatrix out = phi.apply(to_density(psi).mat);
  const double p = linalg::trace_product(out, out).real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - p)));
}

}  // namespace entbound::conc
