#include "entbound/states.hpp"

#include <algorithm>
#include <cmath>

namespace entbound::states {

using linalg::hermitian_eig;
using linalg::kron;
using linalg::partial_trace;
using linalg::Spectrum;
using linalg::trace_product;

DensityMatrix to_density(const PureState& psi) {
  const int d = psi.dim();
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = psi.vec[static_cast<size_t>(i)] * std::conj(psi.vec[static_cast<size_t>(j)]);
  return {std::move(m), psi.dims};
}

void validate_density(const DensityMatrix& rho) {
  require(rho.mat.is_square() && rho.mat.rows() == rho.dims.total(), Err::DimMismatch,
          "density matrix size does not match dimension profile");
  require(linalg::is_hermitian(rho.mat, 1e-10), Err::NonHermitian, "density matrix is not Hermitian");
  require(std::abs(rho.mat.trace() - cx(1.0)) <= 1e-10, Err::BadInput, "density matrix trace is not 1");
  require(linalg::min_eigenvalue(rho.mat) >= -1e-10, Err::NotPSD, "density matrix is not positive semidefinite");
}

double purity(const DensityMatrix& rho) { return trace_product(rho.mat, rho.mat).real(); }

double overlap(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_product(rho.mat, sigma.mat).real();
}

DensityMatrix reduction(const DensityMatrix& rho, const std::vector<int>& keep) {
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<int> kept_dims;
  for (int k : keep_sorted) kept_dims.push_back(rho.dims[k]);
  return {partial_trace(rho.mat, rho.dims, keep), DimProfile(kept_dims)};
}

PureState psi_plus(int d) {
  require(d >= 2, Err::BadDim, "psi_plus: d must be at least 2");
  PureState psi;
  psi.dims = DimProfile{d, d};
  psi.vec.assign(static_cast<size_t>(d) * d, 0.0);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) psi.vec[static_cast<size_t>(i) * d + i] = a;
  return psi;
}

ComplexMatrix psi_plus_projector(int d) { return to_density(psi_plus(d)).mat; }

StateWithConcurrence bell_diagonal(double p1, double p2, double p3, double p4) {
  std::vector<double> p{p1, p2, p3, p4};
  double sum = 0.0;
  for (double v : p) {
    require(v >= -1e-12, Err::BadProbabilities, "bell_diagonal: negative probability");
    sum += v;
  }
  require(std::abs(sum - 1.0) <= 1e-10, Err::BadProbabilities, "bell_diagonal: probabilities do not sum to 1");
  std::sort(p.begin(), p.end(), std::greater<double>());

  // |psi+-> = (|00> +- |11>)/sqrt2, |phi+-> = (|01> +- |10>)/sqrt2
  const double s = M_SQRT1_2;
  const std::vector<std::vector<cx>> bell = {
      {s, 0, 0, s}, {s, 0, 0, -s}, {0, s, s, 0}, {0, s, -s, 0}};

  ComplexMatrix m(4, 4);
  for (int b = 0; b < 4; ++b) {
    if (p[static_cast<size_t>(b)] == 0.0) continue;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        m(i, j) += p[static_cast<size_t>(b)] * bell[static_cast<size_t>(b)][static_cast<size_t>(i)] *
                   std::conj(bell[static_cast<size_t>(b)][static_cast<size_t>(j)]);
  }
  return {{std::move(m), DimProfile{2, 2}}, std::max(0.0, 2.0 * p[0] - 1.0)};
}

StateWithConcurrence isotropic(int d, double f) {
  require(d >= 2, Err::BadDim, "isotropic: d must be at least 2");
  require(f >= 0.0 && f <= 1.0, Err::BadFidelity, "isotropic: fidelity must lie in [0,1]");
  const ComplexMatrix proj = psi_plus_projector(d);
  ComplexMatrix m = ComplexMatrix::identity(d * d) - proj;
  m *= (1.0 - f) / (d * d - 1.0);
  m += proj * cx(f);
  const double conc = f <= 1.0 / d ? 0.0 : std::sqrt(2.0 * d / (d - 1.0)) * (f - 1.0 / d);
  return {{std::move(m), DimProfile{d, d}}, conc};
}

ComplexMatrix spin_jz(double s) {
  const int d = static_cast<int>(std::lround(2 * s + 1));
  ComplexMatrix jz(d, d);
  for (int i = 0; i < d; ++i) jz(i, i) = s - i;
  return jz;
}

namespace {

ComplexMatrix spin_jplus(double s) {
  const int d = static_cast<int>(std::lround(2 * s + 1));
  ComplexMatrix jp(d, d);
  for (int i = 1; i < d; ++i) {
    const double m = s - i;  // J+ maps |s,m> -> |s,m+1>, i.e. index i -> i-1
    jp(i - 1, i) = std::sqrt(s * (s + 1) - m * (m + 1));
  }
  return jp;
}

}  // namespace

ComplexMatrix spin_jx(double s) {
  const ComplexMatrix jp = spin_jplus(s);
  return (jp + jp.adjoint()) * cx(0.5);
}

ComplexMatrix spin_jy(double s) {
  const ComplexMatrix jp = spin_jplus(s);
  return (jp - jp.adjoint()) * cx(0.0, -0.5);
}

const std::vector<ComplexMatrix>& rot4_projectors() {
  static const std::vector<ComplexMatrix> projectors = [] {
    const double s = 1.5;
    const ComplexMatrix i4 = ComplexMatrix::identity(4);
    const ComplexMatrix ops[3] = {spin_jx(s), spin_jy(s), spin_jz(s)};
    ComplexMatrix j2(16, 16);
    for (const auto& j : ops) {
      const ComplexMatrix tot = kron(j, i4) + kron(i4, j);
      j2 += tot * tot;
    }
    const Spectrum spec = hermitian_eig(j2);
    auto clusters = linalg::cluster_projectors(spec, 1e-8);
    require(clusters.size() == 4, Err::ClusterMismatch, "rot4: expected four total-J sectors");
    // hermitian_eig sorts descending, so clusters arrive J = 3, 2, 1, 0
    std::reverse(clusters.begin(), clusters.end());
    std::vector<ComplexMatrix> out;
    for (int J = 0; J <= 3; ++J) {
      auto& [value, proj] = clusters[static_cast<size_t>(J)];
      const double expected = J * (J + 1.0);
      require(std::abs(value - expected) <= 1e-8, Err::ClusterMismatch, "rot4: unexpected J^2 eigenvalue");
      const double tr = proj.trace().real();
      require(std::lround(tr) == 2 * J + 1, Err::ClusterMismatch, "rot4: sector multiplicity is not 2J+1");
      proj *= cx(1.0 / (2.0 * J + 1.0));
      out.push_back(std::move(proj));
    }
    return out;
  }();
  return projectors;
}

DensityMatrix rot4(const RotParams& params) {
  const double w3 = 1.0 - params.p - params.q - params.r;
  const double weights[4] = {params.p, params.q, params.r, w3};
  for (double w : weights)
    require(w >= -1e-12, Err::BadProbabilities, "rot4: weights must be nonnegative with p+q+r <= 1");
  const auto& proj = rot4_projectors();
  ComplexMatrix m(16, 16);
  for (int J = 0; J <= 3; ++J) m += proj[static_cast<size_t>(J)] * cx(weights[J]);
  return {std::move(m), DimProfile{4, 4}};
}

PureState ghz(int n_parties) {
  require(n_parties >= 2, Err::BadDim, "ghz: need at least two parties");
  PureState psi;
  psi.dims = DimProfile(std::vector<int>(static_cast<size_t>(n_parties), 2));
  const int dim = psi.dims.total();
  psi.vec.assign(static_cast<size_t>(dim), 0.0);
  psi.vec.front() = M_SQRT1_2;
  psi.vec.back() = M_SQRT1_2;
  return psi;
}

PureState haar_pure(const DimProfile& dims, Rng& rng) {
  PureState psi;
  psi.dims = dims;
  const int dim = dims.total();
  psi.vec.resize(static_cast<size_t>(dim));
  double norm2 = 0.0;
  for (auto& v : psi.vec) {
    v = rng.complex_normal();
    norm2 += std::norm(v);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : psi.vec) v *= inv;
  return psi;
}

PureState haar_pure(const DimProfile& dims, std::uint64_t seed) {
  Rng rng(seed);
  return haar_pure(dims, rng);
}

DensityMatrix ginibre_mixed(const DimProfile& dims, int rank, Rng& rng) {
  require(rank >= 1, Err::BadDim, "ginibre_mixed: rank must be at least 1");
  const int d = dims.total();
  ComplexMatrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho *= cx(1.0 / rho.trace().real());
  return {std::move(rho), dims};
}

DensityMatrix ginibre_mixed(const DimProfile& dims, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return ginibre_mixed(dims, rank, rng);
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  // QR of a Ginibre matrix by modified Gram-Schmidt, R-diagonal phases fixed.
  ComplexMatrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.complex_normal();
  ComplexMatrix q(d, d);
  for (int col = 0; col < d; ++col) {
    std::vector<cx> v(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) v[static_cast<size_t>(i)] = a(i, col);
    cx diag = 0.0;
    for (int prev = 0; prev < col; ++prev) {
      cx proj = 0.0;
      for (int i = 0; i < d; ++i) proj += std::conj(q(i, prev)) * v[static_cast<size_t>(i)];
      for (int i = 0; i < d; ++i) v[static_cast<size_t>(i)] -= proj * q(i, prev);
    }
    double norm2 = 0.0;
    for (const auto& x : v) norm2 += std::norm(x);
    const double norm = std::sqrt(norm2);
    cx r_diag = 0.0;
    for (int i = 0; i < d; ++i) r_diag += std::conj(v[static_cast<size_t>(i)] / norm) * a(i, col);
    diag = r_diag / std::abs(r_diag);
    for (int i = 0; i < d; ++i) q(i, col) = v[static_cast<size_t>(i)] / norm * diag;
  }
  return q;
}

DensityMatrix random_separable(const DimProfile& dims, int terms, Rng& rng) {
  require(terms >= 1, Err::BadInput, "random_separable: need at least one term");
  std::vector<double> w(static_cast<size_t>(terms));
  double wsum = 0.0;
  for (auto& x : w) {
    x = rng.uniform();
    wsum += x;
  }
  const int d = dims.total();
  ComplexMatrix m(d, d);
  for (int t = 0; t < terms; ++t) {
    ComplexMatrix prod = ComplexMatrix::identity(1);
    for (int k = 0; k < dims.factors(); ++k) {
      const auto local = ginibre_mixed(DimProfile{dims[k]}, dims[k], rng);
      prod = kron(prod, local.mat);
    }
    m += prod * cx(w[static_cast<size_t>(t)] / wsum);
  }
  return {std::move(m), dims};
}

double wootters_concurrence(const DensityMatrix& rho) {
  require(rho.dims.factors() == 2 && rho.dims[0] == 2 && rho.dims[1] == 2, Err::BadDim,
          "wootters_concurrence: two-qubit states only");
  ComplexMatrix yy(4, 4);  // sigma_y (x) sigma_y
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const ComplexMatrix rho_tilde = yy * rho.mat.conjugate() * yy;
  const ComplexMatrix root = linalg::psd_sqrt(rho.mat);
  const Spectrum spec = hermitian_eig(root * rho_tilde * root);
  double c = 0.0;
  for (size_t k = 0; k < spec.values.size(); ++k) {
    const double lam = std::sqrt(std::max(0.0, spec.values[k]));
    c += (k == 0 ? lam : -lam);
  }
  return std::max(0.0, c);
}

}  // namespace entbound::states
