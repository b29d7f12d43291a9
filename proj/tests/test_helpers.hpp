#ifndef ENTBOUND_TEST_HELPERS_HPP
#define ENTBOUND_TEST_HELPERS_HPP

#include <cmath>
#include <vector>

#include "entbound/linalg.hpp"
#include "entbound/rng.hpp"
#include "entbound/states.hpp"

namespace testutil {

using entbound::Rng;
using entbound::linalg::ComplexMatrix;
using entbound::linalg::cx;
using entbound::linalg::DimProfile;

inline ComplexMatrix random_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

inline ComplexMatrix random_hermitian(int d, Rng& rng) {
  const ComplexMatrix g = random_matrix(d, d, rng);
  return (g + g.adjoint()) * cx(0.5);
}

// Independent partial-trace oracle: plain index sums, no stride tables.
inline ComplexMatrix naive_partial_trace(const ComplexMatrix& m, const DimProfile& dims,
                                         const std::vector<int>& keep) {
  const int n = dims.factors();
  std::vector<bool> kept(static_cast<size_t>(n), false);
  for (int k : keep) kept[static_cast<size_t>(k)] = true;

  auto decompose = [&](int lin) {
    std::vector<int> idx(static_cast<size_t>(n));
    for (int k = n - 1; k >= 0; --k) {
      idx[static_cast<size_t>(k)] = lin % dims[k];
      lin /= dims[k];
    }
    return idx;
  };

  int dim_keep = 1;
  for (int k = 0; k < n; ++k)
    if (kept[static_cast<size_t>(k)]) dim_keep *= dims[k];

  ComplexMatrix out(dim_keep, dim_keep);
  const int dim = dims.total();
  for (int r = 0; r < dim; ++r) {
    const auto ri = decompose(r);
    for (int c = 0; c < dim; ++c) {
      const auto ci = decompose(c);
      bool diagonal_on_traced = true;
      for (int k = 0; k < n; ++k)
        if (!kept[static_cast<size_t>(k)] && ri[static_cast<size_t>(k)] != ci[static_cast<size_t>(k)])
          diagonal_on_traced = false;
      if (!diagonal_on_traced) continue;
      int ro = 0, co = 0;
      for (int k = 0; k < n; ++k) {
        if (!kept[static_cast<size_t>(k)]) continue;
        ro = ro * dims[k] + ri[static_cast<size_t>(k)];
        co = co * dims[k] + ci[static_cast<size_t>(k)];
      }
      out(ro, co) += m(r, c);
    }
  }
  return out;
}

// Brute-force elementary symmetric polynomial by subset enumeration.
inline double naive_elementary_symmetric(int k, const std::vector<double>& xs) {
  const int d = static_cast<int>(xs.size());
  double total = 0.0;
  for (int mask = 0; mask < (1 << d); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    double prod = 1.0;
    for (int i = 0; i < d; ++i)
      if (mask & (1 << i)) prod *= xs[static_cast<size_t>(i)];
    total += prod;
  }
  return total;
}

// Independent largest-eigenvalue estimate by power iteration.
inline double power_iteration_max_eig(const ComplexMatrix& m, Rng& rng, int iters = 2000) {
  std::vector<cx> v(static_cast<size_t>(m.rows()));
  for (auto& x : v) x = rng.complex_normal();
  double lam = 0.0;
  for (int it = 0; it < iters; ++it) {
    std::vector<cx> w(v.size(), cx(0.0));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) w[static_cast<size_t>(i)] += m(i, j) * v[static_cast<size_t>(j)];
    double nrm = 0.0;
    cx ray = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      nrm += std::norm(w[i]);
      ray += std::conj(v[i]) * w[i];
    }
    lam = ray.real();
    nrm = std::sqrt(nrm);
    for (auto& x : w) x /= nrm;
    v = std::move(w);
  }
  return lam;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

}  // namespace testutil

#endif
