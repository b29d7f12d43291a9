#include "entbound/observables.hpp"

#include <cmath>

namespace entbound::obs {

using linalg::cx;
using linalg::kron;
using linalg::permute_subsystems;

ComplexMatrix swap_matrix(int d) {
  ComplexMatrix v(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

Observable swap(int d) {
  require(d >= 2, Err::BadDim, "swap: d must be at least 2");
  return {swap_matrix(d), DimProfile{d, d}, "A,A'"};
}

Observable sym_proj(int d) {
  require(d >= 2, Err::BadDim, "sym_proj: d must be at least 2");
  ComplexMatrix p = (ComplexMatrix::identity(d * d) + swap_matrix(d)) * cx(0.5);
  return {std::move(p), DimProfile{d, d}, "A,A'"};
}

Observable antisym_proj(int d) {
  require(d >= 2, Err::BadDim, "antisym_proj: d must be at least 2");
  ComplexMatrix p = (ComplexMatrix::identity(d * d) - swap_matrix(d)) * cx(0.5);
  return {std::move(p), DimProfile{d, d}, "A,A'"};
}

double expectation(const Observable& o, const DensityMatrix& rho) {
  return linalg::trace_product(o.mat, rho.mat).real();
}

double two_copy_expectation(const Observable& o, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const int d1 = rho.dim();
  const int d2 = sigma.dim();
  require(o.mat.rows() == d1 * d2, Err::DimMismatch, "two_copy_expectation: size mismatch");
  cx t = 0.0;
  for (int i = 0; i < d1; ++i)
    for (int ip = 0; ip < d2; ++ip)
      for (int j = 0; j < d1; ++j)
        for (int jp = 0; jp < d2; ++jp)
          t += o.mat(i * d2 + ip, j * d2 + jp) * rho.mat(j, i) * sigma.mat(jp, ip);
  return t.real();
}

namespace {

// (A,A',B,B') -> (A,B,A',B')
const std::vector<int> kPairToBlock{0, 2, 1, 3};

DimProfile doubled(const DimProfile& dims) {
  std::vector<int> d = dims.dims;
  d.insert(d.end(), dims.dims.begin(), dims.dims.end());
  return DimProfile(d);
}

// Interleaved (A_1,A_1',...,A_N,A_N') -> block (A_1..A_N, A_1'..A_N').
std::vector<int> interleaved_to_block(int n) {
  std::vector<int> perm(static_cast<size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    perm[static_cast<size_t>(k)] = 2 * k;
    perm[static_cast<size_t>(n + k)] = 2 * k + 1;
  }
  return perm;
}

}  // namespace

std::pair<Observable, Observable> mb_witnesses(int d) {
  require(d >= 2, Err::BadDim, "mb_witnesses: d must be at least 2");
  const ComplexMatrix v = swap_matrix(d);
  const ComplexMatrix id = ComplexMatrix::identity(d * d);
  const ComplexMatrix pm = (id - v) * cx(0.5);
  const ComplexMatrix diff = pm - (id + v) * cx(0.5);  // P- - P+
  const DimProfile four{d, d, d, d};
  ComplexMatrix w1 = permute_subsystems(kron(diff, pm) * cx(4.0), four, kPairToBlock);
  ComplexMatrix w2 = permute_subsystems(kron(pm, diff) * cx(4.0), four, kPairToBlock);
  return {{std::move(w1), four, "A,B,A',B'"}, {std::move(w2), four, "A,B,A',B'"}};
}

std::pair<Observable, Observable> dual_witnesses(int d) {
  require(d >= 2, Err::BadDim, "dual_witnesses: d must be at least 2");
  const ComplexMatrix v = swap_matrix(d);
  const ComplexMatrix id = ComplexMatrix::identity(d * d);
  const ComplexMatrix pm = (id - v) * cx(0.5);
  const DimProfile four{d, d, d, d};
  ComplexMatrix w1 = permute_subsystems(kron(pm, id) * cx(4.0), four, kPairToBlock);
  ComplexMatrix w2 = permute_subsystems(kron(id, pm) * cx(4.0), four, kPairToBlock);
  return {{std::move(w1), four, "A,B,A',B'"}, {std::move(w2), four, "A,B,A',B'"}};
}

std::pair<Observable, Observable> multipartite_witnesses(const DimProfile& dims) {
  const int n = dims.factors();
  require(n >= 2, Err::BadPartition, "multipartite_witnesses: need at least two parties");
  const int total = dims.total();
  const DimProfile full = doubled(dims);

  const ComplexMatrix v_full = swap_matrix(total);
  const ComplexMatrix id_full = ComplexMatrix::identity(total * total);
  const ComplexMatrix p_plus = (id_full + v_full) * cx(0.5);
  const ComplexMatrix p_minus = (id_full - v_full) * cx(0.5);

  // product of per-party symmetric projectors, built interleaved then permuted
  ComplexMatrix prod = ComplexMatrix::identity(1);
  std::vector<int> interleaved_dims;
  for (int k = 0; k < n; ++k) {
    const int dk = dims[k];
    prod = kron(prod, (ComplexMatrix::identity(dk * dk) + swap_matrix(dk)) * cx(0.5));
    interleaved_dims.push_back(dk);
    interleaved_dims.push_back(dk);
  }
  prod = permute_subsystems(prod, DimProfile(interleaved_dims), interleaved_to_block(n));

  const double c = 1.0 - std::pow(2.0, 1.0 - n);
  ComplexMatrix w = (p_plus - prod - p_minus * cx(c)) * cx(4.0);
  ComplexMatrix w_dual = w + p_minus * cx(8.0 * c);
  return {{std::move(w), full, "parties,primed"}, {std::move(w_dual), full, "parties,primed"}};
}

Observable o_lambda(const maps::LinearMapRep& map, const DimProfile& dims) {
  require(dims.factors() == 2, Err::DimMismatch, "o_lambda: bipartite dimension profile expected");
  require(map.in_dim() == map.out_dim() && map.in_dim() == dims[1], Err::DimMismatch,
          "o_lambda: map must act on the B factor");
  const int total = dims.total();
  const DimProfile four{dims[0], dims[1], dims[0], dims[1]};
  const ComplexMatrix v_full = swap_matrix(total);
  const maps::LinearMapRep dual = maps::dual_map(map);
  ComplexMatrix o = maps::apply_to_factor(dual, v_full, four, 1);
  return {std::move(o), four, "A,B,A',B'"};
}

Observable o_tau(const DimProfile& dims, const std::vector<int>& transposed_set) {
  const int n = dims.factors();
  for (int k = 0; k < n; ++k) require(dims[k] == 2, Err::NotQubits, "o_tau: all parties must be qubits");
  std::vector<bool> inside(static_cast<size_t>(n), false);
  for (int k : transposed_set) {
    require(k >= 0 && k < n, Err::BadPartition, "o_tau: subsystem index out of range");
    inside[static_cast<size_t>(k)] = true;
  }
  ComplexMatrix prod = ComplexMatrix::identity(1);
  std::vector<int> interleaved_dims;
  int count = 0;
  for (int k = 0; k < n; ++k) {
    if (inside[static_cast<size_t>(k)]) {
      prod = kron(prod, (ComplexMatrix::identity(4) - swap_matrix(2)) * cx(0.5));
      ++count;
    } else {
      prod = kron(prod, swap_matrix(2));
    }
    interleaved_dims.push_back(2);
    interleaved_dims.push_back(2);
  }
  prod = permute_subsystems(prod, DimProfile(interleaved_dims), interleaved_to_block(n));
  prod *= cx(std::pow(2.0, count));
  return {std::move(prod), doubled(dims), "parties,primed"};
}

double witness_alpha(const maps::LinearMapRep& map, const DensityMatrix& rho, AlphaStrategy strategy) {
  require(rho.dims.factors() == 2, Err::DimMismatch, "witness_alpha: bipartite states only");
  double denom = 0.0;
  switch (strategy) {
    case AlphaStrategy::Tight: {
      const ComplexMatrix w = maps::apply_one_side(map, rho, maps::Side::B);
      denom = linalg::max_eigenvalue(w);
      break;
    }
    case AlphaStrategy::Norm: {
      // positive Choi part of the map
      const auto spec = linalg::hermitian_eig(map.choi());
      ComplexMatrix pos(map.choi().rows(), map.choi().cols());
      for (int k = 0; k < pos.rows(); ++k) {
        const double lam = spec.values[static_cast<size_t>(k)];
        if (lam <= 0.0) continue;
        for (int i = 0; i < pos.rows(); ++i)
          for (int j = 0; j < pos.cols(); ++j)
            pos(i, j) += lam * spec.vectors(i, k) * std::conj(spec.vectors(j, k));
      }
      const auto lambda1 = maps::LinearMapRep::from_choi(map.in_dim(), map.out_dim(), std::move(pos));
      denom = linalg::operator_norm(maps::apply_one_side(lambda1, rho, maps::Side::B));
      break;
    }
    case AlphaStrategy::Canonical: {
      const ComplexMatrix rho_a = linalg::partial_trace(rho.mat, rho.dims, {0});
      denom = map.xi() * linalg::max_eigenvalue(rho_a);
      break;
    }
  }
  require(denom > 1e-12, Err::DegenerateScale, "witness_alpha: degenerate scale denominator");
  return 1.0 / denom;
}

Observable positive_map_witness(const maps::LinearMapRep& map, const DensityMatrix& rho, AlphaStrategy strategy) {
  const double alpha = witness_alpha(map, rho, strategy);
  ComplexMatrix w = maps::apply_one_side(map, rho, maps::Side::B);
  w *= cx(alpha);
  return {std::move(w), rho.dims, "A,B"};
}

}  // namespace entbound::obs
