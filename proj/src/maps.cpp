#include "entbound/maps.hpp"

#include <cmath>
#include <functional>

namespace entbound::maps {

using linalg::hermitian_eig;
using linalg::kron;
using linalg::partial_trace;
using linalg::Spectrum;
using states::psi_plus_projector;

//=========================================================================
// LinearMapRep
//=========================================================================

LinearMapRep LinearMapRep::from_choi(int in_dim, int out_dim, ComplexMatrix choi) {
  require(in_dim >= 1 && out_dim >= 1, Err::BadDim, "LinearMapRep: nonpositive dimension");
  require(choi.is_square() && choi.rows() == in_dim * out_dim, Err::DimMismatch,
          "LinearMapRep: Choi matrix size mismatch");
  LinearMapRep m;
  m.in_dim_ = in_dim;
  m.out_dim_ = out_dim;
  m.choi_ = std::move(choi);

  if (linalg::is_hermitian(m.choi_, 1e-10 * std::max(1.0, m.choi_.max_abs()))) {
    const Spectrum spec = hermitian_eig(m.choi_);
    m.lambda_max_ = spec.values.front();
    m.xi_ = in_dim == out_dim ? in_dim * m.lambda_max_ : std::nan("");
    // Kraus operators from the unnormalized Choi d * choi: K[(m,i)] = sqrt(d |l|) v[(i,m)]
    for (size_t k = 0; k < spec.values.size(); ++k) {
      const double lam = in_dim * spec.values[k];
      if (std::abs(lam) <= 1e-12) continue;
      ComplexMatrix op(out_dim, in_dim);
      const double w = std::sqrt(std::abs(lam));
      for (int i = 0; i < in_dim; ++i)
        for (int o = 0; o < out_dim; ++o) op(o, i) = w * spec.vectors(i * out_dim + o, static_cast<int>(k));
      (lam > 0 ? m.kraus_pos_ : m.kraus_neg_).push_back(std::move(op));
    }
  } else {
    m.lambda_max_ = std::nan("");
    m.xi_ = std::nan("");
  }
  return m;
}

LinearMapRep LinearMapRep::from_function(int in_dim, int out_dim,
                                         const std::function<ComplexMatrix(const ComplexMatrix&)>& fn) {
  ComplexMatrix choi(in_dim * out_dim, in_dim * out_dim);
  ComplexMatrix unit(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) {
      unit(i, j) = 1.0;
      const ComplexMatrix block = fn(unit);
      unit(i, j) = 0.0;
      require(block.rows() == out_dim && block.cols() == out_dim, Err::DimMismatch,
              "LinearMapRep::from_function: output dimension mismatch");
      for (int m = 0; m < out_dim; ++m)
        for (int n = 0; n < out_dim; ++n) choi(i * out_dim + m, j * out_dim + n) = block(m, n) / cx(in_dim);
    }
  return from_choi(in_dim, out_dim, std::move(choi));
}

ComplexMatrix LinearMapRep::apply(const ComplexMatrix& x) const {
  require(x.is_square() && x.rows() == in_dim_, Err::DimMismatch, "LinearMapRep::apply: input dimension mismatch");
  ComplexMatrix r(out_dim_, out_dim_);
  for (int m = 0; m < out_dim_; ++m)
    for (int n = 0; n < out_dim_; ++n) {
      cx s = 0.0;
      for (int i = 0; i < in_dim_; ++i)
        for (int j = 0; j < in_dim_; ++j) s += x(i, j) * choi_(i * out_dim_ + m, j * out_dim_ + n);
      r(m, n) = s * cx(in_dim_);
    }
  return r;
}

ComplexMatrix LinearMapRep::apply_kraus(const ComplexMatrix& x) const {
  ComplexMatrix r(out_dim_, out_dim_);
  for (const auto& k : kraus_pos_) r += k * x * k.adjoint();
  for (const auto& k : kraus_neg_) r -= k * x * k.adjoint();
  return r;
}

bool LinearMapRep::is_hermiticity_preserving(double tol) const { return linalg::is_hermitian(choi_, tol); }

bool LinearMapRep::is_completely_positive(double tol) const {
  if (!is_hermiticity_preserving()) return false;
  return linalg::min_eigenvalue(choi_) >= -tol;
}

bool LinearMapRep::is_trace_preserving(double tol) const {
  // Tr_out of the unnormalized Choi must equal the identity.
  const ComplexMatrix tr_out = partial_trace(choi_, DimProfile{in_dim_, out_dim_}, {0}) * cx(in_dim_);
  return (tr_out - ComplexMatrix::identity(in_dim_)).max_abs() <= tol;
}

KrausChannel kraus_channel(const LinearMapRep& map) {
  require(map.is_channel(), Err::NotAChannel, "kraus_channel: map is not completely positive trace-preserving");
  return {map.kraus_pos()};
}

//=========================================================================
// Canonical maps
//=========================================================================

LinearMapRep identity_map(int d) {
  require(d >= 1, Err::BadDim, "identity_map: bad dimension");
  return LinearMapRep::from_choi(d, d, psi_plus_projector(d));
}

LinearMapRep trace_map(int d) {
  require(d >= 1, Err::BadDim, "trace_map: bad dimension");
  ComplexMatrix choi = ComplexMatrix::identity(d * d);
  choi *= cx(1.0 / d);
  return LinearMapRep::from_choi(d, d, std::move(choi));
}

LinearMapRep reduction_map(int d) {
  require(d >= 2, Err::BadDim, "reduction_map: d must be at least 2");
  ComplexMatrix choi = ComplexMatrix::identity(d * d) * cx(1.0 / d) - psi_plus_projector(d);
  return LinearMapRep::from_choi(d, d, std::move(choi));
}

namespace {

ComplexMatrix swap_matrix(int d) {
  ComplexMatrix v(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j, j * d + i) = 1.0;
  return v;
}

void require_unitary(const ComplexMatrix& u, const char* where) {
  require(u.is_square(), Err::NotUnitary, std::string(where) + ": matrix not square");
  const ComplexMatrix gram = u * u.adjoint();
  require((gram - ComplexMatrix::identity(u.rows())).max_abs() <= 1e-10, Err::NotUnitary,
          std::string(where) + ": matrix is not unitary");
}

}  // namespace

LinearMapRep transposition_map(const ComplexMatrix& u) {
  require_unitary(u, "transposition_map");
  const int d = u.rows();
  const ComplexMatrix lift = kron(ComplexMatrix::identity(d), u);
  ComplexMatrix choi = lift * swap_matrix(d) * lift.adjoint();
  choi *= cx(1.0 / d);
  return LinearMapRep::from_choi(d, d, std::move(choi));
}

LinearMapRep transposition_map(int d) { return transposition_map(ComplexMatrix::identity(d)); }

ComplexMatrix breuer_default_v(int d) {
  require(d >= 4 && d % 2 == 0, Err::OddDim, "breuer_default_v: dimension must be even and at least 4");
  ComplexMatrix v(d, d);
  for (int i = 0; i < d; ++i) v(i, d - 1 - i) = i < d / 2 ? 1.0 : -1.0;
  return v;
}

LinearMapRep breuer_map(int d, const ComplexMatrix& v) {
  require(d >= 4, Err::BadDim, "breuer_map: d must be at least 4");
  require(d % 2 == 0, Err::OddDim, "breuer_map: d must be even");
  require(v.is_square() && v.rows() == d, Err::DimMismatch, "breuer_map: V dimension mismatch");
  require((v.transpose() + v).max_abs() <= 1e-12, Err::NotAntisymmetricUnitary, "breuer_map: V is not antisymmetric");
  require((v * v.adjoint() - ComplexMatrix::identity(d)).max_abs() <= 1e-10, Err::NotAntisymmetricUnitary,
          "breuer_map: V is not unitary");
  const ComplexMatrix lift = kron(ComplexMatrix::identity(d), v);
  ComplexMatrix choi = ComplexMatrix::identity(d * d) * cx(1.0 / d) - psi_plus_projector(d) -
                       lift * swap_matrix(d) * lift.adjoint() * cx(1.0 / d);
  return LinearMapRep::from_choi(d, d, std::move(choi));
}

LinearMapRep breuer_map(int d) { return breuer_map(d, breuer_default_v(d)); }

Observable breuer_witness(int d, const ComplexMatrix& v) {
  const LinearMapRep map = breuer_map(d, v);
  return {map.choi() * cx(d), DimProfile{d, d}, "A,B"};
}

Observable breuer_witness(int d) { return breuer_witness(d, breuer_default_v(d)); }

ComplexMatrix multipartite_reduction_apply(const ComplexMatrix& x, const DimProfile& dims) {
  const int n = dims.factors();
  require(n >= 2, Err::BadPartition, "multipartite_reduction: need at least two parties");
  require(x.is_square() && x.rows() == dims.total(), Err::DimMismatch, "multipartite_reduction: size mismatch");
  ComplexMatrix out(x.rows(), x.cols());
  int subsets = 0;
  for (int mask = 1; mask + 1 < (1 << n); ++mask) {
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
      if (mask & (1 << k)) keep.push_back(k);
    out += linalg::embed_with_identity(partial_trace(x, dims, keep), dims, keep);
    ++subsets;
  }
  out -= x * cx(subsets);
  return out;
}

LinearMapRep multipartite_reduction(const DimProfile& dims) {
  require(dims.factors() >= 2, Err::BadPartition, "multipartite_reduction: need at least two parties");
  const int d = dims.total();
  return LinearMapRep::from_function(d, d, [&](const ComplexMatrix& x) {
    return multipartite_reduction_apply(x, dims);
  });
}

LinearMapRep depolarizing_channel(int d) {
  require(d >= 2, Err::BadDim, "depolarizing_channel: d must be at least 2");
  ComplexMatrix choi = ComplexMatrix::identity(d * d);
  choi *= cx(1.0 / (d * d));
  return LinearMapRep::from_choi(d, d, std::move(choi));
}

LinearMapRep partial_trace_channel(const DimProfile& dims, const std::vector<int>& keep) {
  int out = 1;
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  for (int k : keep_sorted) out *= dims[k];
  return LinearMapRep::from_function(dims.total(), out, [&](const ComplexMatrix& x) {
    return partial_trace(x, dims, keep_sorted);
  });
}

LinearMapRep random_channel(int d, Rng& rng) {
  // Ginibre Choi, then the trace-preserving normalization
  ComplexMatrix g(d * d, d * d);
  for (int i = 0; i < d * d; ++i)
    for (int j = 0; j < d * d; ++j) g(i, j) = rng.complex_normal();
  const ComplexMatrix w = g * g.adjoint();
  const ComplexMatrix q = partial_trace(w, DimProfile{d, d}, {0});
  const Spectrum spec = hermitian_eig(q);
  ComplexMatrix q_isqrt(d, d);
  for (int k = 0; k < d; ++k) {
    const double lam = spec.values[static_cast<size_t>(k)];
    require(lam > 1e-12, Err::DegenerateScale, "random_channel: singular trace normalization");
    const double w_k = 1.0 / std::sqrt(lam);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) q_isqrt(i, j) += w_k * spec.vectors(i, k) * std::conj(spec.vectors(j, k));
  }
  const ComplexMatrix lift = kron(q_isqrt, ComplexMatrix::identity(d));
  ComplexMatrix choi = lift * w * lift;
  choi *= cx(1.0 / d);
  return LinearMapRep::from_choi(d, d, std::move(choi));
}

//=========================================================================
// Operations on maps
//=========================================================================

CanonicalDecomposition canonical_decomposition(const LinearMapRep& map) {
  require(map.in_dim() == map.out_dim(), Err::DimMismatch, "canonical_decomposition: map must be square");
  require(map.is_hermiticity_preserving(), Err::DecompositionFailed,
          "canonical_decomposition: map is not Hermiticity-preserving");
  const int d = map.in_dim();
  const double xi = map.xi();
  ComplexMatrix choi2 = ComplexMatrix::identity(d * d) * cx(xi / d) - map.choi();
  LinearMapRep lambda2 = LinearMapRep::from_choi(d, d, std::move(choi2));
  require(lambda2.is_completely_positive(1e-9), Err::DecompositionFailed,
          "canonical_decomposition: remainder is not completely positive");
  return {xi, std::move(lambda2)};
}

LinearMapRep dual_map(const LinearMapRep& map) {
  const int din = map.in_dim();
  const int dout = map.out_dim();
  // Hilbert-Schmidt adjoint (Kraus K -> K^dag): the unnormalized Choi
  // matrices satisfy C'_dual[(m,a),(n,b)] = conj(C'[(a,m),(b,n)]).
  ComplexMatrix choi(din * dout, din * dout);
  for (int a = 0; a < din; ++a)
    for (int b = 0; b < din; ++b)
      for (int m = 0; m < dout; ++m)
        for (int n = 0; n < dout; ++n)
          choi(m * din + a, n * din + b) =
              std::conj(map.choi()(a * dout + m, b * dout + n)) * cx(din) / cx(dout);
  return LinearMapRep::from_choi(dout, din, std::move(choi));
}

ComplexMatrix apply_to_factor(const LinearMapRep& map, const ComplexMatrix& m, const DimProfile& dims, int slot) {
  require(slot >= 0 && slot < dims.factors(), Err::BadPartition, "apply_to_factor: slot out of range");
  require(dims[slot] == map.in_dim(), Err::DimMismatch, "apply_to_factor: slot dimension mismatch");
  require(map.in_dim() == map.out_dim(), Err::DimMismatch, "apply_to_factor: map must be square");
  require(m.is_square() && m.rows() == dims.total(), Err::DimMismatch, "apply_to_factor: operator size mismatch");
  require(map.is_hermiticity_preserving(), Err::BadInput,
          "apply_to_factor: Kraus sandwich requires a Hermiticity-preserving map");

  int left = 1, right = 1;
  for (int k = 0; k < slot; ++k) left *= dims[k];
  for (int k = slot + 1; k < dims.factors(); ++k) right *= dims[k];
  const ComplexMatrix il = ComplexMatrix::identity(left);
  const ComplexMatrix ir = ComplexMatrix::identity(right);

  ComplexMatrix out(m.rows(), m.cols());
  for (const auto& k : map.kraus_pos()) {
    const ComplexMatrix lift = kron(kron(il, k), ir);
    out += lift * m * lift.adjoint();
  }
  for (const auto& k : map.kraus_neg()) {
    const ComplexMatrix lift = kron(kron(il, k), ir);
    out -= lift * m * lift.adjoint();
  }
  return out;
}

ComplexMatrix apply_one_side(const LinearMapRep& map, const DensityMatrix& rho, Side side) {
  require(rho.dims.factors() == 2, Err::DimMismatch, "apply_one_side: bipartite states only");
  const int slot = side == Side::A ? 0 : 1;
  require(rho.dims[slot] == map.in_dim(), Err::DimMismatch, "apply_one_side: dimension mismatch");
  if (map.in_dim() == map.out_dim() && map.is_hermiticity_preserving())
    return apply_to_factor(map, rho.mat, rho.dims, slot);

  // rectangular or general maps: contract blockwise through the Choi form
  const int dA = rho.dims[0];
  const int dB = rho.dims[1];
  if (side == Side::B) {
    const int out = map.out_dim();
    ComplexMatrix r(dA * out, dA * out);
    ComplexMatrix block(dB, dB);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dA; ++j) {
        for (int k = 0; k < dB; ++k)
          for (int l = 0; l < dB; ++l) block(k, l) = rho.mat(i * dB + k, j * dB + l);
        const ComplexMatrix mapped = map.apply(block);
        for (int k = 0; k < out; ++k)
          for (int l = 0; l < out; ++l) r(i * out + k, j * out + l) = mapped(k, l);
      }
    return r;
  }
  // side A: swap factors, apply on B, swap back
  const ComplexMatrix swapped = linalg::permute_subsystems(rho.mat, rho.dims, {1, 0});
  const DensityMatrix tmp{swapped, DimProfile{dB, dA}};
  const ComplexMatrix mapped = apply_one_side(map, tmp, Side::B);
  return linalg::permute_subsystems(mapped, DimProfile{dB, map.out_dim()}, {1, 0});
}

}  // namespace entbound::maps
