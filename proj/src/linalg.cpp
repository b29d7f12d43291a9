#include "entbound/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entbound::linalg {

//=========================================================================
// ComplexMatrix
//=========================================================================

ComplexMatrix ComplexMatrix::identity(int d) {
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& entries) {
  const int d = static_cast<int>(entries.size());
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = entries[static_cast<size_t>(i)];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, Err::DimMismatch, "matrix add: shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require(rows_ == o.rows_ && cols_ == o.cols_, Err::DimMismatch, "matrix sub: shape mismatch");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  ComplexMatrix r = *this;
  r += o;
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  ComplexMatrix r = *this;
  r -= o;
  return r;
}

ComplexMatrix ComplexMatrix::operator-() const {
  ComplexMatrix r = *this;
  for (auto& v : r.data_) v = -v;
  return r;
}

ComplexMatrix ComplexMatrix::operator*(cx s) const {
  ComplexMatrix r = *this;
  r *= s;
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  require(cols_ == o.rows_, Err::DimMismatch, "matrix mul: inner dimension mismatch");
  ComplexMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const cx a = (*this)(i, k);
      if (a == cx(0.0)) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r = *this;
  for (auto& v : r.data_) v = std::conj(v);
  return r;
}

cx ComplexMatrix::trace() const {
  require(is_square(), Err::DimMismatch, "trace: matrix not square");
  cx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

cx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require(a.cols() == b.rows() && a.rows() == b.cols(), Err::DimMismatch, "trace_product: shape mismatch");
  cx t = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

void require_hermitian(const ComplexMatrix& m, double tol, const char* where) {
  require(is_hermitian(m, tol), Err::NonHermitian, std::string(where) + ": matrix is not Hermitian within tolerance");
}

//=========================================================================
// Tensor-factor bookkeeping
//=========================================================================

int DimProfile::total() const {
  int t = 1;
  for (int d : dims) t *= d;
  return t;
}

void DimProfile::validate() const {
  require(!dims.empty(), Err::BadPartition, "DimProfile: needs at least one factor");
  for (int d : dims) require(d >= 1, Err::BadPartition, "DimProfile: nonpositive local dimension");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cx aij = a(i, j);
      if (aij == cx(0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

namespace {

// Strides for the row-major, first-factor-most-significant convention.
std::vector<int> strides_of(const DimProfile& dims) {
  const int n = dims.factors();
  std::vector<int> s(static_cast<size_t>(n));
  int acc = 1;
  for (int k = n - 1; k >= 0; --k) {
    s[static_cast<size_t>(k)] = acc;
    acc *= dims[k];
  }
  return s;
}

void check_subset(const DimProfile& dims, const std::vector<int>& set, bool allow_empty, const char* where) {
  if (!allow_empty) require(!set.empty(), Err::BadPartition, std::string(where) + ": empty subsystem set");
  std::vector<bool> seen(static_cast<size_t>(dims.factors()), false);
  for (int k : set) {
    require(k >= 0 && k < dims.factors(), Err::BadPartition, std::string(where) + ": subsystem index out of range");
    require(!seen[static_cast<size_t>(k)], Err::BadPartition, std::string(where) + ": duplicate subsystem index");
    seen[static_cast<size_t>(k)] = true;
  }
}

void check_operator_dims(const ComplexMatrix& m, const DimProfile& dims, const char* where) {
  require(m.is_square() && m.rows() == dims.total(), Err::BadPartition,
          std::string(where) + ": matrix size does not match dimension profile");
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& keep) {
  check_operator_dims(m, dims, "partial_trace");
  check_subset(dims, keep, false, "partial_trace");

  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  std::vector<int> traced;
  for (int k = 0; k < dims.factors(); ++k)
    if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), k)) traced.push_back(k);

  const auto strides = strides_of(dims);
  int dim_keep = 1, dim_traced = 1;
  for (int k : keep_sorted) dim_keep *= dims[k];
  for (int k : traced) dim_traced *= dims[k];

  // Offset of a composite index within the kept (resp. traced) factors.
  auto offsets = [&](const std::vector<int>& set) {
    std::vector<int> off;
    off.reserve(1u << 10);
    int dim_set = 1;
    for (int k : set) dim_set *= dims[k];
    off.resize(static_cast<size_t>(dim_set));
    for (int idx = 0; idx < dim_set; ++idx) {
      int rem = idx, o = 0;
      for (size_t pos = set.size(); pos-- > 0;) {
        const int k = set[pos];
        o += (rem % dims[k]) * strides[static_cast<size_t>(k)];
        rem /= dims[k];
      }
      off[static_cast<size_t>(idx)] = o;
    }
    return off;
  };
  const auto keep_off = offsets(keep_sorted);
  const auto tr_off = traced.empty() ? std::vector<int>{0} : offsets(traced);

  ComplexMatrix r(dim_keep, dim_keep);
  for (int i = 0; i < dim_keep; ++i)
    for (int j = 0; j < dim_keep; ++j) {
      cx s = 0.0;
      for (int t : tr_off) s += m(keep_off[static_cast<size_t>(i)] + t, keep_off[static_cast<size_t>(j)] + t);
      r(i, j) = s;
    }
  return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& flip) {
  check_operator_dims(m, dims, "partial_transpose");
  check_subset(dims, flip, true, "partial_transpose");

  std::vector<bool> do_flip(static_cast<size_t>(dims.factors()), false);
  for (int k : flip) do_flip[static_cast<size_t>(k)] = true;

  const auto strides = strides_of(dims);
  const int n = dims.factors();
  const int dim = dims.total();
  ComplexMatrix r(dim, dim);
  std::vector<int> ri(static_cast<size_t>(n)), ci(static_cast<size_t>(n));
  for (int i = 0; i < dim; ++i) {
    {
      int rem = i;
      for (int k = 0; k < n; ++k) {
        ri[static_cast<size_t>(k)] = rem / strides[static_cast<size_t>(k)];
        rem %= strides[static_cast<size_t>(k)];
      }
    }
    for (int j = 0; j < dim; ++j) {
      int rem = j;
      for (int k = 0; k < n; ++k) {
        ci[static_cast<size_t>(k)] = rem / strides[static_cast<size_t>(k)];
        rem %= strides[static_cast<size_t>(k)];
      }
      int si = 0, sj = 0;
      for (int k = 0; k < n; ++k) {
        const int a = do_flip[static_cast<size_t>(k)] ? ci[static_cast<size_t>(k)] : ri[static_cast<size_t>(k)];
        const int b = do_flip[static_cast<size_t>(k)] ? ri[static_cast<size_t>(k)] : ci[static_cast<size_t>(k)];
        si += a * strides[static_cast<size_t>(k)];
        sj += b * strides[static_cast<size_t>(k)];
      }
      r(i, j) = m(si, sj);
    }
  }
  return r;
}

DimProfile permute_profile(const DimProfile& dims, const std::vector<int>& perm) {
  std::vector<int> d;
  d.reserve(perm.size());
  for (int k : perm) d.push_back(dims[k]);
  return DimProfile(d);
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& perm) {
  check_operator_dims(m, dims, "permute_subsystems");
  require(static_cast<int>(perm.size()) == dims.factors(), Err::BadPartition,
          "permute_subsystems: permutation length mismatch");
  check_subset(dims, perm, false, "permute_subsystems");

  const int n = dims.factors();
  const int dim = dims.total();
  const auto old_strides = strides_of(dims);
  const DimProfile new_dims = permute_profile(dims, perm);
  const auto new_strides = strides_of(new_dims);

  // map: linear index in the new layout -> linear index in the old layout
  std::vector<int> to_old(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    int rem = i, o = 0;
    for (int k = 0; k < n; ++k) {
      const int idx = rem / new_strides[static_cast<size_t>(k)];
      rem %= new_strides[static_cast<size_t>(k)];
      o += idx * old_strides[static_cast<size_t>(perm[static_cast<size_t>(k)])];
    }
    to_old[static_cast<size_t>(i)] = o;
  }

  ComplexMatrix r(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r(i, j) = m(to_old[static_cast<size_t>(i)], to_old[static_cast<size_t>(j)]);
  return r;
}

ComplexMatrix embed_with_identity(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& positions) {
  check_subset(dims, positions, false, "embed_with_identity");
  std::vector<int> pos_sorted = positions;
  std::sort(pos_sorted.begin(), pos_sorted.end());

  int dim_set = 1;
  for (int k : pos_sorted) dim_set *= dims[k];
  require(m.is_square() && m.rows() == dim_set, Err::BadPartition,
          "embed_with_identity: operator size does not match selected factors");

  std::vector<int> rest;
  for (int k = 0; k < dims.factors(); ++k)
    if (!std::binary_search(pos_sorted.begin(), pos_sorted.end(), k)) rest.push_back(k);

  const auto strides = strides_of(dims);
  auto offsets = [&](const std::vector<int>& set) {
    int ds = 1;
    for (int k : set) ds *= dims[k];
    std::vector<int> off(static_cast<size_t>(ds));
    for (int idx = 0; idx < ds; ++idx) {
      int rem = idx, o = 0;
      for (size_t p = set.size(); p-- > 0;) {
        const int k = set[p];
        o += (rem % dims[k]) * strides[static_cast<size_t>(k)];
        rem /= dims[k];
      }
      off[static_cast<size_t>(idx)] = o;
    }
    return off;
  };
  const auto set_off = offsets(pos_sorted);
  const auto rest_off = rest.empty() ? std::vector<int>{0} : offsets(rest);

  ComplexMatrix r(dims.total(), dims.total());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const cx v = m(i, j);
      if (v == cx(0.0)) continue;
      for (int t : rest_off) r(set_off[static_cast<size_t>(i)] + t, set_off[static_cast<size_t>(j)] + t) = v;
    }
  return r;
}

//=========================================================================
// Cyclic Jacobi eigensolver
//=========================================================================

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

}  // namespace

Spectrum hermitian_eig(const ComplexMatrix& m, int max_sweeps) {
  require(m.is_square(), Err::NonHermitian, "hermitian_eig: matrix not square");
  require_hermitian(m, 1e-10 * std::max(1.0, m.max_abs()), "hermitian_eig");

  const int n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix u = ComplexMatrix::identity(n);

  const double fro = std::max(a.frobenius_norm(), 1e-300);
  const double tol = 1e-12 * fro;

  bool converged = (n <= 1) || offdiag_norm(a) <= tol;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cx g = a(p, q);
        const double r = std::abs(g);
        if (r <= 1e-300) continue;
        const cx phase = g / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // J: identity except J(p,p)=c, J(p,q)=s*phase, J(q,p)=-s*conj(phase), J(q,q)=c
        // A <- J^dag A J, U <- U J
        for (int k = 0; k < n; ++k) {  // columns: B = A J
          const cx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {  // rows: A = J^dag B
          const cx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (int k = 0; k < n; ++k) {
          const cx ukp = u(k, p), ukq = u(k, q);
          u(k, p) = c * ukp - s * std::conj(phase) * ukq;
          u(k, q) = s * phase * ukp + c * ukq;
        }
      }
    }
    converged = offdiag_norm(a) <= tol;
  }
  require(converged, Err::NoConvergence, "hermitian_eig: Jacobi sweep limit exceeded");

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });

  Spectrum spec;
  spec.values.resize(static_cast<size_t>(n));
  spec.vectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    spec.values[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    for (int i = 0; i < n; ++i) spec.vectors(i, k) = u(i, order[static_cast<size_t>(k)]);
  }
  return spec;
}

std::vector<std::pair<double, ComplexMatrix>> cluster_projectors(const Spectrum& s, double tol) {
  std::vector<std::pair<double, ComplexMatrix>> out;
  const int n = static_cast<int>(s.values.size());
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && std::abs(s.values[static_cast<size_t>(end)] - s.values[static_cast<size_t>(end - 1)]) <= tol)
      ++end;
    ComplexMatrix proj(s.vectors.rows(), s.vectors.rows());
    double mean = 0.0;
    for (int k = start; k < end; ++k) {
      mean += s.values[static_cast<size_t>(k)];
      for (int i = 0; i < s.vectors.rows(); ++i)
        for (int j = 0; j < s.vectors.rows(); ++j)
          proj(i, j) += s.vectors(i, k) * std::conj(s.vectors(j, k));
    }
    mean /= (end - start);
    out.emplace_back(mean, std::move(proj));
    start = end;
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const Spectrum s = hermitian_eig(m);
  const int n = m.rows();
  for (double v : s.values)
    require(v >= -1e-10, Err::NotPSD, "psd_sqrt: matrix has a negative eigenvalue beyond tolerance");
  ComplexMatrix r(n, n);
  for (int k = 0; k < n; ++k) {
    const double v = std::sqrt(std::max(0.0, s.values[static_cast<size_t>(k)]));
    if (v == 0.0) continue;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r(i, j) += v * s.vectors(i, k) * std::conj(s.vectors(j, k));
  }
  return r;
}

double operator_norm(const ComplexMatrix& m) {
  const Spectrum s = hermitian_eig(m);
  double r = 0.0;
  for (double v : s.values) r = std::max(r, std::abs(v));
  return r;
}

double max_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).values.front(); }

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eig(m).values.back(); }

ComplexMatrix matrix_power(const ComplexMatrix& m, int k) {
  require(m.is_square(), Err::DimMismatch, "matrix_power: matrix not square");
  require(k >= 0, Err::BadInput, "matrix_power: negative exponent");
  ComplexMatrix r = ComplexMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

}  // namespace entbound::linalg
