#ifndef ENTBOUND_LINALG_HPP
#define ENTBOUND_LINALG_HPP

#include <complex>
#include <vector>

#include "entbound/errors.hpp"

namespace entbound::linalg {

using cx = std::complex<double>;

//=========================================================================
// ComplexMatrix: dense, row-major, value semantics
//=========================================================================

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

  static ComplexMatrix identity(int d);
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
  static ComplexMatrix diag(const std::vector<double>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cx s);
  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator-() const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;  // matrix product
  ComplexMatrix operator*(cx s) const;
  friend ComplexMatrix operator*(cx s, const ComplexMatrix& m) { return m * s; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  cx trace() const;
  double max_abs() const;         // entrywise max norm
  double frobenius_norm() const;

  const std::vector<cx>& data() const { return data_; }
  std::vector<cx>& data() { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cx> data_;
};

/// Tr(A B) without forming the product.
cx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);
/// Throws NonHermitian when the entrywise deviation from M† exceeds tol.
void require_hermitian(const ComplexMatrix& m, double tol, const char* where);

//=========================================================================
// Tensor-factor bookkeeping
//=========================================================================

/// Ordered local dimensions d_1..d_N; first factor is the most significant
/// index block under the repo-wide row-major convention.
struct DimProfile {
  std::vector<int> dims;

  DimProfile() = default;
  DimProfile(std::initializer_list<int> d) : dims(d) { validate(); }
  explicit DimProfile(std::vector<int> d) : dims(std::move(d)) { validate(); }

  int factors() const { return static_cast<int>(dims.size()); }
  int total() const;
  int operator[](int k) const { return dims[static_cast<size_t>(k)]; }
  bool operator==(const DimProfile& o) const { return dims == o.dims; }

  void validate() const;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Trace out every factor not listed in `keep`; kept factors stay in their
/// original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& keep);

/// Transpose the factors listed in `flip` (an exact entry permutation).
ComplexMatrix partial_transpose(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& flip);

/// Reorder tensor factors: slot k of the result carries factor perm[k] of the
/// input. Returns the relabeled matrix; the new profile is dims[perm[k]].
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& perm);
DimProfile permute_profile(const DimProfile& dims, const std::vector<int>& perm);

/// Embed an operator acting on the factors `positions` into the full space,
/// identity on all the others.
ComplexMatrix embed_with_identity(const ComplexMatrix& m, const DimProfile& dims, const std::vector<int>& positions);

//=========================================================================
// Hermitian eigenproblem (cyclic Jacobi, self-contained)
//=========================================================================

struct Spectrum {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // orthonormal columns, vectors.col(k) <-> values[k]
};

/// Cyclic Jacobi on the complex Hermitian matrix. Off-diagonal Frobenius
/// tolerance 1e-12 (relative), NoConvergence after max_sweeps.
Spectrum hermitian_eig(const ComplexMatrix& m, int max_sweeps = 100);

/// Projectors onto eigenvalue clusters (tolerance on eigenvalue gaps);
/// returned as (cluster eigenvalue, unnormalized projector), descending.
std::vector<std::pair<double, ComplexMatrix>> cluster_projectors(const Spectrum& s, double tol = 1e-8);

/// PSD square root. Eigenvalues in [-1e-10, 0) are clipped to zero; below
/// that the input is rejected as NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// max |eigenvalue| of a Hermitian matrix.
double operator_norm(const ComplexMatrix& m);
/// largest (signed) eigenvalue of a Hermitian matrix.
double max_eigenvalue(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

/// M^k for integer k >= 0 by repeated multiplication.
ComplexMatrix matrix_power(const ComplexMatrix& m, int k);

}  // namespace entbound::linalg

#endif
