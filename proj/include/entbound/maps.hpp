#ifndef ENTBOUND_MAPS_HPP
#define ENTBOUND_MAPS_HPP

#include <functional>
#include <vector>

#include "entbound/linalg.hpp"
#include "entbound/observable.hpp"
#include "entbound/rng.hpp"
#include "entbound/states.hpp"

namespace entbound::maps {

using linalg::ComplexMatrix;
using linalg::cx;
using linalg::DimProfile;
using states::DensityMatrix;

//=========================================================================
// Linear maps on matrix algebras, stored through their Choi matrix
//=========================================================================

/// A linear map M_{in} -> M_{out} with the normalized Choi matrix
/// (I (x) Lambda)(P_+^{(in)}) as the single source of truth. Kraus operators
/// (positive/negative Choi eigenspaces), lambda_max and xi = in * lambda_max
/// are derived eagerly at construction; instances are immutable.
class LinearMapRep {
 public:
  static LinearMapRep from_choi(int in_dim, int out_dim, ComplexMatrix choi);
  /// Builds the Choi matrix by applying `fn` to all matrix units.
  static LinearMapRep from_function(int in_dim, int out_dim,
                                    const std::function<ComplexMatrix(const ComplexMatrix&)>& fn);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const ComplexMatrix& choi() const { return choi_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;
  ComplexMatrix apply_kraus(const ComplexMatrix& x) const;  // signed Kraus sum

  const std::vector<ComplexMatrix>& kraus_pos() const { return kraus_pos_; }
  const std::vector<ComplexMatrix>& kraus_neg() const { return kraus_neg_; }

  double lambda_max() const { return lambda_max_; }
  /// xi = d * lambda_max, the canonical trace-map coefficient (square maps).
  double xi() const { return xi_; }

  bool is_hermiticity_preserving(double tol = 1e-10) const;
  bool is_completely_positive(double tol = 1e-9) const;
  bool is_trace_preserving(double tol = 1e-8) const;
  bool is_channel() const { return is_completely_positive() && is_trace_preserving(); }

 private:
  LinearMapRep() = default;
  int in_dim_ = 0;
  int out_dim_ = 0;
  ComplexMatrix choi_;
  std::vector<ComplexMatrix> kraus_pos_;
  std::vector<ComplexMatrix> kraus_neg_;
  double lambda_max_ = 0.0;
  double xi_ = 0.0;
};

struct KrausChannel {
  std::vector<ComplexMatrix> ops;
};

/// Kraus form of a channel; throws NotAChannel when Lambda is not CPTP.
KrausChannel kraus_channel(const LinearMapRep& map);

//=========================================================================
// Canonical maps
//=========================================================================

LinearMapRep identity_map(int d);
/// Lambda_Tr(X) = Tr(X) 1_d.
LinearMapRep trace_map(int d);
/// R(X) = Tr(X) 1_d - X.
LinearMapRep reduction_map(int d);
/// T_U(X) = U X^T U^dagger for unitary U.
LinearMapRep transposition_map(const ComplexMatrix& u);
LinearMapRep transposition_map(int d);  // U = identity

/// Lambda_V(X) = Tr(X) 1_d - X - V X^T V^dagger for an antisymmetric
/// unitary V; d must be even and at least 4.
LinearMapRep breuer_map(int d, const ComplexMatrix& v);
LinearMapRep breuer_map(int d);  // default antidiagonal V
/// Default V: +1 on the upper anti-diagonal half, -1 on the lower.
ComplexMatrix breuer_default_v(int d);
/// W_V = d (I (x) Lambda_V)(P_+^{(d)}), a witness on the d (x) d space.
Observable breuer_witness(int d);
Observable breuer_witness(int d, const ComplexMatrix& v);

/// R^(N) applied on the full N-party space: sums the reduction map over all
/// proper subsystems, R^(N)(x) = sum_S Tr_S(x) (x) 1_S - (2^N - 2) x.
LinearMapRep multipartite_reduction(const DimProfile& dims);
/// Direct evaluation of the same formula (no Choi contraction).
ComplexMatrix multipartite_reduction_apply(const ComplexMatrix& x, const DimProfile& dims);

/// Fully depolarizing channel X -> Tr(X) 1_d / d.
LinearMapRep depolarizing_channel(int d);
/// Partial trace over the factors missing from `keep`, as a channel.
LinearMapRep partial_trace_channel(const DimProfile& dims, const std::vector<int>& keep);
/// Random CPTP map with Ginibre Choi matrix.
LinearMapRep random_channel(int d, Rng& rng);

//=========================================================================
// Operations on maps
//=========================================================================

struct CanonicalDecomposition {
  double xi = 0.0;
  LinearMapRep lambda2;  // completely positive remainder, Lambda = xi Lambda_Tr - Lambda_2
};

CanonicalDecomposition canonical_decomposition(const LinearMapRep& map);

/// Dual with respect to the Hilbert-Schmidt inner product.
LinearMapRep dual_map(const LinearMapRep& map);

enum class Side { A, B };

/// (Lambda (x) I)(rho) or (I (x) Lambda)(rho) on a bipartite state.
ComplexMatrix apply_one_side(const LinearMapRep& map, const DensityMatrix& rho, Side side);

/// Apply the map to a single tensor factor of an operator on `dims`.
ComplexMatrix apply_to_factor(const LinearMapRep& map, const ComplexMatrix& m, const DimProfile& dims, int slot);

}  // namespace entbound::maps

#endif
