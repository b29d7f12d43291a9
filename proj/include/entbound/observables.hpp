#ifndef ENTBOUND_OBSERVABLES_HPP
#define ENTBOUND_OBSERVABLES_HPP

#include <utility>

#include "entbound/maps.hpp"
#include "entbound/observable.hpp"
#include "entbound/states.hpp"

namespace entbound::obs {

using linalg::ComplexMatrix;
using linalg::DimProfile;
using states::DensityMatrix;

/// Swap operator V on H_d (x) H_d: V |a>|b> = |b>|a>.
Observable swap(int d);
/// P+- = (1 +- V)/2.
Observable sym_proj(int d);
Observable antisym_proj(int d);

/// Plain swap permutation matrix on a D-dimensional pair (no Observable wrap).
ComplexMatrix swap_matrix(int d);

/// Expectation Tr(O rho) / two-copy expectation Tr(O rho (x) sigma), the
/// latter with O on the (system, copy) block layout.
double expectation(const Observable& o, const DensityMatrix& rho);
double two_copy_expectation(const Observable& o, const DensityMatrix& rho, const DensityMatrix& sigma);

/// W_1 = 4 (P-^{AA'} - P+^{AA'}) (x) P-^{BB'} and the B-sided mirror W_2,
/// delivered in the (A,B,A',B') layout. Tr(W_1 rho (x) sigma) equals
/// 2 (Tr rho sigma - Tr rho_A sigma_A).
std::pair<Observable, Observable> mb_witnesses(int d);
/// Dual pair: W~_1 = 4 P-^{AA'} (x) 1, W~_2 = 4 1 (x) P-^{BB'}.
std::pair<Observable, Observable> dual_witnesses(int d);

/// W^(N) = 4 [P+ - P+^(1) (x) ... (x) P+^(N) - (1 - 2^{1-N}) P-] and
/// W~^(N) = W^(N) + 8 (1 - 2^{1-N}) P-, on (parties, primed parties).
std::pair<Observable, Observable> multipartite_witnesses(const DimProfile& dims);

/// Two-copy observable realizing Tr[(I (x) Lambda)(rho) sigma] as
/// Tr(O_Lambda rho (x) sigma); Lambda acts on the B factor.
Observable o_lambda(const maps::LinearMapRep& map, const DimProfile& dims);

/// O_{tau^{I'}} = 2^{|I'|} prod of per-pair swaps (outside I') and
/// antisymmetric projectors (inside I'); all-qubit systems.
Observable o_tau(const DimProfile& dims, const std::vector<int>& transposed_set);

enum class AlphaStrategy { Tight, Norm, Canonical };

/// Scale constant for W_rho^Lambda = alpha (I (x) Lambda)(rho):
///   Tight      1 / max eigenvalue of (I (x) Lambda)(rho)
///   Norm       1 / || (I (x) Lambda_1)(rho) || with Lambda_1 the positive
///              Choi part of Lambda
///   Canonical  1 / (xi ||rho_A||)
double witness_alpha(const maps::LinearMapRep& map, const DensityMatrix& rho, AlphaStrategy strategy);

/// The witness itself; max eigenvalue stays at or below one by construction.
Observable positive_map_witness(const maps::LinearMapRep& map, const DensityMatrix& rho, AlphaStrategy strategy);

}  // namespace entbound::obs

#endif
