#ifndef ENTBOUND_CONCURRENCE_HPP
#define ENTBOUND_CONCURRENCE_HPP

#include <vector>

#include "entbound/maps.hpp"
#include "entbound/states.hpp"

namespace entbound::conc {

using linalg::ComplexMatrix;
using states::DensityMatrix;
using states::PureState;

/// Schmidt data of a bipartite pure state: coefficients sqrt(mu_i)
/// descending, squared values mu_i summing to one.
struct SchmidtData {
  std::vector<double> coefficients;
  std::vector<double> squared;
};

SchmidtData schmidt(const PureState& psi);

/// C(|psi>) = sqrt(2 (1 - Tr rho_r^2)).
double concurrence_pure(const PureState& psi);

/// C^(N)(|psi>) = 2^{1-N/2} sqrt(2^N - 2 - sum over proper subsystems of
/// the reduction purities). Coincides with concurrence_pure at N = 2.
double concurrence_multipartite_pure(const PureState& psi);

/// k-th elementary symmetric polynomial, stable coefficient recurrence.
double elementary_symmetric(int k, const std::vector<double>& xs);

/// h_k(rho) = (sigma_k(spectrum) / sigma_k(uniform))^{1/k}, in [0, 1].
double h_k(const DensityMatrix& rho, int k);
double h_k(const std::vector<double>& eigenvalues, int k);

/// C_k of a square bipartite pure state, i.e. h_k of its reduction. All
/// members equal one on the maximally entangled state; k = d is the
/// G-concurrence d (prod lambda_i)^{1/d}.
double c_k_pure(const PureState& psi, int k);

/// Number of Schmidt coefficients above the 1e-10 rank tolerance.
int schmidt_rank(const PureState& psi);

/// C(Phi; |psi>) = sqrt(2 (1 - Tr[Phi(|psi><psi|)]^2)) for a channel Phi.
double phi_concurrence_pure(const PureState& psi, const maps::LinearMapRep& phi);

}  // namespace entbound::conc

#endif
