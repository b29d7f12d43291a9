#ifndef ENTBOUND_CONJUGATE_HPP
#define ENTBOUND_CONJUGATE_HPP

#include <cstdint>

#include "entbound/observable.hpp"
#include "entbound/states.hpp"

namespace entbound::conjugate {

using linalg::DimProfile;
using states::DensityMatrix;
using states::PureState;

/// Best-found value of sup_phi [ <phi|W|phi> - C(phi) ] together with the
/// maximizer. One-sided: the reported value never exceeds the true supremum.
struct ConjugateResult {
  double value = 0.0;
  PureState maximizer;
  int restarts_used = 0;
  bool converged = false;
  double grad_norm = 0.0;  // projected gradient norm at the maximizer
};

/// Riemannian gradient ascent on the unit sphere from Haar starts; the
/// concurrence term uses the smooth sqrt(2 (1 - Tr rho_A^2)) form.
ConjugateResult conjugate_concurrence(const Observable& w, const DimProfile& dims, int restarts = 64,
                                      std::uint64_t seed = 1, int threads = 0);

/// Multipartite analog with C^(N) from the proper-subsystem purity sum.
ConjugateResult conjugate_multipartite(const Observable& w, const DimProfile& dims, int restarts = 64,
                                       std::uint64_t seed = 1, int threads = 0);

/// W_sigma^R = -(2 / C(sigma)) (I (x) R)(sigma). The concurrence of sigma
/// must come from a closed form or be supplied explicitly.
Observable reduction_witness(const DensityMatrix& sigma, double concurrence_sigma);

/// W_sigma^{R^(N)} = -(2^{2-N} / C^(N)(sigma)) R^(N)(sigma).
Observable multipartite_reduction_witness(const DensityMatrix& sigma, double concurrence_sigma);
Observable multipartite_reduction_witness(const PureState& sigma);

/// Squared overlap |<maximizer|psi>|^2, phase-free.
double squared_overlap(const PureState& a, const PureState& b);

}  // namespace entbound::conjugate

#endif
