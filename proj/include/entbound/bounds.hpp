#ifndef ENTBOUND_BOUNDS_HPP
#define ENTBOUND_BOUNDS_HPP

#include <map>
#include <string>
#include <vector>

#include "entbound/maps.hpp"
#include "entbound/observables.hpp"
#include "entbound/states.hpp"

namespace entbound::bounds {

using linalg::ComplexMatrix;
using states::DensityMatrix;
using states::PureState;

//=========================================================================
// Reports
//=========================================================================

enum class BoundSide { Lower, Upper };

/// Bound targets, tagged so comparisons never mix scales:
///   C      the concurrence itself
///   C2     C^2
///   CxC    the product C(rho) C(sigma)
///   CN2    [C^(N)]^2
///   CNxCN  the product C^(N)(rho) C^(N)(sigma)
struct BoundReport {
  std::string name;
  double raw = 0.0;
  double clipped = 0.0;  // max(0, raw) for lower bounds, raw for upper
  BoundSide side = BoundSide::Lower;
  std::string target;
  std::map<std::string, double> ingredients;
};

BoundReport make_lower(std::string name, double raw, std::string target,
                       std::map<std::string, double> ingredients = {});
BoundReport make_upper(std::string name, double raw, std::string target,
                       std::map<std::string, double> ingredients = {});

/// Clipped value converted to the C scale (square root of C^2-type targets).
double c_scale(const BoundReport& report);

//=========================================================================
// Lower and upper bounds
//=========================================================================

/// C^2(rho) >= 2 max_r { Tr rho^2 - Tr rho_r^2 }.
BoundReport mb_lower(const DensityMatrix& rho);
/// C(rho) C(sigma) >= 2 max_r { Tr rho sigma - Tr rho_r sigma_r }.
BoundReport mb_pair_lower(const DensityMatrix& rho, const DensityMatrix& sigma);
/// C^2(rho) <= 2 min_r { 1 - Tr rho_r^2 }.
BoundReport dual_upper(const DensityMatrix& rho);

BoundReport multipartite_lower(const DensityMatrix& rho, const DensityMatrix& sigma);
BoundReport multipartite_upper(const DensityMatrix& rho);

/// C(rho) >= -sqrt(2/(d(d-1))) Tr(W_V rho) with the default antisymmetric V.
BoundReport breuer_bound(const DensityMatrix& rho);

/// Generic witness bound C(rho) >= -sqrt(2/(d(d-1))) Tr(W rho) for any
/// entanglement witness with W <= 1.
BoundReport witness_bound(const DensityMatrix& rho, const Observable& witness);

/// C(rho) >= -alpha sqrt(2/(d(d-1))) Tr[(I (x) Lambda)(rho) rho], with alpha
/// chosen by strategy or supplied explicitly.
BoundReport positive_map_bound(const DensityMatrix& rho, const maps::LinearMapRep& map,
                               obs::AlphaStrategy strategy);
BoundReport positive_map_bound(const DensityMatrix& rho, const maps::LinearMapRep& map, double alpha);

/// C(rho) >= -sqrt(2d/(d-1)) Tr(rho rho^{Gamma_U}); requires rho_A = 1/d.
BoundReport transposition_bound(const DensityMatrix& rho, const ComplexMatrix& u);
/// Same bound optimized over U by Haar restarts plus coordinate refinement
/// on the Lie-algebra generators. Best found value; no global claim.
BoundReport transposition_bound_optimized(const DensityMatrix& rho, int restarts, std::uint64_t seed,
                                          int threads = 0);

/// Upper bounds C_k(rho) <= min_r h_k(rho_r) for k = 2..d.
struct ConcurrenceVector {
  std::vector<double> values;  // index 0 <-> k = 2
  double upper(int k) const { return values.at(static_cast<size_t>(k) - 2); }
  int max_k() const { return static_cast<int>(values.size()) + 1; }
};
ConcurrenceVector ck_upper(const DensityMatrix& rho);
/// Smallest l with upper_l below the rank tolerance (meaning SN(rho) < l),
/// or d + 1 when no level vanishes.
int schmidt_number_detect(const DensityMatrix& rho);

struct EntropicCheck {
  double lhs = 0.0;      // Tr rho^alpha
  double rhs = 0.0;      // smallest marginal Tr rho_r^alpha
  bool violated = false; // some subsystem fails Tr rho_r^alpha >= Tr rho^alpha
};
EntropicCheck entropic_check(const DensityMatrix& rho, int alpha);

struct PptCheck {
  double min_eig = 0.0;
  bool is_ppt = false;
};
PptCheck ppt_check(const DensityMatrix& rho);

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

struct FidelityPair {
  double f = 0.0;
  double bound_rhs = 0.0;  // Tr rho1 rho2 + sqrt(1 - Tr rho1^2) sqrt(1 - Tr rho2^2)
};
FidelityPair fidelity_bound_check(const DensityMatrix& rho1, const DensityMatrix& rho2);
bool channel_monotonicity_check(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                const maps::LinearMapRep& phi);

/// Generalized robustness of a pure state, (sum_i sqrt(mu_i))^2 - 1.
double robustness_pure(const PureState& psi);
/// C(psi) >= sqrt(2/(d(d-1))) R_g(psi), allowing 1e-10 slack.
bool rg_concurrence_bound(const PureState& psi);

/// C(Phi; rho) C(Phi; sigma) >= 2 (Tr rho sigma - Tr[Phi(rho) Phi(sigma)])
/// checked on pure inputs, 1e-9 slack.
bool phi_bound_check(const PureState& rho, const PureState& sigma, const maps::LinearMapRep& phi);

}  // namespace entbound::bounds

#endif
