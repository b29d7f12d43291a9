#ifndef ENTBOUND_STATES_HPP
#define ENTBOUND_STATES_HPP

#include <cstdint>
#include <vector>

#include "entbound/linalg.hpp"
#include "entbound/rng.hpp"

namespace entbound::states {

using linalg::ComplexMatrix;
using linalg::cx;
using linalg::DimProfile;

//=========================================================================
// Domain types
//=========================================================================

struct DensityMatrix {
  ComplexMatrix mat;
  DimProfile dims;

  int dim() const { return mat.rows(); }
};

struct PureState {
  std::vector<cx> vec;
  DimProfile dims;

  int dim() const { return static_cast<int>(vec.size()); }
};

/// Mixing weights of the 4x4 rotationally invariant family; the fourth
/// weight is 1 - p - q - r.
struct RotParams {
  double p = 0.0, q = 0.0, r = 0.0;
};

/// State family member together with its closed-form concurrence.
struct StateWithConcurrence {
  DensityMatrix state;
  double concurrence = 0.0;
};

//=========================================================================
// Construction and validation
//=========================================================================

DensityMatrix to_density(const PureState& psi);

/// Checks Hermiticity (1e-10), unit trace (1e-10) and positivity (-1e-10).
/// Throws with the violated invariant named.
void validate_density(const DensityMatrix& rho);

double purity(const DensityMatrix& rho);
/// Tr(rho sigma) for Hermitian inputs.
double overlap(const DensityMatrix& rho, const DensityMatrix& sigma);
DensityMatrix reduction(const DensityMatrix& rho, const std::vector<int>& keep);

/// |psi_+^(d)> = (1/sqrt d) sum_i |ii>.
PureState psi_plus(int d);
ComplexMatrix psi_plus_projector(int d);

/// Bell-basis diagonal two-qubit mixture. Probabilities are sorted
/// descending before assignment, so the closed form C = max{0, 2 p1 - 1}
/// applies with p1 the largest weight.
StateWithConcurrence bell_diagonal(double p1, double p2, double p3, double p4);

/// Isotropic state with fidelity f; concurrence 0 for f <= 1/d and
/// sqrt(2d/(d-1)) (f - 1/d) above.
StateWithConcurrence isotropic(int d, double f);

/// Normalized total-angular-momentum sector projectors P_0..P_3 of two
/// spin-3/2 systems (each has unit trace).
const std::vector<ComplexMatrix>& rot4_projectors();
DensityMatrix rot4(const RotParams& params);

/// Spin-s angular momentum matrices in the |s,m> basis, m descending.
ComplexMatrix spin_jx(double s);
ComplexMatrix spin_jy(double s);
ComplexMatrix spin_jz(double s);

PureState ghz(int n_parties);
PureState haar_pure(const DimProfile& dims, std::uint64_t seed);
DensityMatrix ginibre_mixed(const DimProfile& dims, int rank, std::uint64_t seed);

ComplexMatrix haar_unitary(int d, Rng& rng);
PureState haar_pure(const DimProfile& dims, Rng& rng);
DensityMatrix ginibre_mixed(const DimProfile& dims, int rank, Rng& rng);
/// Convex mixture of `terms` random product states (a separable sample).
DensityMatrix random_separable(const DimProfile& dims, int terms, Rng& rng);

/// Exact two-qubit mixed-state concurrence (spin-flip eigenvalue formula).
double wootters_concurrence(const DensityMatrix& rho);

}  // namespace entbound::states

#endif
