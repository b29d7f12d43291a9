#include "entbound/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "entbound/concurrence.hpp"
#include "entbound/parallel.hpp"

namespace entbound::bounds {

using linalg::cx;
using linalg::DimProfile;
using linalg::partial_trace;
using linalg::partial_transpose;
using linalg::trace_product;

BoundReport make_lower(std::string name, double raw, std::string target,
                       std::map<std::string, double> ingredients) {
  BoundReport r;
  r.name = std::move(name);
  r.raw = raw;
  r.clipped = std::max(0.0, raw);
  r.side = BoundSide::Lower;
  r.target = std::move(target);
  r.ingredients = std::move(ingredients);
  return r;
}

BoundReport make_upper(std::string name, double raw, std::string target,
                       std::map<std::string, double> ingredients) {
  BoundReport r;
  r.name = std::move(name);
  r.raw = raw;
  r.clipped = raw;
  r.side = BoundSide::Upper;
  r.target = std::move(target);
  r.ingredients = std::move(ingredients);
  return r;
}

double c_scale(const BoundReport& report) {
  if (report.target == "C") return report.clipped;
  if (report.target == "C2" || report.target == "CN2")
    return std::sqrt(std::max(0.0, report.clipped));
  fail(Err::BadInput, "c_scale: target '" + report.target + "' has no single-state C scale");
}

namespace {

void require_square_bipartite(const DensityMatrix& rho, const char* where) {
  require(rho.dims.factors() == 2, Err::DimMismatch, std::string(where) + ": bipartite state expected");
  require(rho.dims[0] == rho.dims[1], Err::DimMismatch, std::string(where) + ": equal local dimensions expected");
}

double marginal_overlap(const DensityMatrix& rho, const DensityMatrix& sigma, int factor) {
  const ComplexMatrix a = partial_trace(rho.mat, rho.dims, {factor});
  const ComplexMatrix b = partial_trace(sigma.mat, sigma.dims, {factor});
  return trace_product(a, b).real();
}

}  // namespace

BoundReport mb_pair_lower(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_square_bipartite(rho, "mb_pair_lower");
  require(rho.dims == sigma.dims, Err::DimMismatch, "mb_pair_lower: states live on different spaces");
  const double ov = states::overlap(rho, sigma);
  const double ov_a = marginal_overlap(rho, sigma, 0);
  const double ov_b = marginal_overlap(rho, sigma, 1);
  const double branch_a = 2.0 * (ov - ov_a);
  const double branch_b = 2.0 * (ov - ov_b);
  return make_lower("mb_pair_lower", std::max(branch_a, branch_b), "CxC",
                    {{"overlap", ov},
                     {"overlap_A", ov_a},
                     {"overlap_B", ov_b},
                     {"branch_A", branch_a},
                     {"branch_B", branch_b}});
}

BoundReport mb_lower(const DensityMatrix& rho) {
  BoundReport r = mb_pair_lower(rho, rho);
  r.name = "mb_lower";
  r.target = "C2";
  r.ingredients["purity"] = r.ingredients["overlap"];
  r.ingredients["purity_A"] = r.ingredients["overlap_A"];
  r.ingredients["purity_B"] = r.ingredients["overlap_B"];
  return r;
}

BoundReport dual_upper(const DensityMatrix& rho) {
  require_square_bipartite(rho, "dual_upper");
  const double pa = marginal_overlap(rho, rho, 0);
  const double pb = marginal_overlap(rho, rho, 1);
  const double branch_a = 2.0 * (1.0 - pa);
  const double branch_b = 2.0 * (1.0 - pb);
  return make_upper("dual_upper", std::min(branch_a, branch_b), "C2",
                    {{"purity_A", pa}, {"purity_B", pb}, {"branch_A", branch_a}, {"branch_B", branch_b}});
}

namespace {

// (4 / 2^N) [ (2^N - 2) Tr(rho sigma) - sum over proper subsystems of Tr(rho_S sigma_S) ]
double multipartite_rhs(const DensityMatrix& rho, const DensityMatrix& sigma, double* overlap_out,
                        double* reduction_sum_out) {
  const int n = rho.dims.factors();
  const double ov = states::overlap(rho, sigma);
  double red_sum = 0.0;
  for (int mask = 1; mask + 1 < (1 << n); ++mask) {
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
      if (mask & (1 << k)) keep.push_back(k);
    const ComplexMatrix a = partial_trace(rho.mat, rho.dims, keep);
    const ComplexMatrix b = partial_trace(sigma.mat, sigma.dims, keep);
    red_sum += trace_product(a, b).real();
  }
  const double subsets = std::pow(2.0, n) - 2.0;
  if (overlap_out) *overlap_out = ov;
  if (reduction_sum_out) *reduction_sum_out = red_sum;
  return 4.0 / std::pow(2.0, n) * (subsets * ov - red_sum);
}

}  // namespace

BoundReport multipartite_lower(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require(rho.dims == sigma.dims, Err::DimMismatch, "multipartite_lower: states live on different spaces");
  require(rho.dims.factors() >= 2, Err::DimMismatch, "multipartite_lower: need at least two parties");
  double ov = 0.0, red = 0.0;
  const double raw = multipartite_rhs(rho, sigma, &ov, &red);
  return make_lower("multipartite_lower", raw, "CNxCN", {{"overlap", ov}, {"reduction_overlap_sum", red}});
}

BoundReport multipartite_upper(const DensityMatrix& rho) {
  require(rho.dims.factors() >= 2, Err::DimMismatch, "multipartite_upper: need at least two parties");
  const int n = rho.dims.factors();
  double red = 0.0;
  multipartite_rhs(rho, rho, nullptr, &red);
  const double subsets = std::pow(2.0, n) - 2.0;
  const double raw = 4.0 / std::pow(2.0, n) * (subsets - red);
  return make_upper("multipartite_upper", raw, "CN2", {{"reduction_purity_sum", red}});
}

BoundReport witness_bound(const DensityMatrix& rho, const Observable& witness) {
  require_square_bipartite(rho, "witness_bound");
  const int d = rho.dims[0];
  require(witness.mat.rows() == rho.dim(), Err::DimMismatch, "witness_bound: witness size mismatch");
  require(linalg::max_eigenvalue(witness.mat) <= 1.0 + 1e-9, Err::BadInput,
          "witness_bound: witness exceeds the identity");
  const double expectation = trace_product(witness.mat, rho.mat).real();
  const double prefactor = std::sqrt(2.0 / (d * (d - 1.0)));
  return make_lower("witness_bound", -prefactor * expectation, "C",
                    {{"witness_expectation", expectation}, {"prefactor", prefactor}});
}

BoundReport breuer_bound(const DensityMatrix& rho) {
  require_square_bipartite(rho, "breuer_bound");
  const int d = rho.dims[0];
  require(d % 2 == 0, Err::OddDim, "breuer_bound: even local dimension required");
  require(d >= 4, Err::BadDim, "breuer_bound: local dimension must be at least 4");
  const Observable w = maps::breuer_witness(d);
  const double expectation = trace_product(w.mat, rho.mat).real();
  const double prefactor = std::sqrt(2.0 / (d * (d - 1.0)));
  BoundReport r = make_lower("breuer_bound", -prefactor * expectation, "C",
                             {{"witness_expectation", expectation}, {"prefactor", prefactor}});
  return r;
}

BoundReport positive_map_bound(const DensityMatrix& rho, const maps::LinearMapRep& map, double alpha) {
  require_square_bipartite(rho, "positive_map_bound");
  const int d = rho.dims[0];
  require(map.in_dim() == d && map.out_dim() == d, Err::DimMismatch, "positive_map_bound: map dimension mismatch");
  require(std::abs(alpha) > 1e-12, Err::DegenerateScale, "positive_map_bound: degenerate alpha");
  const ComplexMatrix mapped = maps::apply_one_side(map, rho, maps::Side::B);
  const double trace_term = trace_product(mapped, rho.mat).real();
  const double prefactor = std::sqrt(2.0 / (d * (d - 1.0)));
  std::map<std::string, double> ing{{"alpha", alpha}, {"trace_term", trace_term}, {"prefactor", prefactor}};
  if (!std::isnan(map.xi())) ing["xi"] = map.xi();
  return make_lower("positive_map_bound", -alpha * prefactor * trace_term, "C", std::move(ing));
}

BoundReport positive_map_bound(const DensityMatrix& rho, const maps::LinearMapRep& map,
                               obs::AlphaStrategy strategy) {
  const double alpha = obs::witness_alpha(map, rho, strategy);
  BoundReport r = positive_map_bound(rho, map, alpha);
  if (strategy == obs::AlphaStrategy::Canonical) {
    const int d = rho.dims[0];
    const ComplexMatrix rho_a = partial_trace(rho.mat, rho.dims, {0});
    r.ingredients["norm_rhoA"] = linalg::max_eigenvalue(rho_a);
    const ComplexMatrix maxmix_gap = rho_a - ComplexMatrix::identity(d) * cx(1.0 / d);
    if (maxmix_gap.max_abs() <= 1e-10)
      r.ingredients["simplified_prefactor"] = std::sqrt(2.0 * d / (d - 1.0)) / map.xi();
  }
  return r;
}

namespace {

double transposition_overlap(const DensityMatrix& rho, const ComplexMatrix& rho_gamma, const ComplexMatrix& u) {
  // Tr[rho (1 (x) U) rho^Gamma (1 (x) U^dag)] evaluated blockwise
  const int da = rho.dims[0];
  const int db = rho.dims[1];
  cx total = 0.0;
  ComplexMatrix x(db, db), y(db, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) {
      for (int k = 0; k < db; ++k)
        for (int l = 0; l < db; ++l) {
          x(k, l) = rho.mat(i * db + k, j * db + l);
          y(k, l) = rho_gamma(j * db + k, i * db + l);
        }
      total += trace_product(x, u * y * u.adjoint());
    }
  return total.real();
}

void require_max_mixed_marginal(const DensityMatrix& rho, const char* where) {
  const int d = rho.dims[0];
  const ComplexMatrix rho_a = partial_trace(rho.mat, rho.dims, {0});
  const double gap = (rho_a - ComplexMatrix::identity(d) * cx(1.0 / d)).max_abs();
  require(gap <= 1e-8, Err::NotMaxMixedMarginal,
          std::string(where) + ": subsystem A must be maximally mixed (use positive_map_bound otherwise)");
}

// One coordinate-descent pass through the u(d) generators with the given
// step; returns the improved (U, value).
struct UnitarySearchState {
  ComplexMatrix u;
  double value;  // objective to minimize: Tr(rho rho^{Gamma_U})
};

ComplexMatrix generator_rotation(int d, int kind, int j, int k, double theta) {
  ComplexMatrix g = ComplexMatrix::identity(d);
  if (kind == 0) {  // diagonal phase at j
    g(j, j) = std::polar(1.0, theta);
  } else if (kind == 1) {  // real rotation in the (j,k) plane
    g(j, j) = std::cos(theta);
    g(k, k) = std::cos(theta);
    g(j, k) = -std::sin(theta);
    g(k, j) = std::sin(theta);
  } else {  // symplectic-phase rotation in the (j,k) plane
    g(j, j) = std::cos(theta);
    g(k, k) = std::cos(theta);
    g(j, k) = cx(0.0, std::sin(theta));
    g(k, j) = cx(0.0, std::sin(theta));
  }
  return g;
}

}  // namespace

BoundReport transposition_bound(const DensityMatrix& rho, const ComplexMatrix& u) {
  require_square_bipartite(rho, "transposition_bound");
  require_max_mixed_marginal(rho, "transposition_bound");
  const int d = rho.dims[0];
  require(u.is_square() && u.rows() == d, Err::DimMismatch, "transposition_bound: U dimension mismatch");
  const ComplexMatrix gram = u * u.adjoint();
  require((gram - ComplexMatrix::identity(d)).max_abs() <= 1e-10, Err::NotUnitary,
          "transposition_bound: U is not unitary");
  const ComplexMatrix rho_gamma = partial_transpose(rho.mat, rho.dims, {1});
  const double t = transposition_overlap(rho, rho_gamma, u);
  const double prefactor = std::sqrt(2.0 * d / (d - 1.0));
  return make_lower("transposition_bound", -prefactor * t, "C",
                    {{"tr_rho_rhoGamma", t}, {"prefactor", prefactor}});
}

BoundReport transposition_bound_optimized(const DensityMatrix& rho, int restarts, std::uint64_t seed,
                                          int threads) {
  require_square_bipartite(rho, "transposition_bound_optimized");
  require_max_mixed_marginal(rho, "transposition_bound_optimized");
  require(restarts >= 1, Err::BadInput, "transposition_bound_optimized: need at least one restart");
  const int d = rho.dims[0];
  const ComplexMatrix rho_gamma = partial_transpose(rho.mat, rho.dims, {1});

  auto objective = [&](const ComplexMatrix& u) { return transposition_overlap(rho, rho_gamma, u); };

  // flat list of u(d) generators: d diagonal phases + two rotation families per pair
  struct Gen {
    int kind, j, k;
  };
  std::vector<Gen> generators;
  for (int j = 0; j < d; ++j) generators.push_back({0, j, j});
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      generators.push_back({1, j, k});
      generators.push_back({2, j, k});
    }

  std::vector<UnitarySearchState> results(static_cast<size_t>(restarts));
  parallel_for(
      restarts,
      [&](int r) {
        Rng rng = Rng::for_worker(seed, static_cast<std::uint64_t>(r));
        UnitarySearchState s;
        s.u = states::haar_unitary(d, rng);
        s.value = objective(s.u);
        double step = 0.5;
        while (step >= 1e-6) {
          bool improved_this_pass = false;
          for (const Gen& g : generators) {
            for (double sgn : {+1.0, -1.0}) {
              const ComplexMatrix cand = s.u * generator_rotation(d, g.kind, g.j, g.k, sgn * step);
              const double val = objective(cand);
              if (val < s.value - 1e-14) {
                s.u = cand;
                s.value = val;
                improved_this_pass = true;
              }
            }
          }
          if (!improved_this_pass) step *= 0.5;
        }
        results[static_cast<size_t>(r)] = std::move(s);
      },
      threads);

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (results[static_cast<size_t>(r)].value < results[static_cast<size_t>(best)].value) best = r;

  const double t = results[static_cast<size_t>(best)].value;
  const double prefactor = std::sqrt(2.0 * d / (d - 1.0));
  return make_lower("transposition_bound", -prefactor * t, "C",
                    {{"tr_rho_rhoGamma", t}, {"prefactor", prefactor}, {"restarts", static_cast<double>(restarts)}});
}

ConcurrenceVector ck_upper(const DensityMatrix& rho) {
  require_square_bipartite(rho, "ck_upper");
  const int d = rho.dims[0];
  const auto spec_a = linalg::hermitian_eig(partial_trace(rho.mat, rho.dims, {0})).values;
  const auto spec_b = linalg::hermitian_eig(partial_trace(rho.mat, rho.dims, {1})).values;
  ConcurrenceVector out;
  for (int k = 2; k <= d; ++k)
    out.values.push_back(std::min(conc::h_k(spec_a, k), conc::h_k(spec_b, k)));
  return out;
}

int schmidt_number_detect(const DensityMatrix& rho) {
  const ConcurrenceVector v = ck_upper(rho);
  for (int k = 2; k <= v.max_k(); ++k)
    if (v.upper(k) <= 1e-10) return k;
  return rho.dims[0] + 1;
}

EntropicCheck entropic_check(const DensityMatrix& rho, int alpha) {
  require(alpha >= 1, Err::BadInput, "entropic_check: alpha must be a positive integer");
  require(rho.dims.factors() == 2, Err::DimMismatch, "entropic_check: bipartite state expected");
  EntropicCheck out;
  out.lhs = linalg::matrix_power(rho.mat, alpha).trace().real();
  const double pa = linalg::matrix_power(partial_trace(rho.mat, rho.dims, {0}), alpha).trace().real();
  const double pb = linalg::matrix_power(partial_trace(rho.mat, rho.dims, {1}), alpha).trace().real();
  out.rhs = std::min(pa, pb);
  // violated as soon as one subsystem fails Tr rho_r^alpha >= Tr rho^alpha
  out.violated = out.lhs > out.rhs + 1e-12;
  return out;
}

PptCheck ppt_check(const DensityMatrix& rho) {
  require(rho.dims.factors() == 2, Err::DimMismatch, "ppt_check: bipartite state expected");
  const ComplexMatrix gamma = partial_transpose(rho.mat, rho.dims, {1});
  PptCheck out;
  out.min_eig = linalg::min_eigenvalue(gamma);
  out.is_ppt = out.min_eig >= -1e-10;
  return out;
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  require(rho1.dim() == rho2.dim(), Err::DimMismatch, "fidelity: dimension mismatch");
  const ComplexMatrix root = linalg::psd_sqrt(rho1.mat);
  const auto spec = linalg::hermitian_eig(root * rho2.mat * root);
  double f = 0.0;
  for (double v : spec.values) f += std::sqrt(std::max(0.0, v));
  return f;
}

FidelityPair fidelity_bound_check(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  FidelityPair out;
  out.f = fidelity(rho1, rho2);
  const double p1 = states::purity(rho1);
  const double p2 = states::purity(rho2);
  out.bound_rhs = states::overlap(rho1, rho2) +
                  std::sqrt(std::max(0.0, 1.0 - p1)) * std::sqrt(std::max(0.0, 1.0 - p2));
  return out;
}

bool channel_monotonicity_check(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                const maps::LinearMapRep& phi) {
  require(phi.is_channel(), Err::NotAChannel, "channel_monotonicity_check: map is not a channel");
  require(rho1.dim() == phi.in_dim() && rho2.dim() == phi.in_dim(), Err::DimMismatch,
          "channel_monotonicity_check: dimension mismatch");
  const DimProfile out_dims{phi.out_dim()};
  const DensityMatrix out1{phi.apply(rho1.mat), out_dims};
  const DensityMatrix out2{phi.apply(rho2.mat), out_dims};
  return fidelity(rho1, rho2) <= fidelity(out1, out2) + 1e-9;
}

double robustness_pure(const PureState& psi) {
  require(psi.dims.factors() == 2, Err::BadPartition, "robustness_pure: bipartite pure state expected");
  const conc::SchmidtData data = conc::schmidt(psi);
  double s = 0.0;
  for (double c : data.coefficients) s += c;
  return s * s - 1.0;
}

bool rg_concurrence_bound(const PureState& psi) {
  require(psi.dims.factors() == 2 && psi.dims[0] == psi.dims[1], Err::BadPartition,
          "rg_concurrence_bound: square bipartite state expected");
  const int d = psi.dims[0];
  const double lhs = conc::concurrence_pure(psi);
  const double rhs = std::sqrt(2.0 / (d * (d - 1.0))) * robustness_pure(psi);
  return lhs >= rhs - 1e-10;
}

bool phi_bound_check(const PureState& rho, const PureState& sigma, const maps::LinearMapRep& phi) {
  require(phi.is_channel(), Err::NotAChannel, "phi_bound_check: map is not a channel");
  const DensityMatrix r = states::to_density(rho);
  const DensityMatrix s = states::to_density(sigma);
  const double lhs = conc::phi_concurrence_pure(rho, phi) * conc::phi_concurrence_pure(sigma, phi);
  const ComplexMatrix pr = phi.apply(r.mat);
  const ComplexMatrix ps = phi.apply(s.mat);
  const double rhs = 2.0 * (states::overlap(r, s) - trace_product(pr, ps).real());
  return lhs >= rhs - 1e-9;
}

}  // namespace entbound::bounds
