#include "entbound/conjugate.hpp"

#include <cmath>
#include <functional>

#include "entbound/concurrence.hpp"
#include "entbound/maps.hpp"
#include "entbound/parallel.hpp"

namespace entbound::conjugate {

using linalg::ComplexMatrix;
using linalg::cx;

namespace {

using Vec = std::vector<cx>;

Vec matvec(const ComplexMatrix& m, const Vec& v) {
  Vec out(static_cast<size_t>(m.rows()), cx(0.0));
  for (int i = 0; i < m.rows(); ++i) {
    cx s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = s;
  }
  return out;
}

cx inner(const Vec& a, const Vec& b) {
  cx s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(inner(a, a).real()); }

void axpy(Vec& y, cx alpha, const Vec& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

void normalize(Vec& v) {
  const double inv = 1.0 / norm(v);
  for (auto& x : v) x *= inv;
}

// Concurrence functional together with its phi*-gradient.
struct ConcurrenceFunctional {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&, double c_value)> gradient;  // unset contribution when C ~ 0
};

// rho_A of a bipartite vector, plus (rho_A (x) 1) phi.
void bipartite_reduction_action(const Vec& phi, int da, int db, double* purity_out, Vec* action_out) {
  ComplexMatrix m(da, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) m(i, j) = phi[static_cast<size_t>(i) * db + j];
  const ComplexMatrix rho_a = m * m.adjoint();
  if (purity_out) *purity_out = linalg::trace_product(rho_a, rho_a).real();
  if (action_out) {
    const ComplexMatrix proj = rho_a * m;  // (rho_A (x) 1) phi in matrix form
    action_out->assign(phi.size(), cx(0.0));
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) (*action_out)[static_cast<size_t>(i) * db + j] = proj(i, j);
  }
}

ConcurrenceFunctional bipartite_concurrence(const DimProfile& dims) {
  const int da = dims[0];
  const int db = dims[1];
  ConcurrenceFunctional f;
  f.value = [da, db](const Vec& phi) {
    double purity = 0.0;
    bipartite_reduction_action(phi, da, db, &purity, nullptr);
    return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
  };
  f.gradient = [da, db](const Vec& phi, double c_value) {
    Vec action;
    bipartite_reduction_action(phi, da, db, nullptr, &action);
    for (auto& x : action) x *= -2.0 / c_value;
    return action;
  };
  return f;
}

ConcurrenceFunctional multipartite_concurrence(const DimProfile& dims) {
  const int n = dims.factors();
  const double scale = std::pow(2.0, 1.0 - n / 2.0);
  const double subsets = std::pow(2.0, n) - 2.0;

  auto subset_data = [dims, n](const Vec& phi, bool want_action, double* g_out, Vec* action_out) {
    const states::PureState psi{phi, dims};
    const states::DensityMatrix rho = states::to_density(psi);
    double g = 0.0;
    if (want_action) action_out->assign(phi.size(), cx(0.0));
    for (int mask = 1; mask + 1 < (1 << n); ++mask) {
      std::vector<int> keep;
      for (int k = 0; k < n; ++k)
        if (mask & (1 << k)) keep.push_back(k);
      const ComplexMatrix red = linalg::partial_trace(rho.mat, rho.dims, keep);
      g += linalg::trace_product(red, red).real();
      if (want_action) {
        const ComplexMatrix padded = linalg::embed_with_identity(red, dims, keep);
        const Vec av = matvec(padded, phi);
        for (size_t i = 0; i < action_out->size(); ++i) (*action_out)[i] += av[i];
      }
    }
    *g_out = g;
  };

  ConcurrenceFunctional f;
  f.value = [subset_data, scale, subsets](const Vec& phi) {
    double g = 0.0;
    subset_data(phi, false, &g, nullptr);
    return scale * std::sqrt(std::max(0.0, subsets - g));
  };
  f.gradient = [subset_data, scale, subsets](const Vec& phi, double c_value) {
    double g = 0.0;
    Vec action;
    subset_data(phi, true, &g, &action);
    // d/dphi* [scale sqrt(subsets - g)] = -scale (sum_S pad(rho_S) phi) / sqrt(subsets - g)
    const double root = std::max(1e-300, c_value / scale);
    for (auto& x : action) x *= -scale / root;
    return action;
  };
  return f;
}

ConjugateResult ascend(const Observable& w, const DimProfile& dims, const ConcurrenceFunctional& conc_fn,
                       int restarts, std::uint64_t seed, int threads) {
  require(w.mat.is_square() && w.mat.rows() == dims.total(), Err::DimMismatch,
          "conjugate: observable does not match the state space");
  linalg::require_hermitian(w.mat, 1e-10 * std::max(1.0, w.mat.max_abs()), "conjugate");
  require(restarts >= 1, Err::BadInput, "conjugate: need at least one restart");

  struct RunResult {
    double value = -1e300;
    Vec phi;
    double grad_norm = 0.0;
    bool converged = false;
  };

  auto objective = [&](const Vec& phi, double* c_out) {
    const double c = conc_fn.value(phi);
    if (c_out) *c_out = c;
    return inner(phi, matvec(w.mat, phi)).real() - c;
  };

  auto riemannian_grad = [&](const Vec& phi, double c_value) {
    Vec g = matvec(w.mat, phi);
    if (c_value > 1e-12) {
      const Vec cg = conc_fn.gradient(phi, c_value);
      for (size_t i = 0; i < g.size(); ++i) g[i] -= cg[i];
    }
    const cx radial = inner(phi, g);
    axpy(g, -cx(radial.real()), phi);
    return g;
  };

  std::vector<RunResult> runs(static_cast<size_t>(restarts));
  parallel_for(
      restarts,
      [&](int r) {
        Rng rng = Rng::for_worker(seed, static_cast<std::uint64_t>(r));
        Vec phi = states::haar_pure(dims, rng).vec;
        double c = 0.0;
        double f = objective(phi, &c);
        double step = 1.0;
        bool converged = false;
        double gnorm = 0.0;
        for (int iter = 0; iter < 500; ++iter) {
          const Vec grad = riemannian_grad(phi, c);
          gnorm = norm(grad);
          if (gnorm <= 1e-9) {
            converged = true;
            break;
          }
          // backtracking ascent with projection retraction
          step = std::min(step * 2.0, 1.0);
          bool accepted = false;
          while (step >= 1e-8) {
            Vec cand = phi;
            axpy(cand, cx(step), grad);
            normalize(cand);
            double c_cand = 0.0;
            const double f_cand = objective(cand, &c_cand);
            if (f_cand >= f + 1e-4 * step * gnorm * gnorm) {
              phi = std::move(cand);
              f = f_cand;
              c = c_cand;
              accepted = true;
              break;
            }
            step *= 0.5;
          }
          if (!accepted) {
            converged = true;  // step tolerance reached
            break;
          }
        }
        RunResult res;
        res.value = f;
        res.phi = std::move(phi);
        res.grad_norm = gnorm;
        res.converged = converged || gnorm <= 1e-5;
        runs[static_cast<size_t>(r)] = std::move(res);
      },
      threads);

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (runs[static_cast<size_t>(r)].value > runs[static_cast<size_t>(best)].value) best = r;

  ConjugateResult out;
  out.value = runs[static_cast<size_t>(best)].value;
  out.maximizer = PureState{std::move(runs[static_cast<size_t>(best)].phi), dims};
  out.restarts_used = restarts;
  out.grad_norm = runs[static_cast<size_t>(best)].grad_norm;
  out.converged = runs[static_cast<size_t>(best)].converged;
  return out;
}

}  // namespace

ConjugateResult conjugate_concurrence(const Observable& w, const DimProfile& dims, int restarts,
                                      std::uint64_t seed, int threads) {
  require(dims.factors() == 2, Err::DimMismatch, "conjugate_concurrence: bipartite space expected");
  return ascend(w, dims, bipartite_concurrence(dims), restarts, seed, threads);
}

ConjugateResult conjugate_multipartite(const Observable& w, const DimProfile& dims, int restarts,
                                       std::uint64_t seed, int threads) {
  require(dims.factors() >= 2, Err::DimMismatch, "conjugate_multipartite: need at least two parties");
  return ascend(w, dims, multipartite_concurrence(dims), restarts, seed, threads);
}

Observable reduction_witness(const DensityMatrix& sigma, double concurrence_sigma) {
  require(sigma.dims.factors() == 2 && sigma.dims[0] == sigma.dims[1], Err::DimMismatch,
          "reduction_witness: square bipartite state expected");
  require(concurrence_sigma > 1e-12, Err::ZeroConcurrence, "reduction_witness: C(sigma) must be positive");
  const maps::LinearMapRep red = maps::reduction_map(sigma.dims[1]);
  ComplexMatrix w = maps::apply_one_side(red, sigma, maps::Side::B);
  w *= cx(-2.0 / concurrence_sigma);
  return {std::move(w), sigma.dims, "A,B"};
}

Observable multipartite_reduction_witness(const DensityMatrix& sigma, double concurrence_sigma) {
  require(concurrence_sigma > 1e-12, Err::ZeroConcurrence,
          "multipartite_reduction_witness: C^(N)(sigma) must be positive");
  const int n = sigma.dims.factors();
  ComplexMatrix w = maps::multipartite_reduction_apply(sigma.mat, sigma.dims);
  w *= cx(-std::pow(2.0, 2.0 - n) / concurrence_sigma);
  return {std::move(w), sigma.dims, "parties"};
}

Observable multipartite_reduction_witness(const PureState& sigma) {
  return multipartite_reduction_witness(states::to_density(sigma),
                                        conc::concurrence_multipartite_pure(sigma));
}

double squared_overlap(const PureState& a, const PureState& b) {
  require(a.dim() == b.dim(), Err::DimMismatch, "squared_overlap: dimension mismatch");
  cx s = 0.0;
  for (size_t i = 0; i < a.vec.size(); ++i) s += std::conj(a.vec[i]) * b.vec[i];
  return std::norm(s);
}

}  // namespace entbound::conjugate
