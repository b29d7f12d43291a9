#include "entbound/scan.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>

#include "entbound/bounds.hpp"
#include "entbound/observables.hpp"
#include "entbound/parallel.hpp"
#include "entbound/states.hpp"

namespace entbound::scan {

using linalg::ComplexMatrix;
using linalg::cx;
using linalg::DimProfile;
using states::DensityMatrix;

const char* kScanCsvHeader =
    "p,q,r,entropic2_violated,tr_rho_rhoGamma,breuer_value,mb_raw,transp_raw,ppt_min_eig";

ScanGrid scan_rot4(double step, int threads) {
  require(step > 0.0 && step <= 0.1, Err::BadInput, "scan_rot4: step must lie in (0, 0.1]");

  // integer lattice i + j + k <= n with p = i * step
  std::vector<std::array<int, 3>> lattice;
  const int n = static_cast<int>(std::floor(1.0 / step + 1e-9));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      for (int k = 0; i + j + k <= n; ++k) lattice.push_back({i, j, k});

  // shared read-only pieces
  const auto& projectors = states::rot4_projectors();
  (void)projectors;  // force construction before the worker pool starts
  const Observable breuer_w = maps::breuer_witness(4);
  const ComplexMatrix v_anti = maps::breuer_default_v(4);
  const double breuer_prefactor = std::sqrt(2.0 / (4.0 * 3.0));
  const double transp_prefactor = std::sqrt(2.0 * 4.0 / 3.0);
  const DimProfile dims{4, 4};
  const ComplexMatrix lift = linalg::kron(ComplexMatrix::identity(4), v_anti);

  ScanGrid grid;
  grid.step = step;
  grid.rows.resize(lattice.size());

  parallel_for(
      static_cast<int>(lattice.size()),
      [&](int idx) {
        const auto [i, j, k] = lattice[static_cast<size_t>(idx)];
        ScanRow row;
        row.p = i * step;
        row.q = j * step;
        row.r = k * step;
        const DensityMatrix rho = states::rot4({row.p, row.q, row.r});

        const auto mb = bounds::mb_lower(rho);
        row.mb_raw = mb.raw;
        row.entropic2_violated = bounds::entropic_check(rho, 2).violated;

        const ComplexMatrix gamma = linalg::partial_transpose(rho.mat, dims, {1});
        row.ppt_min_eig = linalg::min_eigenvalue(gamma);

        const ComplexMatrix gamma_v = lift * gamma * lift.adjoint();
        row.tr_rho_rhoGamma = linalg::trace_product(rho.mat, gamma_v).real();
        row.transp_raw = -transp_prefactor * row.tr_rho_rhoGamma;

        row.breuer_value = -breuer_prefactor * linalg::trace_product(breuer_w.mat, rho.mat).real();

        grid.rows[static_cast<size_t>(idx)] = row;
      },
      threads);
  return grid;
}

namespace {

void append_row(std::string& out, const ScanRow& row) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%d,%.12g,%.12g,%.12g,%.12g,%.12g\n", row.p, row.q, row.r,
                row.entropic2_violated ? 1 : 0, row.tr_rho_rhoGamma, row.breuer_value, row.mb_raw, row.transp_raw,
                row.ppt_min_eig);
  out += buf;
}

std::string csv_filtered(const ScanGrid& grid, const std::function<bool(const ScanRow&)>& keep) {
  std::string out = kScanCsvHeader;
  out += '\n';
  for (const auto& row : grid.rows)
    if (keep(row)) append_row(out, row);
  return out;
}

}  // namespace

std::string scan_csv(const ScanGrid& grid) {
  return csv_filtered(grid, [](const ScanRow&) { return true; });
}

std::string scan_csv_slice_p0(const ScanGrid& grid) {
  return csv_filtered(grid, [](const ScanRow& row) { return row.p == 0.0; });
}

std::string scan_csv_slice_q0(const ScanGrid& grid) {
  return csv_filtered(grid, [](const ScanRow& row) { return row.q == 0.0; });
}

nlohmann::ordered_json scan_to_json(const ScanGrid& grid) {
  nlohmann::ordered_json j;
  j["step"] = grid.step;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : grid.rows) {
    nlohmann::ordered_json r;
    r["p"] = row.p;
    r["q"] = row.q;
    r["r"] = row.r;
    r["entropic2_violated"] = row.entropic2_violated;
    r["tr_rho_rhoGamma"] = row.tr_rho_rhoGamma;
    r["breuer_value"] = row.breuer_value;
    r["mb_raw"] = row.mb_raw;
    r["transp_raw"] = row.transp_raw;
    r["ppt_min_eig"] = row.ppt_min_eig;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

//=========================================================================
// Randomized audit
//=========================================================================

AuditReport run_audit(std::uint64_t seed, int n, const linalg::DimProfile& dims, int threads) {
  require(n >= 1, Err::BadInput, "run_audit: n must be at least 1");
  require(dims.factors() == 2 && dims[0] == dims[1], Err::DimMismatch,
          "run_audit: square bipartite dimension profile expected");
  const int d = dims[0];
  const bool two_qubit = d == 2;

  const auto [w1, w2] = obs::mb_witnesses(d);
  const Observable o_red = obs::o_lambda(maps::reduction_map(d), dims);

  struct Sample {
    bool sandwich_ok = true;
    bool identity_ok = true;
    bool fidelity_ok = true;
  };
  std::vector<Sample> samples(static_cast<size_t>(n));

  parallel_for(
      n,
      [&](int i) {
        Rng rng = Rng::for_worker(seed, static_cast<std::uint64_t>(i));
        Sample s;
        const int rank = 1 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(d * d));
        const DensityMatrix rho = states::ginibre_mixed(dims, rank, rng);
        const DensityMatrix sigma = states::ginibre_mixed(dims, d * d, rng);

        // sandwich: sqrt(mb clipped) <= exact concurrence <= sqrt(dual); the
        // exact middle term only exists for two qubits
        const auto mb = bounds::mb_lower(rho);
        const auto dual = bounds::dual_upper(rho);
        if (two_qubit) {
          const double exact = states::wootters_concurrence(rho);
          s.sandwich_ok = bounds::c_scale(mb) <= exact + 1e-9 && exact <= bounds::c_scale(dual) + 1e-9;
        } else {
          s.sandwich_ok = mb.raw <= dual.raw + 1e-9;
        }

        // measurability identities
        const double lhs1 = obs::two_copy_expectation(w1, rho, sigma);
        const double rhs1 = 2.0 * (states::overlap(rho, sigma) -
                                   linalg::trace_product(linalg::partial_trace(rho.mat, dims, {0}),
                                                         linalg::partial_trace(sigma.mat, dims, {0}))
                                       .real());
        const double lhs2 = obs::two_copy_expectation(o_red, rho, rho);
        const double rhs2 =
            linalg::trace_product(maps::apply_one_side(maps::reduction_map(d), rho, maps::Side::B), rho.mat).real();
        s.identity_ok = std::abs(lhs1 - rhs1) <= 1e-9 && std::abs(lhs2 - rhs2) <= 1e-9;

        // fidelity bound
        const auto pair = bounds::fidelity_bound_check(rho, sigma);
        s.fidelity_ok = pair.f * pair.f <= pair.bound_rhs + 1e-9;

        samples[static_cast<size_t>(i)] = s;
      },
      threads);

  AuditReport report;
  report.seed = seed;
  report.n = n;
  report.dims = dims.dims;
  AuditCheck sandwich{two_qubit ? "two_qubit_sandwich" : "mb_le_dual", 0, 0, {}};
  AuditCheck identity{"measurability_identity", 0, 0, {}};
  AuditCheck fid{"fidelity_bound", 0, 0, {}};
  for (int i = 0; i < n; ++i) {
    const Sample& s = samples[static_cast<size_t>(i)];
    auto tally = [&](AuditCheck& check, bool ok) {
      if (ok) {
        ++check.passed;
      } else {
        ++check.failed;
        if (check.failing_seeds.size() < 5) check.failing_seeds.push_back(static_cast<std::uint64_t>(i));
      }
    };
    tally(sandwich, s.sandwich_ok);
    tally(identity, s.identity_ok);
    tally(fid, s.fidelity_ok);
  }
  report.checks = {sandwich, identity, fid};
  report.ok = true;
  for (const auto& c : report.checks)
    if (c.failed > 0) report.ok = false;
  return report;
}

nlohmann::ordered_json audit_to_json(const AuditReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  j["n"] = report.n;
  j["dims"] = report.dims;
  j["ok"] = report.ok;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["failed"] = c.failed;
    cj["failing_seeds"] = c.failing_seeds;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace entbound::scan
