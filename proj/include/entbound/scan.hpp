#ifndef ENTBOUND_SCAN_HPP
#define ENTBOUND_SCAN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "entbound/linalg.hpp"

namespace entbound::scan {

/// One lattice point of the rotationally invariant simplex scan.
struct ScanRow {
  double p = 0.0, q = 0.0, r = 0.0;
  bool entropic2_violated = false;
  double tr_rho_rhoGamma = 0.0;  // with U the antisymmetric antidiagonal V
  double breuer_value = 0.0;     // raw Breuer-witness bound
  double mb_raw = 0.0;
  double transp_raw = 0.0;       // raw transposition bound at U = V
  double ppt_min_eig = 0.0;
};

struct ScanGrid {
  double step = 0.0;
  std::vector<ScanRow> rows;  // deterministic (p,q,r) lattice order
};

/// Full-simplex scan of the 4 (x) 4 rotationally invariant family with the
/// given lattice step (0 < step <= 0.1).
ScanGrid scan_rot4(double step, int threads = 0);

std::string scan_csv(const ScanGrid& grid);
/// Rows with p = 0 (resp. q = 0).
std::string scan_csv_slice_p0(const ScanGrid& grid);
std::string scan_csv_slice_q0(const ScanGrid& grid);
nlohmann::ordered_json scan_to_json(const ScanGrid& grid);

extern const char* kScanCsvHeader;

//=========================================================================
// Randomized audit
//=========================================================================

struct AuditCheck {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::uint64_t> failing_seeds;  // first few, for reproduction
};

struct AuditReport {
  std::uint64_t seed = 0;
  int n = 0;
  std::vector<int> dims;
  bool ok = false;
  std::vector<AuditCheck> checks;
};

/// Cross-module invariant suites on n seeded random states: the two-qubit
/// sandwich, the two-copy measurability identities and the fidelity bound.
AuditReport run_audit(std::uint64_t seed, int n, const linalg::DimProfile& dims, int threads = 0);

nlohmann::ordered_json audit_to_json(const AuditReport& report);

}  // namespace entbound::scan

#endif
