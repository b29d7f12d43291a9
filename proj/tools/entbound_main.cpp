#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entbound/bounds.hpp"
#include "entbound/concurrence.hpp"
#include "entbound/json_io.hpp"
#include "entbound/maps.hpp"
#include "entbound/scan.hpp"
#include "entbound/states.hpp"

namespace {

using entbound::Err;
using entbound::Error;
using entbound::bounds::BoundReport;
using entbound::io::json;
using entbound::states::DensityMatrix;

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBadState = 3;

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  size_t pos = 0;
  while (pos < spec.size()) {
    size_t next = spec.find(',', pos);
    if (next == std::string::npos) next = spec.size();
    dims.push_back(std::stoi(spec.substr(pos, next - pos)));
    pos = next + 1;
  }
  return dims;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    entbound::io::write_text_file(out_path, content);
  }
}

std::string reports_csv(const std::vector<BoundReport>& reports) {
  std::string out = "name,raw,clipped,side,target\n";
  char buf[256];
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g,%s,%s\n", r.name.c_str(), r.raw, r.clipped,
                  r.side == entbound::bounds::BoundSide::Lower ? "lower" : "upper", r.target.c_str());
    out += buf;
  }
  return out;
}

int cmd_eval(const std::string& state_path, const std::string& out_path, const std::string& format) {
  DensityMatrix rho;
  try {
    const json parsed = json::parse(entbound::io::read_text_file(state_path));
    rho = entbound::io::density_from_json(parsed);
  } catch (const json::exception& e) {
    std::cerr << "error: malformed state file: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: malformed state file: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    entbound::states::validate_density(rho);
  } catch (const Error& e) {
    std::cerr << "error: state invariant violated: " << e.what() << "\n";
    return kExitBadState;
  }
  if (rho.dims.factors() < 2) {
    std::cerr << "error: eval needs a composite (multi-factor) state\n";
    return kExitUsage;
  }

  namespace eb = entbound::bounds;
  std::vector<BoundReport> reports;
  json checks = json::object();

  const bool bipartite = rho.dims.factors() == 2;
  const bool square = bipartite && rho.dims[0] == rho.dims[1];

  if (square) {
    const int d = rho.dims[0];
    reports.push_back(eb::mb_lower(rho));
    reports.push_back(eb::dual_upper(rho));
    {
      BoundReport r = eb::positive_map_bound(rho, entbound::maps::reduction_map(d),
                                             entbound::obs::AlphaStrategy::Canonical);
      r.name = "positive_map_reduction_canonical";
      reports.push_back(std::move(r));
    }
    if (d % 2 == 0 && d >= 4) reports.push_back(eb::breuer_bound(rho));
    try {
      reports.push_back(eb::transposition_bound(rho, entbound::linalg::ComplexMatrix::identity(d)));
    } catch (const Error& e) {
      if (e.code() != Err::NotMaxMixedMarginal) throw;
      checks["transposition_bound_skipped"] = "subsystem A is not maximally mixed";
    }
    const auto ck = eb::ck_upper(rho);
    checks["ck_upper"] = ck.values;
    checks["schmidt_number_detect"] = eb::schmidt_number_detect(rho);
  }
  if (bipartite) {
    const auto ppt = eb::ppt_check(rho);
    checks["ppt"] = {{"min_eig", ppt.min_eig}, {"is_ppt", ppt.is_ppt}};
    auto entropic = json::array();
    for (int alpha : {2, 3, 4}) {
      const auto e = eb::entropic_check(rho, alpha);
      entropic.push_back({{"alpha", alpha}, {"lhs", e.lhs}, {"rhs", e.rhs}, {"violated", e.violated}});
    }
    checks["entropic"] = std::move(entropic);
  }
  if (rho.dims.factors() >= 3) {
    reports.push_back(eb::multipartite_lower(rho, rho));
    reports.push_back(eb::multipartite_upper(rho));
  }
  if (bipartite && rho.dims[0] == 2 && rho.dims[1] == 2)
    checks["wootters"] = entbound::states::wootters_concurrence(rho);

  if (format == "csv") {
    emit(out_path, reports_csv(reports));
    return kExitOk;
  }
  json out;
  out["dims"] = rho.dims.dims;
  auto rj = json::array();
  for (const auto& r : reports) rj.push_back(entbound::io::bound_report_to_json(r));
  out["reports"] = std::move(rj);
  out["checks"] = std::move(checks);
  emit(out_path, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_scan(double step, const std::string& out_base, const std::string& format) {
  namespace es = entbound::scan;
  es::ScanGrid grid;
  try {
    grid = es::scan_rot4(step);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (format == "json") {
    emit(out_base.empty() ? "" : out_base + ".json", es::scan_to_json(grid).dump(2) + "\n");
  } else {
    const std::string base = out_base.empty() ? "rot4_scan" : out_base;
    entbound::io::write_text_file(base + ".csv", es::scan_csv(grid));
    entbound::io::write_text_file(base + "_p0.csv", es::scan_csv_slice_p0(grid));
    entbound::io::write_text_file(base + "_q0.csv", es::scan_csv_slice_q0(grid));
    std::cout << "wrote " << grid.rows.size() << " rows to " << base << ".csv (+ _p0, _q0 slices)\n";
  }
  return kExitOk;
}

int cmd_audit(std::uint64_t seed, int n, const std::string& dims_spec, const std::string& out_path) {
  namespace es = entbound::scan;
  es::AuditReport report;
  try {
    report = es::run_audit(seed, n, entbound::linalg::DimProfile(parse_dims(dims_spec)));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  emit(out_path, es::audit_to_json(report).dump(2) + "\n");
  return report.ok ? kExitOk : kExitAuditFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entbound: measurable lower/upper bounds on concurrence"};
  app.require_subcommand(1);

  std::string state_path, out_path, format = "json";
  auto* eval = app.add_subcommand("eval", "evaluate all applicable bounds on a state file");
  eval->add_option("state", state_path, "state JSON file ({dims, re, im})")->required();
  eval->add_option("--out", out_path, "output file (default stdout)");
  eval->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  double step = 0.02;
  std::string scan_out, scan_format = "csv";
  auto* scan = app.add_subcommand("scan-rot4", "scan the 4x4 rotationally invariant simplex");
  scan->add_option("--step", step, "lattice step, in (0, 0.1] (default 0.02)");
  scan->add_option("--out", scan_out, "output base path");
  scan->add_option("--format", scan_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  std::uint64_t seed = 1;
  int n = 1000;
  std::string dims_spec = "2,2", audit_out;
  auto* audit = app.add_subcommand("audit", "run the randomized invariant audit");
  audit->add_option("--seed", seed, "PRNG seed (default 1)");
  audit->add_option("--n", n, "number of random samples (default 1000)");
  audit->add_option("--dims", dims_spec, "local dimensions, e.g. 2,2");
  audit->add_option("--out", audit_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(state_path, out_path, format);
    if (scan->parsed()) return cmd_scan(step, scan_out, scan_format);
    if (audit->parsed()) return cmd_audit(seed, n, dims_spec, audit_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
