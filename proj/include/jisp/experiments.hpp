// The stability experiment, the acceptance/self-test suites, and report
// emission.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "jisp/params.hpp"
#include "jisp/solvers.hpp"

namespace jisp {

/// Run configuration shared by the CLI and the experiment drivers.  Defaults
/// reproduce the reference stability experiment; tolerances may be overridden
/// by name.
struct RunConfig {
  JacobiParams jacobi{-0.5, -0.5};
  ProblemParams problem{1.0, 0.0, 0.0, 1.0};
  double x_max = 10.0;
  std::size_t n_x = 512;
  double lambda_max = 30.0;
  std::size_t n_lambda = 512;
  std::size_t n_t = 101;
  std::string output_dir = ".";
  std::map<std::string, double> tolerances;

  double tol(const std::string& name, double fallback) const;
};

struct StabilityRow {
  double epsilon;
  double norm_psi_diff_sq;   // ||psi - psi_eps||^2 in H
  double norm_u_diff_sq;     // ||u - u_eps||^2 in C([0,T], H)
  double norm_f_diff_sq;     // ||f - f_eps||^2 in L^2(mu)
  double norm_psi_appendix;  // published pipeline variant (leading factor 40)
  double norm_u_appendix;    // published pipeline variant (t -> T slice)
  double norm_f_appendix;    // published pipeline variant
};

/// The stability experiment: problem fixed to alpha = beta = -1/2,
/// gamma = 1, a = m = 0, T = 1, phi = 0, psi_eps = eps exp(-x^2), compared
/// against the unperturbed zero problem.  Grid sizes come from cfg.
std::vector<StabilityRow> run_stability_table(const std::vector<double>& epsilons,
                                              const RunConfig& cfg);

void write_stability_csv(const std::string& path, const std::vector<StabilityRow>& rows);

struct CriterionResult {
  std::string name;
  bool pass;
  double measured;
  double bound;
  double seconds;
  std::string detail;
};

struct SuiteReport {
  std::vector<CriterionResult> results;
  bool all_pass() const;
};

/// Names of the full acceptance suite, in execution order.
std::vector<std::string> acceptance_criteria();

/// Names of the solver self-consistency (round-trip) subset.
std::vector<std::string> roundtrip_criteria();

/// Runs the named criteria (empty list runs nothing and yields an empty
/// report).  Unknown names throw DomainError.
SuiteReport run_acceptance(const RunConfig& cfg, const std::vector<std::string>& names);

/// run_acceptance restricted by default to roundtrip_criteria().
SuiteReport run_roundtrip_suite(const RunConfig& cfg, const std::vector<std::string>& names);

/// JSON report: criterion verdicts, grid parameters, build metadata.
void write_report_json(const std::string& path, const RunConfig& cfg, const SuiteReport& report);

}  // namespace jisp
